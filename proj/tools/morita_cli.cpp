// Command line front end. Every run prints one JSON report on stdout and a
// short summary on stderr.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "morita/bibundle.hpp"
#include "morita/constructions.hpp"
#include "morita/error.hpp"
#include "morita/gauge.hpp"
#include "morita/json_io.hpp"
#include "morita/picard.hpp"
#include "morita/tss.hpp"

namespace fs = std::filesystem;
using morita::io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { ok = 0, invalid = 1, precondition = 2, singular = 3, not_equivalent = 4 };

int exit_code(morita::ErrorCode code) {
  using morita::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_group:
    case ErrorCode::invalid_action:
    case ErrorCode::not_principal:
    case ErrorCode::inconsistent_topology:
      return invalid;
    case ErrorCode::singular_endomorphism:
      return singular;
    default:
      return precondition;
  }
}

std::string sha256_hex(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

struct Options {
  std::vector<std::string> paths;
  std::string method = "auto";
  std::string object;
  double tol = 0.0;
  double threshold = morita::default_singularity_threshold;
  bool volume = false;
  bool reverse_orientation = false;
  std::string emit_witness;
  std::string out;
  bool quiet = false;
  bool timing = false;
  unsigned seed = 0;
  std::string format = "json";
};

// Result of one subcommand: payload for the report, exit status and the
// line printed on stderr.
struct Outcome {
  json result = json::object();
  int exit = ok;
  std::string summary;
};

json object_ids(const morita::FiniteGroupoid& g, const std::vector<int>& objs) {
  json out = json::array();
  for (int x : objs) out.push_back(g.object_id(x));
  return out;
}

json morphism_json(const morita::FiniteGroupoid& from, const morita::FiniteGroupoid& to,
                   const morita::GroupoidMorphism& phi) {
  json objects = json::object(), arrows = json::object();
  for (int x = 0; x < from.object_count(); ++x)
    objects[from.object_id(x)] = to.object_id(phi.object_map[static_cast<std::size_t>(x)]);
  for (int a = 0; a < from.arrow_count(); ++a)
    arrows[from.arrow_id(a)] = to.arrow_id(phi.arrow_map[static_cast<std::size_t>(a)]);
  return {{"objects", std::move(objects)}, {"arrows", std::move(arrows)}};
}

json bisection_json(const morita::FiniteGroupoid& g, const morita::Bisection& n) {
  json out = json::object();
  for (int x = 0; x < g.object_count(); ++x) out[g.object_id(x)] = g.arrow_id(n.arrow_at_source[static_cast<std::size_t>(x)]);
  return out;
}

json tss_iso_json(const morita::LabeledSurfaceGraph& g1, const morita::LabeledSurfaceGraph& g2,
                  const morita::TssIsomorphism& iso) {
  json vertices = json::object(), edges = json::array();
  for (int v = 0; v < g1.vertex_count(); ++v)
    vertices[g1.vertices[static_cast<std::size_t>(v)].id] = g2.vertices[static_cast<std::size_t>(iso.vertex_map[static_cast<std::size_t>(v)])].id;
  for (int e : iso.edge_map) edges.push_back(e);
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

// Loads a groupoid and refuses to go on if it violates the axioms.
std::optional<morita::FiniteGroupoid> load_groupoid(const std::string& path, Outcome& o) {
  auto g = morita::io::groupoid_from_json(morita::io::read_json(path), fs::path(path).parent_path());
  const auto report = morita::validate(g);
  if (!report.ok()) {
    o.result["validation"] = morita::io::report_to_json(report);
    o.exit = invalid;
    o.summary = path + ": not a groupoid (" + report.violations.front().kind + ")";
    return std::nullopt;
  }
  return g;
}

std::optional<morita::Bibundle> load_bibundle(const std::string& path, Outcome& o) {
  auto s = morita::io::bibundle_from_json(morita::io::read_json(path), fs::path(path).parent_path());
  for (const auto* g : {&s.left(), &s.right()}) {
    const auto report = morita::validate(*g);
    if (!report.ok()) {
      o.result["validation"] = morita::io::report_to_json(report);
      o.exit = invalid;
      o.summary = path + ": a side is not a groupoid";
      return std::nullopt;
    }
  }
  const auto report = morita::validate_bibundle(s);
  if (!report.ok()) {
    o.result["validation"] = morita::io::report_to_json(report);
    o.exit = invalid;
    o.summary = path + ": not a bibundle (" + report.violations.front().kind + ")";
    return std::nullopt;
  }
  return s;
}

std::optional<morita::LabeledSurfaceGraph> load_tss(const std::string& path, Outcome& o) {
  auto g = morita::io::tss_from_json(morita::io::read_json(path));
  const auto report = morita::validate_tss(g);
  if (!report.ok()) {
    o.result["validation"] = morita::io::report_to_json(report);
    o.exit = invalid;
    o.summary = path + ": invalid surface graph (" + report.violations.front().kind + ")";
    return std::nullopt;
  }
  return g;
}

morita::io::FieldFile load_field(const std::string& path) {
  return morita::io::read_field(morita::io::read_json(path), fs::path(path).parent_path());
}

Outcome cmd_validate(const Options& opt) {
  Outcome o;
  const auto& path = opt.paths[0];
  const json j = morita::io::read_json(path);
  const auto kind = morita::io::detect_kind(j);
  o.result["kind"] = morita::io::to_string(kind);
  morita::ValidationReport report;
  switch (kind) {
    case morita::io::FileKind::groupoid: {
      const auto g = morita::io::groupoid_from_json(j, fs::path(path).parent_path());
      report = morita::validate(g);
      o.result["objects"] = g.object_count();
      o.result["arrows"] = g.arrow_count();
      break;
    }
    case morita::io::FileKind::bibundle: {
      const auto s = morita::io::bibundle_from_json(j, fs::path(path).parent_path());
      for (const auto* side : {&s.left(), &s.right()})
        for (auto& v : morita::validate(*side).violations) report.violations.push_back(std::move(v));
      if (report.ok()) {
        report = morita::validate_bibundle(s);
        if (report.ok()) {
          const auto p = morita::principality(s);
          o.result["leftPrincipal"] = p.left_principal;
          o.result["rightPrincipal"] = p.right_principal;
        }
      }
      o.result["carrier"] = s.size();
      break;
    }
    case morita::io::FileKind::tss: {
      const auto g = morita::io::tss_from_json(j);
      report = morita::validate_tss(g);
      o.result["eulerCharacteristic"] = morita::euler_characteristic(g);
      break;
    }
    case morita::io::FileKind::field: {
      const auto f = morita::io::read_field(j, fs::path(path).parent_path());
      o.result["fieldKind"] = f.kind;
      o.result["grid"] = morita::io::grid_to_json(f.grid);
      o.result["points"] = f.grid.point_count();
      break;
    }
  }
  o.result["validation"] = morita::io::report_to_json(report);
  o.exit = report.ok() ? ok : invalid;
  o.summary = path + ": " + morita::io::to_string(kind) +
              (report.ok() ? " is valid" : " has " + std::to_string(report.violations.size()) + " violation(s)");
  return o;
}

Outcome cmd_orbits(const Options& opt) {
  Outcome o;
  const auto g = load_groupoid(opt.paths[0], o);
  if (!g) return o;
  const auto orb = morita::orbits(*g);
  json blocks = json::array();
  for (const auto& b : orb.blocks) blocks.push_back(object_ids(*g, b));
  o.result = {{"count", orb.count()}, {"orbits", std::move(blocks)}, {"transitive", morita::is_transitive(*g)}};
  o.summary = std::to_string(orb.count()) + " orbit(s)";
  return o;
}

Outcome cmd_isotropy(const Options& opt) {
  Outcome o;
  const auto g = load_groupoid(opt.paths[0], o);
  if (!g) return o;
  json groups = json::object();
  for (int x = 0; x < g->object_count(); ++x) {
    if (!opt.object.empty() && g->object_id(x) != opt.object) continue;
    const auto h = morita::isotropy(*g, x);
    auto entry = morita::io::group_to_json(h);
    entry["order"] = h.order();
    entry["abelian"] = h.is_abelian();
    groups[g->object_id(x)] = std::move(entry);
  }
  if (groups.empty()) throw morita::Error(morita::ErrorCode::parse, "unknown object \"" + opt.object + "\"");
  o.result["isotropy"] = std::move(groups);
  o.summary = "isotropy groups at " + std::to_string(o.result["isotropy"].size()) + " object(s)";
  return o;
}

Outcome cmd_aut(const Options& opt) {
  Outcome o;
  const auto g = load_groupoid(opt.paths[0], o);
  if (!g) return o;
  const auto aut = morita::automorphisms(*g);
  json maps = json::array();
  for (const auto& phi : aut.maps) maps.push_back(morphism_json(*g, *g, phi));
  o.result = morita::io::group_to_json(aut.group);
  o.result["order"] = aut.group.order();
  o.result["maps"] = std::move(maps);
  o.summary = "|Aut| = " + std::to_string(aut.group.order());
  return o;
}

Outcome cmd_inaut(const Options& opt) {
  Outcome o;
  const auto g = load_groupoid(opt.paths[0], o);
  if (!g) return o;
  const auto in = morita::inaut(*g);
  json elements = json::array();
  for (int i : in.elements) elements.push_back(in.aut.group.label(i));
  o.result = {{"order", in.group.order()}, {"autOrder", in.aut.group.order()}, {"elements", std::move(elements)},
              {"group", morita::io::group_to_json(in.group)}};
  o.summary = "|Inaut| = " + std::to_string(in.group.order());
  return o;
}

Outcome cmd_out(const Options& opt) {
  Outcome o;
  const auto g = load_groupoid(opt.paths[0], o);
  if (!g) return o;
  const auto out = morita::outaut(*g);
  o.result = morita::io::group_to_json(out.quotient.group);
  o.result["order"] = out.quotient.group.order();
  o.result["autOrder"] = out.aut.group.order();
  o.result["inautOrder"] = out.inner.size();
  o.summary = "|Out| = " + std::to_string(out.quotient.group.order());
  return o;
}

Outcome cmd_bisections(const Options& opt) {
  Outcome o;
  const auto g = load_groupoid(opt.paths[0], o);
  if (!g) return o;
  const auto bis = morita::bisections(*g);
  json list = json::array();
  for (const auto& n : bis) list.push_back(bisection_json(*g, n));
  json ciso = json::array();
  for (const auto& n : morita::ciso_bisections(*g)) ciso.push_back(bisection_json(*g, n));
  o.result = {{"count", bis.size()}, {"bisections", std::move(list)}, {"cisoCount", ciso.size()}, {"ciso", std::move(ciso)}};
  o.summary = std::to_string(bis.size()) + " bisection(s)";
  return o;
}

Outcome cmd_picard(const Options& opt) {
  Outcome o;
  const auto g = load_groupoid(opt.paths[0], o);
  if (!g) return o;
  const auto method = opt.method == "enumerate" ? morita::PicardMethod::enumerate
                      : opt.method == "formula" ? morita::PicardMethod::formula
                                                : morita::PicardMethod::automatic;
  const auto pic = morita::picard_group(*g, method);
  o.result = morita::io::picard_to_json(pic);
  o.summary = "|Pic| = " + std::to_string(pic.group.order()) + " (" + morita::to_string(pic.source) + ")";
  if (pic.formula_agrees && !*pic.formula_agrees) {
    o.exit = invalid;
    o.summary += ", closed form disagrees";
  }
  return o;
}

Outcome cmd_verify_exact(const Options& opt) {
  Outcome o;
  const auto g = load_groupoid(opt.paths[0], o);
  if (!g) return o;
  const auto r = morita::verify_exact_sequences(*g);
  o.result = {{"ok", r.ok()},
              {"orders",
               {{"aut", r.aut_order}, {"inaut", r.inaut_order}, {"kerJ", r.ker_j_order}, {"bisections", r.bisection_count},
                {"ciso", r.ciso_count}, {"picard", r.picard_order}, {"staticPicard", r.static_picard_order}}},
              {"checks",
               {{"jIsHomomorphism", r.j_is_homomorphism}, {"kerJEqualsInaut", r.ker_j_equals_inaut},
                {"bisectionMapIsHomomorphism", r.bisection_map_is_homomorphism}, {"cisoIsKernel", r.ciso_is_kernel},
                {"bisectionsOntoInaut", r.bisections_onto_inaut}, {"centerMapIsHomomorphism", r.center_map_is_homomorphism},
                {"staticIsKernel", r.static_is_kernel}}},
              {"failures", r.failures}};
  o.exit = r.ok() ? ok : invalid;
  o.summary = r.ok() ? "all three sequences exact" : std::to_string(r.failures.size()) + " failure(s): " + r.failures.front();
  return o;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + path);
}

Outcome cmd_compose(const Options& opt) {
  Outcome o;
  const auto s = load_bibundle(opt.paths[0], o);
  if (!s) return o;
  const auto t = load_bibundle(opt.paths[1], o);
  if (!t) return o;
  const auto st = morita::tensor(*s, *t);
  const auto p = morita::principality(st);
  o.result = {{"carrier", st.size()}, {"leftPrincipal", p.left_principal}, {"rightPrincipal", p.right_principal}};
  if (!opt.out.empty()) {
    write_json_file(opt.out, morita::io::bibundle_to_json(st));
    o.result["written"] = opt.out;
  } else {
    o.result["bibundle"] = morita::io::bibundle_to_json(st);
  }
  o.summary = "tensor product with " + std::to_string(st.size()) + " point(s)";
  return o;
}

Outcome cmd_morita(const Options& opt) {
  Outcome o;
  const auto a = load_groupoid(opt.paths[0], o);
  if (!a) return o;
  const auto b = load_groupoid(opt.paths[1], o);
  if (!b) return o;
  const auto witness = morita::morita_equivalent(*a, *b);
  o.result["equivalent"] = witness.has_value();
  o.result["orbits"] = {morita::orbits(*a).count(), morita::orbits(*b).count()};
  if (!witness) {
    o.exit = not_equivalent;
    o.summary = "not Morita equivalent";
    return o;
  }
  const auto match = *morita::match_orbits(*a, *b);
  json pairs = json::array();
  const auto oa = morita::orbits(*a), ob = morita::orbits(*b);
  for (std::size_t o2 = 0; o2 < match.size(); ++o2)
    pairs.push_back({a->object_id(oa.blocks[static_cast<std::size_t>(match[o2])].front()), b->object_id(ob.blocks[o2].front())});
  o.result["orbitMatching"] = std::move(pairs);
  o.result["witnessCarrier"] = witness->size();
  if (!opt.emit_witness.empty()) {
    write_json_file(opt.emit_witness, morita::io::bibundle_to_json(*witness));
    o.result["witness"] = opt.emit_witness;
  }
  o.summary = "Morita equivalent";
  return o;
}

Outcome cmd_tss_iso(const Options& opt) {
  Outcome o;
  const auto a = load_tss(opt.paths[0], o);
  if (!a) return o;
  const auto b = load_tss(opt.paths[1], o);
  if (!b) return o;
  const auto orientation = opt.reverse_orientation ? morita::Orientation::reversing : morita::Orientation::preserving;
  o.result["orientation"] = opt.reverse_orientation ? "reversing" : "preserving";
  o.result["relation"] = opt.volume ? "poisson" : "morita";
  std::optional<morita::TssIsomorphism> iso;
  if (opt.volume) {
    iso = morita::poisson_isomorphic_tss(*a, *b, opt.tol, orientation);
  } else {
    iso = morita::morita_equivalent_tss(*a, *b, opt.tol, orientation);
  }
  o.result["equivalent"] = iso.has_value();
  if (iso) {
    o.result["isomorphism"] = tss_iso_json(*a, *b, *iso);
    o.summary = opt.volume ? "Poisson isomorphic" : "Morita (and gauge) equivalent";
    return o;
  }
  const auto target = opt.reverse_orientation ? b->reversed() : *b;
  std::string reason;
  if (auto diff = morita::first_invariant_difference(*a, target, opt.tol)) {
    reason = *diff;
  } else if (opt.volume && !(std::abs(*a->volume - *b->volume) <= opt.tol)) {
    reason = "volume";
  } else {
    reason = "graph-structure";
  }
  o.result["differingInvariant"] = reason;
  o.exit = not_equivalent;
  o.summary = "not equivalent: " + reason + " differs";
  return o;
}

Outcome cmd_tss_picard_ingredients(const Options& opt) {
  Outcome o;
  const auto g = load_tss(opt.paths[0], o);
  if (!g) return o;
  const auto ing = morita::picard_ingredients(*g);
  json descriptors = json::array();
  for (std::size_t v = 0; v < ing.leaf_descriptors.size(); ++v)
    descriptors.push_back({{"vertex", g->vertices[v].id}, {"genus", ing.leaf_descriptors[v].first},
                           {"boundary", ing.leaf_descriptors[v].second}});
  json graph_aut = morita::io::group_to_json(ing.graph_aut.group);
  graph_aut["order"] = ing.graph_aut.group.order();
  o.result = {{"graphAut", std::move(graph_aut)}, {"torusRank", ing.torus_rank}, {"leafDescriptors", std::move(descriptors)}};
  o.summary = "|graph Aut| = " + std::to_string(ing.graph_aut.group.order()) + ", torus rank " + std::to_string(ing.torus_rank);
  return o;
}

Outcome cmd_tss_genus(const Options& opt) {
  Outcome o;
  const auto g = load_tss(opt.paths[0], o);
  if (!g) return o;
  const int genus = morita::surface_genus(*g);
  o.result = {{"genus", genus}, {"eulerCharacteristic", morita::euler_characteristic(*g)}};
  o.summary = "surface genus " + std::to_string(genus);
  return o;
}

json point_json(const Eigen::VectorXd& x) {
  json out = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(x[i]);
  return out;
}

json invertibility_json(const morita::InvertibilityReport& r) {
  return {{"ok", r.ok}, {"minAbsDet", r.min_abs_det}, {"worstPoint", point_json(r.worst_coordinates)}};
}

json rank_histogram(const std::vector<int>& ranks) {
  std::map<int, std::size_t> counts;
  for (int r : ranks) ++counts[r];
  json out = json::object();
  for (const auto& [r, c] : counts) out[std::to_string(r)] = c;
  return out;
}

Outcome cmd_gauge_apply(const Options& opt) {
  Outcome o;
  const auto pi = morita::io::bivector_from(load_field(opt.paths[0]));
  const auto b = morita::io::two_form_from(load_field(opt.paths[1]));
  const auto inv = morita::invertibility_check(pi, b, opt.threshold);
  o.result["invertibility"] = invertibility_json(inv);
  if (!inv.ok) {
    o.exit = singular;
    o.summary = "I + B pi is singular at a grid point";
    return o;
  }
  const auto tau = morita::apply_gauge(pi, b, opt.threshold);
  o.result["asymmetry"] = tau.max_asymmetry;
  o.result["rankBefore"] = rank_histogram(morita::rank_map(pi));
  o.result["rankAfter"] = rank_histogram(morita::rank_map(tau.field));
  if (!opt.out.empty()) {
    morita::io::write_field(opt.out, tau.field);
    o.result["written"] = opt.out;
  }
  o.summary = "gauge transform computed on " + std::to_string(pi.point_count()) + " point(s)";
  return o;
}

bool differencable(const morita::GridSpec& g) {
  for (int s : g.shape)
    if (s < 3) return false;
  return true;
}

Outcome cmd_gauge_check(const Options& opt) {
  Outcome o;
  const auto pi = morita::io::bivector_from(load_field(opt.paths[0]));
  const auto b = morita::io::two_form_from(load_field(opt.paths[1]));
  const auto inv = morita::invertibility_check(pi, b, opt.threshold);
  o.result["invertibility"] = invertibility_json(inv);
  o.result["rank"] = rank_histogram(morita::rank_map(pi));
  if (pi.dimension() < 3 || differencable(pi.grid())) {
    o.result["jacobiResidual"] = morita::jacobi_residual(pi).value;
    o.result["closednessResidual"] = morita::closedness_residual(b).value;
    if (inv.ok) o.result["gaugedJacobiResidual"] = morita::jacobi_residual(morita::apply_gauge(pi, b, opt.threshold).field).value;
  }
  o.exit = inv.ok ? ok : singular;
  o.summary = inv.ok ? "gauge transformation defined everywhere" : "I + B pi is singular at a grid point";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoids, bibundles, Picard groups, surface graphs and gauge transformations"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--quiet", opt.quiet, "no summary on stderr");
  app.add_flag("--timing", opt.timing, "add wall-clock timing to the report");
  app.add_option("--seed", opt.seed, "seed for randomized search order (searches here are deterministic)");
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json"}));
  app.set_version_flag("--version", kVersion);

  using Handler = Outcome (*)(const Options&);
  struct Spec {
    const char* name;
    const char* help;
    int files;
    Handler run;
  };
  const std::vector<Spec> specs = {
      {"validate", "check a groupoid, bibundle, surface graph or field file", 1, cmd_validate},
      {"orbits", "orbits of a groupoid", 1, cmd_orbits},
      {"isotropy", "isotropy groups", 1, cmd_isotropy},
      {"aut", "automorphism group", 1, cmd_aut},
      {"inaut", "inner automorphisms", 1, cmd_inaut},
      {"out", "outer automorphism group", 1, cmd_out},
      {"bisections", "bisections and central bisections", 1, cmd_bisections},
      {"picard", "Picard group", 1, cmd_picard},
      {"verify-exact", "check the exact sequences around the Picard group", 1, cmd_verify_exact},
      {"compose", "tensor product of two bibundles", 2, cmd_compose},
      {"morita", "decide Morita equivalence of two groupoids", 2, cmd_morita},
      {"tss-iso", "decide equivalence of two surface graphs", 2, cmd_tss_iso},
      {"tss-picard-ingredients", "graph automorphisms, torus rank and leaf data", 1, cmd_tss_picard_ingredients},
      {"tss-genus", "genus of the underlying surface", 1, cmd_tss_genus},
      {"gauge-apply", "gauge transform a bivector field by a 2-form", 2, cmd_gauge_apply},
      {"gauge-check", "invertibility, rank and residuals", 2, cmd_gauge_check},
  };
  std::map<CLI::App*, const Spec*> by_app;
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("files", opt.paths, "input file(s)")->required()->expected(spec.files);
    const std::string name = spec.name;
    if (name == "picard")
      sub->add_option("--method", opt.method, "auto, enumerate or formula")->check(CLI::IsMember({"auto", "enumerate", "formula"}));
    if (name == "isotropy") sub->add_option("--object", opt.object, "only this object");
    if (name == "morita") sub->add_option("--emit-witness", opt.emit_witness, "write the witness bibundle here");
    if (name == "compose" || name == "gauge-apply") sub->add_option("--out", opt.out, "write the result here");
    if (name == "tss-iso") {
      sub->add_option("--tol", opt.tol, "absolute tolerance for periods and volume");
      sub->add_flag("--volume", opt.volume, "also compare regularized volumes (Poisson isomorphism)");
      sub->add_flag("--reverse-orientation", opt.reverse_orientation, "compare against the second graph with edges reversed");
    }
    if (name == "gauge-apply" || name == "gauge-check")
      sub->add_option("--threshold", opt.threshold, "singularity threshold on |det(I + B pi)|");
    by_app[sub] = &spec;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    json report{{"tool", "morita"},
                {"version", kVersion},
                {"status", "error"},
                {"error", {{"code", "Usage"}, {"message", e.what()}}},
                {"exitCode", static_cast<int>(precondition)}};
    std::cout << report.dump(2) << "\n";
    std::cerr << e.what() << "\n";
    return precondition;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Spec& spec = *by_app.at(sub);
  json report;
  report["tool"] = "morita";
  report["version"] = kVersion;
  json options = json::object();
  for (const CLI::Option* o : sub->get_options())
    if (o->count() > 0 && o->get_name() != "files") options[o->get_name()] = o->results().size() == 1 ? json(o->results()[0]) : json(o->results());
  if (app.count("--seed") > 0) options["--seed"] = opt.seed;
  report["command"] = {{"name", spec.name}, {"files", opt.paths}, {"options", std::move(options)}};
  json inputs = json::array();
  for (const auto& p : opt.paths) inputs.push_back({{"path", p}, {"sha256", sha256_hex(p)}});
  report["inputs"] = std::move(inputs);

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = spec.run(opt);
    report["status"] = outcome.exit == ok ? "ok" : "failed";
    report["result"] = outcome.result;
  } catch (const morita::Error& e) {
    outcome.exit = exit_code(e.code());
    outcome.summary = e.what();
    report["status"] = "error";
    report["error"] = {{"code", std::string(morita::to_string(e.code()))}, {"message", e.what()}};
  } catch (const std::exception& e) {
    outcome.exit = precondition;
    outcome.summary = e.what();
    report["status"] = "error";
    report["error"] = {{"code", "Internal"}, {"message", e.what()}};
  }
  report["exitCode"] = outcome.exit;
  if (opt.timing)
    report["timingSeconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::cout << report.dump(2) << "\n";
  if (!opt.quiet) std::cerr << spec.name << ": " << outcome.summary << "\n";
  return outcome.exit;
}
