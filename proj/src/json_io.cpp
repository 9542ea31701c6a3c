#include "morita/json_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <regex>

#include "morita/constructions.hpp"
#include "morita/error.hpp"

namespace morita::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::parse, msg); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::vector<std::string> strings(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) fail(std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::array<std::string, 3> triple(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) fail(std::string(what) + " entries must be triples");
  return {j[0].get<std::string>(), j[1].get<std::string>(), j[2].get<std::string>()};
}

int index_in(const std::vector<std::string>& ids, const std::string& id, const char* what) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return static_cast<int>(i);
  fail(std::string("unknown ") + what + " \"" + id + "\"");
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(e.what());
  }
}

FiniteGroup named_group(const std::string& name) {
  std::smatch m;
  static const std::regex pattern("([ZDS])([0-9]+)");
  if (name == "Q8") return groups::quaternion();
  if (name == "V4") return groups::klein_four();
  if (std::regex_match(name, m, pattern)) {
    const int n = std::stoi(m[2]);
    if (m[1] == "Z" && n >= 1) return groups::cyclic(n);
    if (m[1] == "D" && n >= 1) return groups::dihedral(n);
    if (m[1] == "S" && n >= 1 && n <= 6) return groups::symmetric(n);
  }
  fail("unknown group name \"" + name + "\"");
}

FiniteGroupoid full_groupoid(const json& j) {
  GroupoidTables t;
  t.objects = strings(member(j, "objects"), "objects");
  for (const auto& a : member(j, "arrows"))
    t.arrows.push_back({member(a, "id").get<std::string>(), member(a, "src").get<std::string>(),
                        member(a, "tgt").get<std::string>()});
  for (const auto& c : member(j, "comp")) t.comp.push_back(triple(c, "comp"));
  t.units = member(j, "units").get<std::map<std::string, std::string>>();
  t.inv = member(j, "inv").get<std::map<std::string, std::string>>();
  return FiniteGroupoid::from_tables(t);
}

FiniteGroupoid action_shorthand(const json& j) {
  const FiniteGroup g = group_from_json(member(j, "group"));
  const auto points = strings(member(j, "points"), "points");
  std::vector<std::vector<int>> act(static_cast<std::size_t>(g.order()),
                                    std::vector<int>(points.size(), -1));
  for (const auto& row : member(j, "act")) {
    const auto [ge, x, y] = triple(row, "act");
    const auto gi = g.find(ge);
    if (!gi) fail("unknown group element \"" + ge + "\"");
    act[static_cast<std::size_t>(*gi)][static_cast<std::size_t>(index_in(points, x, "point"))] =
        index_in(points, y, "point");
  }
  for (const auto& row : act)
    for (int v : row)
      if (v < 0) fail("action table is incomplete");
  return action_groupoid(g, points, act);
}

FiniteGroupoid gauge_shorthand(const json& j) {
  PrincipalBundleData data;
  data.group = group_from_json(member(j, "group"));
  data.total = strings(member(j, "total"), "total");
  data.base = strings(member(j, "base"), "base");
  const auto proj = member(j, "projection").get<std::map<std::string, std::string>>();
  for (const auto& e : data.total) {
    auto it = proj.find(e);
    if (it == proj.end()) fail("projection misses \"" + e + "\"");
    data.projection.push_back(index_in(data.base, it->second, "base point"));
  }
  data.act.assign(data.total.size(), std::vector<int>(static_cast<std::size_t>(data.group.order()), -1));
  for (const auto& row : member(j, "act")) {
    const auto [e, ge, f] = triple(row, "act");
    const auto gi = data.group.find(ge);
    if (!gi) fail("unknown group element \"" + ge + "\"");
    data.act[static_cast<std::size_t>(index_in(data.total, e, "total-space point"))][static_cast<std::size_t>(*gi)] =
        index_in(data.total, f, "total-space point");
  }
  for (const auto& row : data.act)
    for (int v : row)
      if (v < 0) fail("action table is incomplete");
  return gauge_groupoid(data);
}

template <class Field>
Field field_from(const FieldFile& f) {
  Field out(f.grid);
  const int d = f.grid.dimension;
  const std::size_t per_point = static_cast<std::size_t>(d * (d - 1) / 2);
  for (std::size_t p = 0; p < out.point_count(); ++p) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    std::size_t c = p * per_point;
    for (int i = 0; i < d; ++i)
      for (int k = i + 1; k < d; ++k) {
        m(i, k) = f.upper[c];
        m(k, i) = -f.upper[c];
        ++c;
      }
    out.set(p, m);
  }
  return out;
}

double from_little_endian(const unsigned char* bytes) {
  unsigned char buf[8];
  std::memcpy(buf, bytes, 8);
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + 8);
  double v;
  std::memcpy(&v, buf, 8);
  return v;
}

void to_little_endian(double v, unsigned char* bytes) {
  std::memcpy(bytes, &v, 8);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + 8);
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

FileKind detect_kind(const json& j) {
  if (j.is_object() && j.contains("carrier")) return FileKind::bibundle;
  if (j.is_object() && j.contains("vertices")) return FileKind::tss;
  if (j.is_object() && j.contains("grid")) return FileKind::field;
  return FileKind::groupoid;
}

std::string to_string(FileKind kind) {
  switch (kind) {
    case FileKind::groupoid: return "groupoid";
    case FileKind::bibundle: return "bibundle";
    case FileKind::tss: return "tss";
    case FileKind::field: return "field";
  }
  return "unknown";
}

FiniteGroup group_from_json(const json& j) {
  return guarded([&] {
    if (j.is_string()) return named_group(j.get<std::string>());
    auto labels = strings(member(j, "elements"), "elements");
    std::vector<std::vector<int>> table;
    for (const auto& row : member(j, "table")) {
      std::vector<int> r;
      for (const auto& e : row) r.push_back(e.is_string() ? index_in(labels, e.get<std::string>(), "element") : e.get<int>());
      table.push_back(std::move(r));
    }
    return FiniteGroup(std::move(labels), std::move(table));
  });
}

json group_to_json(const FiniteGroup& g) {
  json table = json::array();
  for (int a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.label(g.multiply(a, b)));
    table.push_back(std::move(row));
  }
  return {{"elements", g.labels()}, {"table", std::move(table)}};
}

FiniteGroupoid groupoid_from_json(const json& j, const std::filesystem::path& base) {
  return guarded([&] {
    if (j.is_string()) {
      const auto path = base / j.get<std::string>();
      return groupoid_from_json(read_json(path), path.parent_path());
    }
    if (!j.is_object()) fail("a groupoid must be an object or a path");
    if (j.contains("pair")) return pair_groupoid(j.at("pair").get<int>());
    if (j.contains("group")) return group_groupoid(group_from_json(j.at("group")));
    if (j.contains("action")) return action_shorthand(j.at("action"));
    if (j.contains("gauge")) return gauge_shorthand(j.at("gauge"));
    if (j.contains("transitive"))
      return transitive_groupoid(group_from_json(member(j.at("transitive"), "group")),
                                 member(j.at("transitive"), "objects").get<int>());
    if (j.contains("bundle")) {
      std::vector<FiniteGroup> fibres;
      for (const auto& g : j.at("bundle")) fibres.push_back(group_from_json(g));
      return bundle_of_groups(fibres);
    }
    if (j.contains("union")) {
      std::vector<FiniteGroupoid> parts;
      for (const auto& p : j.at("union")) parts.push_back(groupoid_from_json(p, base));
      return disjoint_union(parts);
    }
    return full_groupoid(j);
  });
}

json groupoid_to_json(const FiniteGroupoid& g) {
  const GroupoidTables t = g.to_tables();
  json arrows = json::array();
  for (const auto& a : t.arrows) arrows.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  return {{"objects", t.objects}, {"arrows", std::move(arrows)}, {"comp", t.comp}, {"units", t.units}, {"inv", t.inv}};
}

Bibundle bibundle_from_json(const json& j, const std::filesystem::path& base) {
  return guarded([&] {
    BibundleTables t{groupoid_from_json(member(j, "left"), base), groupoid_from_json(member(j, "right"), base), {}, {}, {}, {}, {}};
    t.carrier = strings(member(j, "carrier"), "carrier");
    t.j1 = member(j, "J1").get<std::map<std::string, std::string>>();
    t.j2 = member(j, "J2").get<std::map<std::string, std::string>>();
    for (const auto& r : member(j, "leftAct")) t.left_act.push_back(triple(r, "leftAct"));
    for (const auto& r : member(j, "rightAct")) t.right_act.push_back(triple(r, "rightAct"));
    return Bibundle::from_tables(t);
  });
}

json bibundle_to_json(const Bibundle& s) {
  const BibundleTables t = s.to_tables();
  return {{"left", groupoid_to_json(t.left)}, {"right", groupoid_to_json(t.right)}, {"carrier", t.carrier},
          {"J1", t.j1}, {"J2", t.j2}, {"leftAct", t.left_act}, {"rightAct", t.right_act}};
}

LabeledSurfaceGraph tss_from_json(const json& j) {
  return guarded([&] {
    LabeledSurfaceGraph g;
    std::vector<std::string> ids;
    for (const auto& v : member(j, "vertices")) {
      const auto id = member(v, "id").get<std::string>();
      if (std::find(ids.begin(), ids.end(), id) != ids.end()) fail("duplicate vertex \"" + id + "\"");
      ids.push_back(id);
      g.vertices.push_back({id, member(v, "genus").get<int>()});
    }
    for (const auto& e : member(j, "edges"))
      g.edges.push_back({index_in(ids, member(e, "tail").get<std::string>(), "vertex"),
                         index_in(ids, member(e, "head").get<std::string>(), "vertex"),
                         member(e, "period").get<double>()});
    if (j.contains("volume") && !j.at("volume").is_null()) g.volume = j.at("volume").get<double>();
    return g;
  });
}

json tss_to_json(const LabeledSurfaceGraph& g) {
  json vertices = json::array(), edges = json::array();
  for (const auto& v : g.vertices) vertices.push_back({{"id", v.id}, {"genus", v.genus}});
  for (const auto& e : g.edges)
    edges.push_back({{"tail", g.vertices[static_cast<std::size_t>(e.tail)].id},
                     {"head", g.vertices[static_cast<std::size_t>(e.head)].id},
                     {"period", e.period}});
  json out{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
  if (g.volume) out["volume"] = *g.volume;
  return out;
}

FieldFile read_field(const json& sidecar, const std::filesystem::path& base) {
  return guarded([&] {
    FieldFile f;
    f.kind = member(sidecar, "kind").get<std::string>();
    if (f.kind != "bivector" && f.kind != "two-form") fail("field kind must be \"bivector\" or \"two-form\"");
    const json& g = member(sidecar, "grid");
    f.grid.dimension = member(g, "dimension").get<int>();
    f.grid.origin = member(g, "origin").get<std::vector<double>>();
    f.grid.spacing = member(g, "spacing").get<double>();
    f.grid.shape = member(g, "shape").get<std::vector<int>>();
    f.grid.check();
    const int d = f.grid.dimension;
    const std::size_t expected = f.grid.point_count() * static_cast<std::size_t>(d * (d - 1) / 2);

    if (sidecar.contains("analytic")) {
      PolynomialField poly{d, {}};
      for (const auto& e : member(sidecar.at("analytic"), "entries")) {
        PolynomialEntry entry;
        entry.i = member(e, "i").get<int>();
        entry.j = member(e, "j").get<int>();
        if (entry.i < 0 || entry.j < 0 || entry.i >= d || entry.j >= d || entry.i == entry.j)
          fail("analytic entry indices out of range");
        entry.constant = e.value("constant", 0.0);
        entry.linear = e.value("linear", std::vector<double>{});
        entry.quadratic = e.value("quadratic", std::vector<std::vector<double>>{});
        if (!entry.linear.empty() && entry.linear.size() != static_cast<std::size_t>(d))
          fail("linear coefficients need " + std::to_string(d) + " entries");
        if (!entry.quadratic.empty()) {
          if (entry.quadratic.size() != static_cast<std::size_t>(d)) fail("quadratic coefficients must be d x d");
          for (const auto& row : entry.quadratic)
            if (row.size() != static_cast<std::size_t>(d)) fail("quadratic coefficients must be d x d");
        }
        poly.entries.push_back(std::move(entry));
      }
      f.upper.reserve(expected);
      for (std::size_t p = 0; p < f.grid.point_count(); ++p) {
        const Eigen::MatrixXd m = poly(f.grid.coordinates(p));
        for (int i = 0; i < d; ++i)
          for (int k = i + 1; k < d; ++k) f.upper.push_back(m(i, k));
      }
      return f;
    }

    const auto path = base / member(sidecar, "data").get<std::string>();
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() != expected * 8)
      fail(path.string() + " holds " + std::to_string(bytes.size()) + " bytes, expected " + std::to_string(expected * 8));
    f.upper.resize(expected);
    for (std::size_t i = 0; i < expected; ++i) f.upper[i] = from_little_endian(bytes.data() + 8 * i);
    return f;
  });
}

BivectorField bivector_from(const FieldFile& f) {
  if (f.kind != "bivector") fail("expected a bivector field, got " + f.kind);
  return field_from<BivectorField>(f);
}

TwoFormField two_form_from(const FieldFile& f) {
  if (f.kind != "two-form") fail("expected a two-form field, got " + f.kind);
  return field_from<TwoFormField>(f);
}

json grid_to_json(const GridSpec& g) {
  return {{"dimension", g.dimension}, {"origin", g.origin}, {"spacing", g.spacing}, {"shape", g.shape}};
}

void write_field(const std::filesystem::path& sidecar, const BivectorField& field) {
  auto bin = sidecar;
  bin.replace_extension(".bin");
  std::vector<unsigned char> bytes;
  const int d = field.dimension();
  for (std::size_t p = 0; p < field.point_count(); ++p) {
    const auto m = field.at(p);
    for (int i = 0; i < d; ++i)
      for (int k = i + 1; k < d; ++k) {
        unsigned char b[8];
        to_little_endian(m(i, k), b);
        bytes.insert(bytes.end(), b, b + 8);
      }
  }
  std::ofstream out(bin, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  std::ofstream meta(sidecar);
  meta << json{{"kind", "bivector"}, {"grid", grid_to_json(field.grid())}, {"data", bin.filename().string()}}.dump(2)
       << "\n";
  if (!out || !meta) throw std::runtime_error("cannot write " + sidecar.string());
}

json report_to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"kind", x.kind}, {"witness", x.witness}});
  return {{"ok", r.ok()}, {"violations", std::move(v)}};
}

json picard_to_json(const PicardGroup& pic) {
  json out = group_to_json(pic.group);
  out["order"] = pic.group.order();
  out["method"] = to_string(pic.source);
  if (pic.formula_agrees) out["formulaAgrees"] = *pic.formula_agrees;
  return out;
}

}  // namespace morita::io
