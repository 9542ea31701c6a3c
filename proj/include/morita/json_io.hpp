#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "morita/bibundle.hpp"
#include "morita/finite_group.hpp"
#include "morita/gauge.hpp"
#include "morita/groupoid.hpp"
#include "morita/picard.hpp"
#include "morita/tss.hpp"
#include "morita/validation.hpp"

namespace morita::io {

using nlohmann::json;

/// Parses a file as JSON. Throws Error(parse).
json read_json(const std::filesystem::path& path);

enum class FileKind { groupoid, bibundle, tss, field };

/// Bibundles have "carrier", surface graphs "vertices", fields "grid";
/// anything else is read as a groupoid.
FileKind detect_kind(const json& j);
std::string to_string(FileKind kind);

/// Either {"elements": [...], "table": [[...]]} with entries given as labels
/// or indices, or a name: "Z<n>", "D<n>", "S<n>", "Q8", "V4".
FiniteGroup group_from_json(const json& j);
json group_to_json(const FiniteGroup& g);

/// Full table form or one of the shorthands {"pair": n}, {"group": G},
/// {"action": {"group", "points", "act": [[g, x, g.x]...]}},
/// {"gauge": {"group", "total", "base", "projection": {e: b},
/// "act": [[e, g, e.g]...]}}, {"transitive": {"group", "objects": n}},
/// {"bundle": [G...]}, {"union": [groupoid...]}. A string is a path to a
/// groupoid file, relative to `base`.
FiniteGroupoid groupoid_from_json(const json& j, const std::filesystem::path& base = {});
json groupoid_to_json(const FiniteGroupoid& g);

/// "left" and "right" may be inline groupoids or paths relative to `base`.
Bibundle bibundle_from_json(const json& j, const std::filesystem::path& base = {});
json bibundle_to_json(const Bibundle& s);

LabeledSurfaceGraph tss_from_json(const json& j);
json tss_to_json(const LabeledSurfaceGraph& g);

/// Sidecar {"kind": "bivector" | "two-form", "grid": {"dimension", "origin",
/// "spacing", "shape"}} plus either "data": "<file>.bin" (little-endian f64,
/// entries i < j per point, points row-major with the last axis fastest) or
/// "analytic": {"entries": [{"i", "j", "constant", "linear", "quadratic"}]}.
struct FieldFile {
  std::string kind;
  GridSpec grid;
  /// Upper-triangular entries, point after point.
  std::vector<double> upper;
};

FieldFile read_field(const json& sidecar, const std::filesystem::path& base = {});
BivectorField bivector_from(const FieldFile& f);
TwoFormField two_form_from(const FieldFile& f);

/// Writes `<stem>.json` and `<stem>.bin` next to each other.
void write_field(const std::filesystem::path& sidecar, const BivectorField& field);
json grid_to_json(const GridSpec& g);

json report_to_json(const ValidationReport& r);
json picard_to_json(const PicardGroup& pic);

}  // namespace morita::io
