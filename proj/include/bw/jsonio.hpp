#pragma once

// JSON and CSV serialization. Numbers are written with 17 significant digits in JSON
// and 12 in CSV, so identical inputs give byte-identical output.
//
// LaurentField:       {"log": d, "holomorphic": false, "coeffs": [[n, re, im], ...]}
// WeierstrassSurface: {"label": "...", "g": {"num": [[re, im], ...], "den": [...]},
//                      "omega": {"num": ..., "den": ...}, "ends": ["inf", [re, im], ...],
//                      "params": {"name": [re, im]}}
// Polynomial coefficients are in ascending degree; "den" defaults to [[1, 0]].
// A surface file may hold one surface, an array of them, or {"surfaces": [...]}; a
// surface may carry "key" and an "expected" row
// {"total_curvature_pi": -8, "flux": false, "m": [...], "r": [...], "admissible": true}.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bw/classifier.hpp"
#include "bw/distrib.hpp"
#include "bw/error.hpp"
#include "bw/laurent.hpp"
#include "bw/neck.hpp"
#include "bw/suites.hpp"
#include "bw/weierstrass.hpp"

namespace bw {

using json = nlohmann::ordered_json;

std::string fmt17(double x);
std::string fmt12(double x);
// Pretty printer using fmt17 for every floating value; ends with a newline.
std::string dump17(const json& j, int indent = 2);

// Process exit code for an error: 2 for io, 64 for usage/domain-type errors, 1 otherwise.
int exit_code(Errc c);

// A parsed document plus the source line of every value, keyed by JSON pointer.
struct JsonDocument {
    std::string path;
    json value;
    std::map<std::string, int> lines;
    // "path:line: " prefix for the value at pointer ptr (nearest parent when absent)
    std::string where(const std::string& ptr) const;
};

// Errc::io on a missing file or a syntax error ("path:line:col: ...").
JsonDocument read_json_file(const std::string& path);
JsonDocument parse_json_text(const std::string& text, const std::string& path = "<input>");

// Schema errors throw Errc::io with the line of the offending value.
LaurentField laurent_from_json(const JsonDocument& doc, const std::string& ptr = "");
WeierstrassSurface surface_from_json(const JsonDocument& doc, const std::string& ptr = "");
std::vector<CatalogueEntry> catalogue_from_json(const JsonDocument& doc);

json to_json(cplx z);
json to_json(const Vec3& v);
json to_json(const Vec3c& v);
json to_json(const LaurentField& u);
json to_json(const WeierstrassSurface& s);
json to_json(const EndReport& r);
json to_json(const AdmissibilityReport& r);
json to_json(const Figure1Table& t);
json to_json(const SuiteReport& r, bool per_sample = true);
json to_json(const NeckDecomposition& d);
json to_json(const ResidueLimit& r);

}  // namespace bw
