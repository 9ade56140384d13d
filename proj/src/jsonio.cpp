#include "bw/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bw {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::domain: return "domain";
        case Errc::precondition: return "precondition";
        case Errc::shape: return "shape";
        case Errc::io: return "io";
        case Errc::usage: return "usage";
        case Errc::degenerate: return "degenerate";
        case Errc::geometry: return "geometry";
        case Errc::solver: return "solver";
        case Errc::integrality: return "integrality";
        case Errc::invalid: return "invalid";
        case Errc::incomplete: return "incomplete";
        case Errc::scale: return "scale";
    }
    return "unknown";
}

int exit_code(Errc c) {
    switch (c) {
        case Errc::io: return 2;
        case Errc::usage:
        case Errc::domain:
        case Errc::precondition:
        case Errc::shape:
        case Errc::invalid: return 64;
        default: return 1;
    }
}

std::string fmt17(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

void put_string(std::ostringstream& os, const std::string& s) { os << json(s).dump(); }

// JSON has no literal for non-finite numbers: they are written as strings.
void emit(std::ostringstream& os, const json& j, int indent, int depth) {
    std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    std::string close(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad;
                put_string(os, it.key());
                os << ": ";
                emit(os, it.value(), indent, depth + 1);
            }
            os << '\n' << close << '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            bool flat = true;
            for (const auto& v : j) flat = flat && !v.is_structured();
            if (flat) {
                os << '[';
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    emit(os, j[i], indent, depth + 1);
                }
                os << ']';
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                emit(os, j[i], indent, depth + 1);
            }
            os << '\n' << close << ']';
            return;
        }
        case json::value_t::number_float: {
            double x = j.get<double>();
            if (std::isfinite(x))
                os << fmt17(x);
            else
                put_string(os, fmt17(x));
            return;
        }
        default:
            os << j.dump();
    }
}

std::string escape_token(const std::string& k) {
    std::string out;
    for (char c : k) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

// Line of every value start, keyed by JSON pointer. The text is already known to parse.
std::map<std::string, int> scan_lines(const std::string& t) {
    std::map<std::string, int> out;
    struct Frame {
        bool object;
        std::string base;
        int index;
        std::string key;
    };
    std::vector<Frame> stack;
    int line = 1;
    std::size_t i = 0;
    auto pointer = [&]() -> std::string {
        if (stack.empty()) return "";
        const Frame& f = stack.back();
        return f.base + "/" + (f.object ? escape_token(f.key) : std::to_string(f.index));
    };
    auto read_string = [&]() {
        std::string s;
        ++i;
        while (i < t.size() && t[i] != '"') {
            if (t[i] == '\\' && i + 1 < t.size()) {
                s += t[i + 1];
                i += 2;
                continue;
            }
            if (t[i] == '\n') ++line;
            s += t[i++];
        }
        ++i;
        return s;
    };
    bool expect_key = false;
    while (i < t.size()) {
        char c = t[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == ':') {
            ++i;
            continue;
        }
        if (c == ',') {
            if (!stack.empty()) {
                if (stack.back().object)
                    expect_key = true;
                else
                    ++stack.back().index;
            }
            ++i;
            continue;
        }
        if (c == '}' || c == ']') {
            stack.pop_back();
            expect_key = false;
            ++i;
            continue;
        }
        if (expect_key && c == '"') {
            stack.back().key = read_string();
            expect_key = false;
            continue;
        }
        std::string ptr = pointer();
        out.emplace(ptr, line);
        if (c == '{' || c == '[') {
            stack.push_back({c == '{', ptr, 0, ""});
            expect_key = c == '{';
            ++i;
            continue;
        }
        if (c == '"') {
            read_string();
            continue;
        }
        while (i < t.size() && std::string(",]}\n \t\r").find(t[i]) == std::string::npos) ++i;
    }
    return out;
}

[[noreturn]] void schema(const JsonDocument& doc, const std::string& ptr, const std::string& msg) {
    fail(Errc::io, doc.where(ptr) + (ptr.empty() ? "/" : ptr) + ": " + msg);
}

const json& at(const JsonDocument& doc, const std::string& ptr) {
    try {
        return doc.value.at(json::json_pointer(ptr));
    } catch (const std::exception&) {
        schema(doc, ptr, "missing value");
    }
}

double number(const JsonDocument& doc, const std::string& ptr) {
    const json& j = at(doc, ptr);
    if (!j.is_number()) schema(doc, ptr, "expected a number");
    return j.get<double>();
}

cplx complex_value(const JsonDocument& doc, const std::string& ptr) {
    const json& j = at(doc, ptr);
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) schema(doc, ptr, "expected a number or [re, im]");
    return {number(doc, ptr + "/0"), number(doc, ptr + "/1")};
}

Polynomial polynomial(const JsonDocument& doc, const std::string& ptr) {
    const json& j = at(doc, ptr);
    if (!j.is_array() || j.empty()) schema(doc, ptr, "expected a non-empty coefficient list");
    std::vector<cplx> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(complex_value(doc, ptr + "/" + std::to_string(i)));
    return Polynomial(c);
}

RationalMap rational(const JsonDocument& doc, const std::string& ptr) {
    const json& j = at(doc, ptr);
    if (!j.is_object()) schema(doc, ptr, "expected {\"num\": [...], \"den\": [...]}");
    Polynomial num = polynomial(doc, ptr + "/num");
    Polynomial den = j.contains("den") ? polynomial(doc, ptr + "/den") : Polynomial({1.0});
    if (den.is_zero()) schema(doc, ptr + "/den", "zero denominator");
    return RationalMap(num, den);
}

std::vector<int> int_list(const JsonDocument& doc, const std::string& ptr) {
    const json& j = at(doc, ptr);
    if (!j.is_array()) schema(doc, ptr, "expected a list of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) schema(doc, ptr + "/" + std::to_string(i), "expected an integer");
        out.push_back(j[i].get<int>());
    }
    return out;
}

json poly_json(const Polynomial& p) {
    json a = json::array();
    for (cplx c : p.c) a.push_back(to_json(c));
    return a;
}

}  // namespace

std::string dump17(const json& j, int indent) {
    std::ostringstream os;
    emit(os, j, indent, 0);
    os << '\n';
    return os.str();
}

std::string JsonDocument::where(const std::string& ptr) const {
    std::string p = ptr;
    while (true) {
        auto it = lines.find(p);
        if (it != lines.end()) return path + ":" + std::to_string(it->second) + ": ";
        if (p.empty()) return path + ": ";
        p = p.substr(0, p.rfind('/'));
    }
}

JsonDocument parse_json_text(const std::string& text, const std::string& path) {
    JsonDocument doc;
    doc.path = path;
    try {
        doc.value = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t pos = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        auto k = msg.find("syntax error");
        fail(Errc::io, path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                           (k == std::string::npos ? msg : msg.substr(k)));
    }
    doc.lines = scan_lines(text);
    return doc;
}

JsonDocument read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io, path + ": file not found or unreadable");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

LaurentField laurent_from_json(const JsonDocument& doc, const std::string& ptr) {
    const json& j = at(doc, ptr);
    if (!j.is_object()) schema(doc, ptr, "expected a Laurent field object");
    double d = j.contains("log") ? number(doc, ptr + "/log") : 0.0;
    bool holo = false;
    if (j.contains("holomorphic")) {
        if (!j["holomorphic"].is_boolean()) schema(doc, ptr + "/holomorphic", "expected true or false");
        holo = j["holomorphic"].get<bool>();
    }
    const json& cs = at(doc, ptr + "/coeffs");
    if (!cs.is_array()) schema(doc, ptr + "/coeffs", "expected [[n, re, im], ...]");
    std::map<int, cplx> a;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string p = ptr + "/coeffs/" + std::to_string(i);
        if (!cs[i].is_array() || cs[i].size() != 3 || !cs[i][0].is_number_integer())
            schema(doc, p, "expected [n, re, im] with integer n");
        int n = cs[i][0].get<int>();
        if (a.count(n)) schema(doc, p, "duplicate mode " + std::to_string(n));
        a[n] = {number(doc, p + "/1"), number(doc, p + "/2")};
    }
    if (holo && d != 0.0) schema(doc, ptr + "/log", "a holomorphic field has no log term");
    LaurentField u = holo ? LaurentField::holo(a) : LaurentField::harmonic(a, d);
    try {
        u.check_truncation();
    } catch (const Error& e) {
        schema(doc, ptr + "/coeffs", e.what());
    }
    return u;
}

WeierstrassSurface surface_from_json(const JsonDocument& doc, const std::string& ptr) {
    const json& j = at(doc, ptr);
    if (!j.is_object()) schema(doc, ptr, "expected a surface object");
    WeierstrassSurface s;
    s.g = rational(doc, ptr + "/g");
    s.omega = rational(doc, ptr + "/omega");
    if (s.omega.is_zero()) schema(doc, ptr + "/omega", "omega vanishes identically");
    if (j.contains("label")) {
        if (!j["label"].is_string()) schema(doc, ptr + "/label", "expected a string");
        s.label = j["label"].get<std::string>();
    }
    const json& ends = at(doc, ptr + "/ends");
    if (!ends.is_array() || ends.empty()) schema(doc, ptr + "/ends", "expected a non-empty list of ends");
    for (std::size_t i = 0; i < ends.size(); ++i) {
        std::string p = ptr + "/ends/" + std::to_string(i);
        if (ends[i].is_string()) {
            if (ends[i].get<std::string>() != "inf") schema(doc, p, "expected \"inf\" or [re, im]");
            s.ends.push_back(EndPoint::inf());
        } else {
            s.ends.push_back(EndPoint::at(complex_value(doc, p)));
        }
    }
    if (j.contains("params")) {
        if (!j["params"].is_object()) schema(doc, ptr + "/params", "expected an object");
        for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
            s.params[it.key()] = complex_value(doc, ptr + "/params/" + it.key());
    }
    return s;
}

std::vector<CatalogueEntry> catalogue_from_json(const JsonDocument& doc) {
    std::vector<std::string> ptrs;
    const json& v = doc.value;
    std::string base;
    if (v.is_object() && v.contains("surfaces")) base = "/surfaces";
    const json& list = base.empty() ? v : v["surfaces"];
    if (list.is_array()) {
        if (list.empty()) schema(doc, base, "no surfaces");
        for (std::size_t i = 0; i < list.size(); ++i) ptrs.push_back(base + "/" + std::to_string(i));
    } else {
        ptrs.push_back(base);
    }
    std::vector<CatalogueEntry> cat;
    for (const auto& p : ptrs) {
        CatalogueEntry e;
        e.surface = surface_from_json(doc, p);
        const json& j = at(doc, p);
        e.label = e.surface->label.empty() ? "surface-" + std::to_string(cat.size() + 1) : e.surface->label;
        e.key = j.contains("key") && j["key"].is_string() ? j["key"].get<std::string>() : e.label;
        e.source = doc.path;
        e.has_expected = j.contains("expected");
        if (e.has_expected) {
            std::string q = p + "/expected";
            e.expected.total_curvature_pi = static_cast<int>(number(doc, q + "/total_curvature_pi"));
            const json& f = at(doc, q + "/flux");
            if (!f.is_boolean()) schema(doc, q + "/flux", "expected true or false");
            e.expected.flux = f.get<bool>();
            e.expected.m = int_list(doc, q + "/m");
            e.expected.r = int_list(doc, q + "/r");
            const json& a = at(doc, q + "/admissible");
            if (!a.is_boolean()) schema(doc, q + "/admissible", "expected true or false");
            e.expected.admissible = a.get<bool>();
        }
        cat.push_back(std::move(e));
    }
    return cat;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }
json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }
json to_json(const Vec3c& v) { return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

json to_json(const LaurentField& u) {
    json j;
    j["log"] = u.log_coefficient;
    j["holomorphic"] = u.holomorphic;
    json cs = json::array();
    for (const auto& [n, c] : u.coeffs) cs.push_back(json::array({n, c.real(), c.imag()}));
    j["coeffs"] = cs;
    return j;
}

json to_json(const WeierstrassSurface& s) {
    json j;
    j["label"] = s.label;
    j["g"] = {{"num", poly_json(s.g.num)}, {"den", poly_json(s.g.den)}};
    j["omega"] = {{"num", poly_json(s.omega.num)}, {"den", poly_json(s.omega.den)}};
    json ends = json::array();
    for (const auto& e : s.ends) ends.push_back(e.infinity ? json("inf") : to_json(e.z));
    j["ends"] = ends;
    json params = json::object();
    for (const auto& [k, v] : s.params) params[k] = to_json(v);
    j["params"] = params;
    return j;
}

json to_json(const EndReport& r) {
    json j;
    j["end"] = r.end.str();
    j["m"] = r.m;
    j["k"] = r.k;
    j["A0"] = to_json(r.A0);
    j["A1"] = to_json(r.A1);
    j["residue"] = to_json(r.residue);
    j["flux"] = to_json(r.flux);
    j["log_term"] = r.log_term;
    j["independent"] = r.independence;
    j["residue_applicable"] = r.residue_applicable;
    j["second_residue"] = r.second_residue;
    j["degenerate"] = r.degenerate;
    j["alpha0"] = to_json(r.alpha0);
    j["h_coeff"] = to_json(r.h_coeff);
    json F = json::array();
    for (const auto& [e, v] : r.F) F.push_back({{"power", e}, {"coeff", to_json(v)}});
    j["F"] = F;
    return j;
}

json to_json(const AdmissibilityReport& r) {
    json j;
    j["key"] = r.key;
    j["surface"] = r.label;
    j["total_curvature_pi"] = -4 * r.gauss_degree;
    j["total_curvature"] = r.total_curvature;
    j["gauss_degree"] = r.gauss_degree;
    j["flux"] = r.flux_nonzero;
    j["d"] = r.ends.size();
    json ends = json::array();
    for (const auto& e : r.ends) {
        json x;
        x["end"] = e.end;
        x["m"] = e.m;
        x["r"] = e.r ? json(*e.r) : json(nullptr);
        x["flux"] = e.flux_nonzero;
        x["residue_applicable"] = e.residue_applicable;
        x["from_remark"] = e.from_remark;
        if (e.report) {
            x["A0"] = to_json(e.report->A0);
            x["A1"] = to_json(e.report->A1);
            x["flux_vector"] = to_json(e.report->flux);
        }
        ends.push_back(x);
    }
    j["ends"] = ends;
    j["residue_violation"] = r.residue_violation;
    j["verdict"] = verdict_name(r.verdict);
    j["provenance"] = provenance_name(r.provenance);
    j["mapping_uncertain"] = r.mapping_uncertain;
    j["discrepancies"] = r.discrepancies;
    j["notes"] = r.notes;
    return j;
}

json to_json(const Figure1Table& t) {
    json j;
    json rows = json::array();
    bool match = true;
    for (const auto& r : t.rows) {
        rows.push_back(to_json(r));
        match = match && r.discrepancies.empty();
    }
    j["rows"] = rows;
    j["partial"] = t.partial;
    j["missing"] = t.missing;
    j["match"] = match;
    return j;
}

json to_json(const SuiteReport& r, bool per_sample) {
    json j;
    j["suite"] = r.name;
    j["samples"] = r.samples;
    j["violations"] = r.violations;
    j["budget"] = r.budget;
    j["worst_slack"] = r.worst;
    json st = json::object();
    for (const auto& [k, v] : r.stats) st[k] = v;
    j["stats"] = st;
    j["passed"] = r.passed();
    if (per_sample) j["per_sample_slack"] = r.per_sample;
    return j;
}

json to_json(const NeckDecomposition& d) {
    json j;
    j["d"] = d.d;
    j["rounded"] = d.degree;
    j["distance"] = d.distance;
    j["integral"] = d.integral;
    j["measure_row"] = d.measure_row;
    j["d_spread"] = d.d_spread;
    j["nu_harmonic_residual"] = d.nu_harmonic_residual;
    j["mu_sup"] = d.mu_sup;
    j["wente_bound"] = d.wente_bound;
    j["frame_energy"] = d.frame_energy;
    return j;
}

json to_json(const ResidueLimit& r) {
    json j;
    j["limit"] = r.limit;
    j["order"] = r.rate;
    j["values"] = r.values;
    return j;
}

}  // namespace bw
