#include "bw/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bw/error.hpp"

namespace bw {

namespace {

constexpr double kPi = std::numbers::pi;
const char* const kKeys[] = {"catenoid", "enneper", "trinoid", "lopez-i", "lopez-ii", "lopez-iii",
                             "lopez-iv", "lopez-v", "lopez-vi", "lopez-vii", "lopez-viii", "lopez-ix"};

RationalMap rat(std::vector<cplx> n, std::vector<cplx> d = {1.0}) {
    return RationalMap(Polynomial(std::move(n)), Polynomial(std::move(d)));
}

CatalogueEntry meta(std::string key, std::string label, int tc, bool flux, std::vector<int> m, std::vector<int> r,
                    bool adm) {
    CatalogueEntry e;
    e.key = std::move(key);
    e.label = std::move(label);
    e.expected = {tc, flux, std::move(m), std::move(r), adm};
    return e;
}

std::vector<std::pair<int, int>> sorted_pairs(const std::vector<int>& m, const std::vector<int>& r) {
    std::vector<std::pair<int, int>> v;
    for (std::size_t j = 0; j < m.size(); ++j) v.emplace_back(m[j], j < r.size() ? r[j] : -1);
    std::sort(v.begin(), v.end());
    return v;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t j = 0; j < v.size(); ++j) s += (j ? ";" : "") + std::to_string(v[j]);
    return s;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "Yes";
        case Verdict::no: return "No";
        default: return "indeterminate";
    }
}

const char* provenance_name(Provenance p) { return p == Provenance::computed ? "computed" : "metadata"; }

std::vector<CatalogueEntry> builtin_catalogue(const CatalogueParams& p) {
    const double l = p.lambda;
    const cplx c = p.c;
    const cplx eit = std::polar(1.0, p.theta);
    std::vector<CatalogueEntry> cat;

    auto cat_e = meta("catenoid", "Catenoid", -4, true, {1, 1}, {0, 0}, false);
    cat_e.surface = WeierstrassSurface{rat({0.0, 1.0}), rat({1.0}, {0.0, 0.0, 1.0}),
                                       {EndPoint::at(0.0), EndPoint::inf()}, "Catenoid", {}};
    cat.push_back(cat_e);

    auto enn = meta("enneper", "Enneper surface", -4, false, {3}, {2}, false);
    enn.surface = WeierstrassSurface{rat({0.0, 1.0}), rat({1.0}), {EndPoint::inf()}, "Enneper surface", {}};
    cat.push_back(enn);

    cat.push_back(meta("trinoid", "Trinoid", -8, true, {1, 1, 1}, {0, 0, 0}, false));

    // end moved from infinity to 0
    auto l1 = meta("lopez-i", "Lopez surface I", -8, false, {5}, {4}, false);
    l1.surface = WeierstrassSurface{rat({l, l * c, l}, {0.0, 1.0}), rat({eit}, {0.0, 0.0, 0.0, 0.0, 1.0}),
                                    {EndPoint::at(0.0)}, "Lopez surface I",
                                    {{"lambda", l}, {"c", c}, {"theta", p.theta}}};
    l1.source = "case 2, sub-case 1";
    cat.push_back(l1);

    auto l2 = meta("lopez-ii", "Lopez surface II", -8, false, {5}, {3}, true);
    l2.surface = WeierstrassSurface{rat({l, 0.0, l * c}, {0.0, 0.0, 1.0}), rat({eit}, {0.0, 0.0, 1.0}),
                                    {EndPoint::at(0.0)}, "Lopez surface II",
                                    {{"lambda", l}, {"c", c}, {"theta", p.theta}}};
    l2.source = "case 2, sub-case 2";
    cat.push_back(l2);

    cat.push_back(meta("lopez-iii", "Lopez surface III", -8, true, {2, 2}, {1, 1}, false));
    cat.push_back(meta("lopez-iv", "Lopez surface IV", -8, true, {2, 2}, {1, 1}, false));
    cat.push_back(meta("lopez-v", "Lopez surface V", -8, true, {2, 2}, {0, 0}, false));

    bool c0 = std::abs(c) < 1e-14;
    auto l6 = meta("lopez-vi", "Lopez surface VI", -8, true, {1, 3}, {0, c0 ? 1 : 2}, false);
    l6.surface = WeierstrassSurface{rat({l * c, 0.0, l}, {1.0, 1.0}), rat({1.0, 2.0, 1.0}, {0.0, 0.0, 0.0, 0.0, 1.0}),
                                    {EndPoint::at(0.0), EndPoint::inf()}, "Lopez surface VI",
                                    {{"lambda", l}, {"c", c}}};
    l6.source = "case 4, sub-case 1";
    l6.vi_family = true;
    cat.push_back(l6);

    cat.push_back(meta("lopez-vii", "Lopez surface VII", -8, true, {1, 3}, {0, 2}, false));

    auto l8 = meta("lopez-viii", "Lopez surface VIII", -8, false, {1, 3}, {0, 1}, true);
    l8.surface = WeierstrassSurface{rat({l, 0.0, l}), rat({1.0}, {0.0, 0.0, 0.0, 0.0, 1.0}),
                                    {EndPoint::at(0.0), EndPoint::inf()}, "Lopez surface VIII", {{"lambda", l}}};
    l8.source = "case 4, sub-case 3";
    l8.mapping_uncertain = true;
    cat.push_back(l8);

    auto l9 = meta("lopez-ix", "Lopez surface IX", -8, false, {1, 3}, {0, 1}, true);
    l9.surface = WeierstrassSurface{rat({0.0, 0.0, l}), rat({1.0}, {0.0, 0.0, 0.0, 0.0, 1.0}),
                                    {EndPoint::at(0.0), EndPoint::inf()}, "Lopez surface IX", {{"lambda", l}}};
    l9.source = "case 4, sub-case 4";
    l9.mapping_uncertain = true;
    cat.push_back(l9);
    return cat;
}

const CatalogueEntry& find_entry(const std::vector<CatalogueEntry>& cat, const std::string& key) {
    for (const auto& e : cat)
        if (e.key == key) return e;
    fail(Errc::invalid, "unknown catalogue entry '" + key + "'");
}

Verdict verdict_rule(bool flux_nonzero, const std::vector<EndRecord>& ends, bool* residue_violation) {
    bool violation = false, unknown = false;
    for (const auto& e : ends) {
        if (e.m < 2) continue;
        if (!e.r) unknown = true;
        else if (*e.r == e.m - 1) violation = true;
    }
    if (residue_violation) *residue_violation = violation;
    if (flux_nonzero || violation) return Verdict::no;
    return unknown ? Verdict::indeterminate : Verdict::yes;
}

AdmissibilityReport classify(const CatalogueEntry& entry) {
    AdmissibilityReport rep;
    rep.key = entry.key;
    rep.label = entry.label;
    rep.mapping_uncertain = entry.mapping_uncertain;
    const ExpectedRow& ex = entry.expected;

    if (!entry.surface) {
        rep.provenance = Provenance::metadata;
        for (std::size_t j = 0; j < ex.m.size(); ++j) {
            EndRecord er;
            er.end = "#" + std::to_string(j + 1);
            er.m = ex.m[j];
            if (j < ex.r.size()) er.r = ex.r[j];
            er.flux_nonzero = ex.flux;
            rep.ends.push_back(er);
        }
        rep.flux_nonzero = ex.flux;
        rep.gauss_degree = jorge_meeks(static_cast<int>(ex.m.size()), ex.m).gauss_degree;
    } else {
        const WeierstrassSurface& s = *entry.surface;
        bool c0 = false;
        if (entry.vi_family) {
            auto it = s.params.find("c");
            c0 = it != s.params.end() && std::abs(it->second) < 1e-14;
        }
        for (const auto& end : s.ends) {
            EndRecord er;
            er.end = end.str();
            EndReport r = end_expand(s, end, 12, false);
            er.m = r.m;
            er.flux_nonzero = norm(Vec3c{r.flux[0], r.flux[1], r.flux[2]}) > 1e-10;
            er.residue_applicable = r.residue_applicable;
            if (!r.degenerate) er.r = r.second_residue;
            if (c0 && r.m == 3) {
                er.r = 1;
                er.from_remark = true;
                rep.notes.push_back("r at the multiplicity-3 end taken from the c = 0 exception of the VI family");
            }
            if (!r.residue_applicable)
                rep.notes.push_back("end " + er.end + " has a log term; r is read from the power part");
            if (r.degenerate) rep.notes.push_back("degenerate expansion at end " + er.end);
            er.report = r;
            rep.flux_nonzero = rep.flux_nonzero || er.flux_nonzero;
            rep.ends.push_back(er);
        }
        rep.gauss_degree = gauss_degree(s.g);
        std::vector<int> ms;
        for (const auto& e : rep.ends) ms.push_back(e.m);
        try {
            int jm = jorge_meeks(static_cast<int>(ms.size()), ms).gauss_degree;
            if (jm != rep.gauss_degree)
                rep.discrepancies.push_back("gauss degree " + std::to_string(rep.gauss_degree) +
                                            " differs from the end-count degree " + std::to_string(jm));
        } catch (const Error& e) {
            rep.discrepancies.push_back(std::string("end multiplicities: ") + e.what());
        }
    }
    std::stable_sort(rep.ends.begin(), rep.ends.end(), [](const EndRecord& a, const EndRecord& b) { return a.m < b.m; });
    rep.total_curvature = -4.0 * kPi * rep.gauss_degree;
    rep.verdict = verdict_rule(rep.flux_nonzero, rep.ends, &rep.residue_violation);
    rep.admissible = rep.verdict == Verdict::yes;

    if (rep.provenance == Provenance::computed && entry.has_expected) {
        std::vector<int> ms, rs;
        for (const auto& e : rep.ends) {
            ms.push_back(e.m);
            rs.push_back(e.r ? *e.r : -1);
        }
        if (sorted_pairs(ms, rs) != sorted_pairs(ex.m, ex.r))
            rep.discrepancies.push_back("ends (m; r) computed " + join(ms) + " / " + join(rs) + ", expected " +
                                        join(ex.m) + " / " + join(ex.r));
        if (rep.flux_nonzero != ex.flux) rep.discrepancies.push_back("flux flag differs from the table");
        if (-4 * rep.gauss_degree != ex.total_curvature_pi)
            rep.discrepancies.push_back("total curvature differs from the table");
        if (rep.verdict != (ex.admissible ? Verdict::yes : Verdict::no))
            rep.discrepancies.push_back(std::string("verdict ") + verdict_name(rep.verdict) + " differs from the table");
    }
    return rep;
}

std::string Figure1Table::to_csv() const {
    std::ostringstream os;
    os << "surface,total_curvature,flux,d,multiplicities,residues,verdict,provenance\n";
    for (const auto& r : rows) {
        std::vector<int> ms, rs;
        std::string res;
        for (std::size_t j = 0; j < r.ends.size(); ++j) {
            ms.push_back(r.ends[j].m);
            res += (j ? ";" : "") + (r.ends[j].r ? std::to_string(*r.ends[j].r) : std::string("?"));
        }
        os << r.label << ',' << -4 * r.gauss_degree << "pi," << (r.flux_nonzero ? "Yes" : "No") << ','
           << r.ends.size() << ',' << join(ms) << ',' << res << ',' << verdict_name(r.verdict) << ','
           << provenance_name(r.provenance) << '\n';
    }
    return os.str();
}

Figure1Table figure1_table(const std::vector<CatalogueEntry>& cat, bool allow_partial) {
    if (cat.empty()) fail(Errc::incomplete, "empty catalogue: all 12 rows missing");
    Figure1Table t;
    for (const char* k : kKeys)
        if (std::none_of(cat.begin(), cat.end(), [k](const CatalogueEntry& e) { return e.key == k; }))
            t.missing.push_back(k);
    if (!t.missing.empty()) {
        if (!allow_partial) {
            std::string gaps;
            for (const auto& m : t.missing) gaps += (gaps.empty() ? "" : ", ") + m;
            fail(Errc::incomplete, "incomplete table, missing: " + gaps);
        }
        t.partial = true;
    }
    for (const auto& e : cat) t.rows.push_back(classify(e));
    return t;
}

LiYau li_yau_gauss_bonnet(int theta0) {
    if (theta0 < 1) fail(Errc::domain, "theta0 must be at least 1");
    LiYau r;
    r.willmore = 4.0 * kPi * theta0;
    r.compact_curvature = 2.0 * kPi * (theta0 + 1);
    r.open_curvature = -2.0 * kPi * (theta0 - 1);
    r.telescoped = r.willmore - r.compact_curvature + r.open_curvature;
    return r;
}

}  // namespace bw
