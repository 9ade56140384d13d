// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bw/classifier.hpp"
#include "bw/distrib.hpp"
#include "bw/error.hpp"
#include "bw/jsonio.hpp"
#include "bw/laurent.hpp"
#include "bw/lorentz.hpp"
#include "bw/neck.hpp"
#include "bw/suites.hpp"
#include "bw/weierstrass.hpp"

using namespace bw;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx I(0.0, 1.0);

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [" << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_err(const Vec3c& a, const Vec3c& b) {
    double e = 0.0;
    for (int i = 0; i < 3; ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e / std::max(norm(b), 1e-300);
}

std::string run_tool(const std::string& args) {
    std::string cmd = std::string(BWTOOL_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return "<popen failed>";
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    return out + "\nstatus=" + std::to_string(st);
}

// 1. reference table
void figure1(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    auto table = figure1_table(builtin_catalogue());
    double dt = seconds_since(t0);
    o.require(table.rows.size() == 12, "12 rows");
    std::vector<std::string> yes;
    int mismatches = 0;
    for (const auto& r : table.rows) {
        mismatches += static_cast<int>(!r.discrepancies.empty());
        if (r.verdict == Verdict::yes) yes.push_back(r.key);
    }
    o.require(mismatches == 0, std::to_string(mismatches) + " rows differ");
    o.require(yes == std::vector<std::string>{"lopez-ii", "lopez-viii", "lopez-ix"}, "Yes rows are II, VIII, IX");
    o.require(dt < 5.0, "runtime");
    o.detail << " rows=" << table.rows.size() << " mismatched=" << mismatches << " yes=" << yes.size() << " time=" << dt
             << "s";
}

// 2. end expansions
void expansions(Outcome& o) {
    for (double lambda : {1.0, 2.0})
        for (double theta : {0.0, 0.3}) {
            CatalogueParams p;
            p.lambda = lambda;
            p.theta = theta;
            auto cat = builtin_catalogue(p);
            auto en = end_expand(*find_entry(cat, "enneper").surface, EndPoint::inf());
            auto l2 = end_expand(*find_entry(cat, "lopez-ii").surface, EndPoint::at(0.0));
            auto l9 = end_expand(*find_entry(cat, "lopez-ix").surface, EndPoint::at(0.0));
            cplx e = std::polar(lambda * lambda / 5.0, theta);
            double err = std::max({rel_err(en.A0, {-1.0 / 3.0, I / 3.0, 0.0}), rel_err(en.A1, {0.0, 0.0, 1.0}),
                                   rel_err(l2.A0, {e, -I * e, 0.0}), rel_err(l9.A1, {0.0, 0.0, -2.0 * lambda})});
            o.require(err <= 1e-10, "vectors at lambda=" + std::to_string(lambda));
            o.require(en.second_residue == 2 && l2.second_residue == 3 && l9.second_residue == 1, "second residues");
            if (lambda == 2.0 && theta == 0.3) o.detail << " max_rel_err=" << err;
        }
}

// 3. Lorentz closed forms
void lorentz(Outcome& o) {
    double r = 1e-4, R = 1.0;
    LogPolarGrid g(r, R, 512, 1024);
    double weak = lorentz_norm(sample_field(g, [](double rho, double) { return 1.0 / rho; }), LorentzIndex::weak(2),
                               Flavor::maximal);
    double e1 = std::abs(weak / (2.0 * std::sqrt(kPi)) - 1.0);
    double l2 = grad_l2_norm(LaurentField::harmonic({}, 1.0), Annulus(r, R));
    double e2 = std::abs(l2 / std::sqrt(2.0 * kPi * std::log(R / r)) - 1.0);
    double alpha = 0.5, rad = 1.0, outer = (1.0 - alpha) * rad, inner = outer / 2.0;
    LogPolarGrid h(inner / 2.0, 4.0 * outer, 512, 1024);
    double ind = lorentz_norm(sample_field(h, [&](double rho, double) { return rho >= inner && rho <= outer ? 1.0 : 0.0; }),
                              LorentzIndex::finite(2, 1), Flavor::maximal);
    double e3 = std::abs(ind / (2.0 * std::sqrt(3.0 * kPi) * outer) - 1.0);
    o.require(e1 <= 5e-3, "weak norm");
    o.require(e2 <= 1e-3, "L2 norm");
    o.require(e3 <= 5e-3, "indicator");
    o.detail << " weak_rel=" << e1 << " l2_rel=" << e2 << " indicator_rel=" << e3;
}

void suite_line(Outcome& o, const SuiteReport& r) {
    o.require(r.passed(), r.name + " violations");
    o.detail << " " << r.name << ": n=" << r.samples << " violations=" << r.violations << " worst_slack=" << r.worst;
}

// 4. shrink estimate suite
void l21(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = suite_l21l2(SuiteConfig{});
    double dt = seconds_since(t0);
    o.require(r.samples == 1000, "1000 samples");
    o.require(dt < 60.0, "runtime");
    suite_line(o, r);
    o.detail << " worst_ratio=" << r.stats.at("worst_ratio") << " time=" << dt << "s";
}

// 5. Schwarz envelopes
void schwarz(Outcome& o) {
    auto a = suite_schwarz(SuiteConfig{});
    auto b = suite_schwarz_multi(SuiteConfig{});
    o.require(a.samples == 1000 && b.samples == 200, "sample counts");
    suite_line(o, a);
    suite_line(o, b);
}

// 6. Wente constants
void wente(Outcome& o) {
    auto r = suite_wente(SuiteConfig{});
    o.require(r.samples == 200, "200 samples");
    suite_line(o, r);
    o.detail << " sup_ratio=" << r.stats.at("max_sup_ratio") << " dirichlet_ratio=" << r.stats.at("max_dirichlet_ratio");
}

// 7. neck integrality
void neck(Outcome& o) {
    const double rmin = 1e-3, R = 1.0, eps = 0.05;
    for (int t : {1, 2, 3, 5}) {
        const int target = t - 1;
        std::array<double, 3> m{}, p{};
        for (int l = 0; l < 3; ++l) {
            int M = 128 << l;
            m[l] = decompose(monomial_sheet(t, rmin, R, M, 2 * M)).d;
            p[l] = decompose(perturbed_graph(t, eps, rmin, R, M * 2, M * 4)).d;
        }
        // monomial: grids 128, 256, 512; perturbed: 256, 512, 1024
        double em = std::abs(m[2] - target), em1 = std::abs(m[1] - target);
        double order_m = em > 0.0 ? std::log2(em1 / em) : INFINITY;
        double d1 = std::abs(p[1] - p[0]), d2 = std::abs(p[2] - p[1]);
        double order_p = d2 > 0.0 ? std::log2(d1 / d2) : INFINITY;
        std::string tag = "theta0=" + std::to_string(t);
        o.require(em <= 0.05, tag + " monomial d");
        o.require(std::abs(p[1] - target) <= 0.05, tag + " perturbed d");
        o.require(order_m >= 1.8 || em <= 1e-9, tag + " monomial order");
        o.require(order_p >= 1.8 || d2 <= 1e-9, tag + " perturbed order");
        o.detail << " t" << t << ":d=" << p[1] << ",order_m=" << order_m << ",order_p=" << order_p;
    }
    Hole a{cplx(-0.3, 0.0), 0.05}, b{cplx(0.3, 0.0), 0.05}, c{cplx(0.0, 0.4), 0.05};
    struct Case {
        RationalMap dF;
        std::vector<Hole> holes;
    };
    std::vector<Case> cases = {
        {RationalMap::from_poly(Polynomial({-0.09, 0.0, 1.0})), {a, b}},
        {RationalMap(Polynomial({0.09, 0.6, 1.0}), Polynomial({-0.3, 1.0})), {a, b}},
        {RationalMap::from_poly(Polynomial({-0.09, 0.0, 1.0}) * Polynomial({-0.3, 1.0}) *
                               Polynomial({cplx(0.0, -0.4), cplx(1.0, 0.0)})), {a, b, c}},
    };
    int k = 0;
    for (const auto& cs : cases) {
        auto r = multi_disk_decompose(holomorphic_multi_disk(cs.dF, cs.holes, 128, 256));
        o.require(r.integral && r.consistent, "multi-disk case " + std::to_string(k));
        o.detail << " multi" << k++ << ":sum=" << r.total << ",outer=" << r.outer_degree;
    }
}

// 8. distributional residue
void residue(Outcome& o) {
    const std::vector<double> eps = {0.1, 0.05, 0.025, 0.0125, 0.00625};
    for (int m : {1, 2, 3}) {
        BranchModel b;
        b.m = m;
        b.theta0 = m + 1;
        double s = 1.0 / std::sqrt(2.0);
        b.C0 = {s, s * I, 0.0};
        TestVariation w;
        for (int i = 0; i < 3; ++i) w.gamma[i] = std::conj(b.C0[i]);
        w.eta = {0.4, 0.2 * I, -0.3};
        auto r = residue_limit(b, w, eps);
        double stated = stated_residue(b, w);
        double rel = std::abs(r.limit - stated) / std::abs(stated);
        o.require(rel <= 1e-4, "m=" + std::to_string(m) + " limit");
        o.require(r.rate >= 1.9, "m=" + std::to_string(m) + " order");
        o.detail << " m" << m << ":limit=" << r.limit << ",stated=" << stated << ",order=" << r.rate;
    }
    BranchModel b;
    b.gamma0 = {1.0, 0.0, 0.0};
    TestVariation w;
    w.w0 = {1.0, 0.0, 0.0};
    auto r = residue_limit(b, w, eps);
    double stated = stated_residue(b, w);
    o.require(std::abs(r.limit - stated) <= 1e-4 * std::abs(stated), "gamma0 limit");
    o.detail << " gamma0:limit=" << r.limit << ",stated=" << stated;
}

// 9. structural invariants
void structure(Outcome& o) {
    double conf = 0.0, null = 0.0, res = 0.0;
    int entries = 0;
    for (const auto& e : builtin_catalogue()) {
        if (!e.surface) continue;
        ++entries;
        const auto& s = *e.surface;
        conf = std::max(conf, conformality_check(s, 0.3));
        auto forms = s.forms();
        std::vector<int> ms;
        for (const auto& end : s.ends) {
            auto r = end_expand(s, end, 12, false);
            ms.push_back(r.m);
            null = std::max(null, std::abs(bilinear(r.A0, r.A0)) / std::max(1.0, norm(r.A0) * norm(r.A0)));
            if (!r.log_term && r.k > 0)
                null = std::max(null, std::abs(bilinear(r.A0, r.A1)) / std::max(1.0, norm(r.A0) * norm(r.A1)));
            for (int c = 0; c < 3; ++c)
                res = std::max(res, std::abs(form_residue(forms[c], end) - contour_residue(forms[c], end, 0.05)));
        }
        o.require(gauss_degree(s.g) == jorge_meeks(static_cast<int>(ms.size()), ms).gauss_degree,
                  e.key + " Gauss degree");
    }
    o.require(conf <= 1e-10, "conformality");
    o.require(null <= 1e-10, "null vectors");
    o.require(res <= 1e-9, "residues");
    o.detail << " entries=" << entries << " conformality=" << conf << " null=" << null << " residue_gap=" << res;
}

// 10. determinism
void determinism(Outcome& o) {
    auto in_process = [] {
        std::string s = figure1_table(builtin_catalogue()).to_csv();
        SuiteConfig c;
        c.samples = 20;
        for (const auto& n : suite_names()) s += dump17(to_json(run_suite(n, c)));
        s += dump17(to_json(decompose(perturbed_graph(3, 0.05, 1e-3, 1.0, 64, 128))));
        return s;
    };
    o.require(in_process() == in_process(), "in-process outputs differ");
    int same = 0;
    const std::vector<std::string> cmds = {"classify --format csv", "classify", "verify --lemma l21l2 --samples 10",
                                           "verify --lemma wente --samples 5", "neck --builtin perturbed --theta0 2",
                                           "distrib --m 2 --theta0 3", "expand-end --only lopez-v"};
    for (const auto& c : cmds) {
        bool eq = run_tool(c) == run_tool(c);
        same += eq;
        o.require(eq, "bwtool " + c);
    }
    o.detail << " cli_commands_identical=" << same << "/" << cmds.size();
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"reference table", figure1},           {"end expansions", expansions},
        {"Lorentz closed forms", lorentz},      {"shrink estimate suite", l21},
        {"Schwarz suites", schwarz},            {"Wente constants", wente},
        {"neck integrality", neck},             {"distributional residue", residue},
        {"structural invariants", structure},   {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failed += !o.pass;
        std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ":"
                  << o.detail.str() << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
