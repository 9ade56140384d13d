#include "bw/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bw/error.hpp"
#include "bw/wente.hpp"

namespace bw {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx draw(std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    double re = nd(rng);
    double im = nd(rng);
    return {re, im};
}

SuiteReport start(const std::string& name, double budget) {
    SuiteReport r;
    r.name = name;
    r.budget = budget;
    r.worst = std::numeric_limits<double>::infinity();
    return r;
}

void record(SuiteReport& r, double slack) {
    r.per_sample.push_back(slack);
    r.worst = std::min(r.worst, slack);
    if (!(slack >= -r.budget)) ++r.violations;
    ++r.samples;
}

int count(const SuiteConfig& cfg, int fallback) {
    if (cfg.field) return 1;
    if (cfg.samples < 0) fail(Errc::usage, "sample count must be positive");
    return cfg.samples == 0 ? fallback : cfg.samples;
}

void no_field(const SuiteConfig& cfg, const std::string& name) {
    if (cfg.field) fail(Errc::usage, "suite " + name + " does not take an input field");
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"l21l2", "schwarz", "schwarz-multi",
                                                   "wente", "oscillation", "radial-average"};
    return names;
}

bool has_suite(const std::string& name) {
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "l21l2") return suite_l21l2(cfg);
    if (name == "schwarz") return suite_schwarz(cfg);
    if (name == "schwarz-multi") return suite_schwarz_multi(cfg);
    if (name == "wente") return suite_wente(cfg);
    if (name == "oscillation") return suite_oscillation(cfg);
    if (name == "radial-average") return suite_radial_average(cfg);
    fail(Errc::usage, "unknown lemma suite '" + name + "'");
}

// slack = 1 - lhs / bound, budget 2% for the grid
SuiteReport suite_l21l2(const SuiteConfig& cfg) {
    SuiteReport rep = start("l21l2", 0.02);
    std::vector<double> alphas = cfg.alphas.empty() ? std::vector<double>{0.125, 0.25, 0.5} : cfg.alphas;
    for (double a : alphas)
        if (!(a > 0.0 && a < 1.0)) fail(Errc::domain, "alpha must lie in (0, 1)");
    std::mt19937_64 rng(cfg.seed);
    const int n = count(cfg, 1000);
    double worst_ratio = 0.0;
    for (int k = 0; k < n; ++k) {
        Annulus ann(k % 2 == 0 ? 1e-2 : 1e-4, 1.0);
        LaurentField u = cfg.field ? *cfg.field : random_harmonic(rng, 32, ann, true);
        double slack = std::numeric_limits<double>::infinity();
        for (double a : alphas) {
            BoundCheck b = verify_shrink_l21(u, ann, a, GridSpec{128, 128});
            worst_ratio = std::max(worst_ratio, b.ratio());
            slack = std::min(slack, 1.0 - b.ratio());
        }
        record(rep, slack);
    }
    rep.stats["worst_ratio"] = worst_ratio;
    return rep;
}

SuiteReport suite_schwarz(const SuiteConfig& cfg) {
    no_field(cfg, "schwarz");
    SuiteReport rep = start("schwarz", 1e-8);
    std::mt19937_64 rng(cfg.seed);
    const int n = count(cfg, 1000);
    Annulus ann(1e-3, 1.0);
    for (int k = 0; k < n; ++k) {
        LaurentField u = random_holomorphic(rng, 16, ann);
        double delta = boundary_sup(u, 0.0, ann.r);
        record(rep, schwarz_envelope(u, ann, delta).worst_slack);
    }
    return rep;
}

MultiDiskConfig random_multi_disk(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    MultiDiskConfig c;
    const int m = 1 + static_cast<int>(rng() % 3);
    while (static_cast<int>(c.disks.size()) < m) {
        cplx a(1.2 * U(rng) - 0.6, 1.2 * U(rng) - 0.6);
        if (std::abs(a) >= 0.6) continue;
        double room = 1.0 - std::abs(a);
        double r = (0.02 + 0.18 * U(rng)) * room / 4.0;
        bool ok = true;
        for (const Disk& d : c.disks)
            if (std::abs(d.center - a) <= 2.0 * (d.radius + r)) ok = false;
        if (ok) c.disks.push_back({a, r, 0.0});
    }
    for (int n = 0; n < 12; ++n) c.field.regular.push_back(draw(rng) * std::ldexp(1.0, -n));
    for (const Disk& d : c.disks) {
        MultiPoleField::Pole p;
        p.center = d.center;
        for (int k = 0; k < 6; ++k) p.coeffs.push_back(draw(rng) * std::ldexp(1.0, -k) * std::pow(d.radius, k + 1));
        c.field.poles.push_back(std::move(p));
    }
    for (Disk& d : c.disks) {
        double s = 0.0;
        for (int j = 0; j < 4096; ++j)
            s = std::max(s, std::abs(c.field.value(d.center + std::polar(d.radius, 2.0 * kPi * j / 4096))));
        d.delta = s * (1.0 + 1e-13);
    }
    return c;
}

SuiteReport suite_schwarz_multi(const SuiteConfig& cfg) {
    no_field(cfg, "schwarz-multi");
    SuiteReport rep = start("schwarz-multi", 1e-8);
    std::mt19937_64 rng(cfg.seed);
    const int n = count(cfg, 200);
    double disks = 0.0;
    for (int k = 0; k < n; ++k) {
        MultiDiskConfig c = random_multi_disk(rng);
        disks += static_cast<double>(c.disks.size());
        record(rep, schwarz_envelope_multi(c.field, c.disks, 1.0).worst_slack);
    }
    rep.stats["mean_disks"] = n > 0 ? disks / n : 0.0;
    return rep;
}

// slack = 1 - ratio / constant for both Wente ratios, budget 3%
SuiteReport suite_wente(const SuiteConfig& cfg) {
    no_field(cfg, "wente");
    SuiteReport rep = start("wente", 0.03);
    const int n = count(cfg, 200);
    WenteGrid g = WenteGrid::make_disk(1.0, 64, 128);
    double sup_max = 0.0, dir_max = 0.0;
    for (int k = 0; k < n; ++k) {
        WenteSweep s = wente_constant_sweep(1, g, cfg.seed + static_cast<std::uint64_t>(k));
        sup_max = std::max(sup_max, s.max_sup_ratio);
        dir_max = std::max(dir_max, s.max_dirichlet_ratio);
        record(rep, std::min(1.0 - s.max_sup_ratio / wente_sup_constant(),
                             1.0 - s.max_dirichlet_ratio / wente_dirichlet_constant()));
    }
    rep.stats["max_sup_ratio"] = sup_max;
    rep.stats["max_dirichlet_ratio"] = dir_max;
    rep.stats["sup_constant"] = wente_sup_constant();
    rep.stats["dirichlet_constant"] = wente_dirichlet_constant();
    return rep;
}

// The constant has no closed form: the suite records the largest ratio as an
// empirical estimate and checks that the ratio is invariant under z -> s z.
SuiteReport suite_oscillation(const SuiteConfig& cfg) {
    SuiteReport rep = start("oscillation", 1e-9);
    std::mt19937_64 rng(cfg.seed);
    const int n = count(cfg, 500);
    const double s = 10.0;
    Annulus ann(1.0, 4.0), big(s, 4.0 * s);
    double gamma = 0.0;
    for (int k = 0; k < n; ++k) {
        LaurentField u = cfg.field ? *cfg.field : random_harmonic(rng, 16, ann, false);
        std::map<int, cplx> scaled;
        for (const auto& [j, c] : u.coeffs) scaled[j] = c * std::pow(s, -j);
        scaled[0] = u.coeffs.count(0) ? u.coeffs.at(0) - u.log_coefficient * std::log(s) : -u.log_coefficient * std::log(s);
        LaurentField v = LaurentField::harmonic(scaled, u.log_coefficient);
        double r1 = oscillation_bound_check(u, ann, GridSpec{128, 256}).ratio();
        double r2 = oscillation_bound_check(v, big, GridSpec{128, 256}).ratio();
        gamma = std::max(gamma, r1);
        record(rep, -std::abs(r1 - r2) / std::max(r1, 1e-300));
    }
    rep.stats["empirical_gamma4"] = gamma;
    return rep;
}

// ||grad avg u||_p <= ||grad u||_p for p = 1, 2, 4 (relative slack), and avg o avg = avg
SuiteReport suite_radial_average(const SuiteConfig& cfg) {
    SuiteReport rep = start("radial-average", 1e-12);
    std::mt19937_64 rng(cfg.seed);
    const int n = count(cfg, 200);
    Annulus ann(1e-2, 1.0);
    LogPolarGrid grid(ann.r, ann.R, 128, 128);
    int idempotence = 0;
    for (int k = 0; k < n; ++k) {
        LaurentField u = cfg.field ? *cfg.field : random_harmonic(rng, 16, ann, false);
        LaurentField ub = radial_average(u);
        LaurentField ubb = radial_average(ub);
        if (ubb.coeffs != ub.coeffs || ubb.log_coefficient != ub.log_coefficient) ++idempotence;
        SampledAnnulusField g = field_from_values(grid, grad_abs_samples(u, grid));
        SampledAnnulusField gb = field_from_values(grid, grad_abs_samples(ub, grid));
        double slack = std::numeric_limits<double>::infinity();
        for (double p : {1.0, 2.0, 4.0}) {
            double a = lp_norm(g, p), b = lp_norm(gb, p);
            slack = std::min(slack, a > 0.0 ? 1.0 - b / a : (b > 0.0 ? -1.0 : 0.0));
        }
        std::vector<double> vs = value_samples(u, grid);
        std::vector<double> avg = radial_average_samples(vs, grid);
        std::vector<double> exact = value_samples(ub, grid);
        double scale = 0.0, diff = 0.0;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            scale = std::max(scale, std::abs(exact[i]));
            diff = std::max(diff, std::abs(avg[i] - exact[i]));
        }
        slack = std::min(slack, -diff / std::max(scale, 1.0));
        record(rep, slack);
    }
    rep.stats["idempotence_failures"] = idempotence;
    rep.violations += idempotence;
    return rep;
}

}  // namespace bw
