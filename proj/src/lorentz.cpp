#include "bw/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bw/error.hpp"
#include "bw/kernels.hpp"

namespace bw {

LogPolarGrid::LogPolarGrid(double r, double R, int nr_, int nt_)
    : inner(r), outer(R), nr(nr_), nt(nt_) {
    if (!(r > 0.0) || !(r < R)) fail(Errc::domain, "log-polar grid needs 0 < r < R");
    if (nr < 1 || nt < 1) fail(Errc::domain, "log-polar grid needs positive node counts");
}

double LogPolarGrid::ds() const { return std::log(outer / inner) / nr; }
double LogPolarGrid::dtheta() const { return 2.0 * std::numbers::pi / nt; }
double LogPolarGrid::radius(int i) const { return inner * std::exp((i + 0.5) * ds()); }
double LogPolarGrid::edge(int i) const {
    if (i <= 0) return inner;
    if (i >= nr) return outer;
    return inner * std::exp(i * ds());
}
double LogPolarGrid::theta(int j) const { return (j + 0.5) * dtheta(); }
double LogPolarGrid::ring_area(int i) const {
    double a = edge(i), b = edge(i + 1);
    return 0.5 * dtheta() * (b - a) * (b + a);
}

void SampledAnnulusField::validate() const {
    if (!(inner_radius > 0.0) || !(inner_radius < outer_radius))
        fail(Errc::invalid, "annulus field needs 0 < inner < outer");
    std::size_t n = static_cast<std::size_t>(nr) * nt;
    if (values.size() != n || cell_areas.size() != n || radial_nodes.size() != static_cast<std::size_t>(nr))
        fail(Errc::shape, "annulus field arrays do not match nr x nt");
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0) fail(Errc::invalid, "annulus field values must be finite and >= 0");
    double expect = std::numbers::pi * (outer_radius * outer_radius - inner_radius * inner_radius);
    if (std::fabs(area() - expect) > 1e-8 * expect) fail(Errc::invalid, "cell areas do not sum to the annulus area");
}

double SampledAnnulusField::area() const {
    double s = 0.0;
    for (double a : cell_areas) s += a;
    return s;
}

static SampledAnnulusField empty_like(const LogPolarGrid& g) {
    SampledAnnulusField f;
    f.inner_radius = g.inner;
    f.outer_radius = g.outer;
    f.nr = g.nr;
    f.nt = g.nt;
    f.radial_nodes.resize(g.nr);
    f.cell_areas.resize(g.size());
    for (int i = 0; i < g.nr; ++i) {
        f.radial_nodes[i] = g.radius(i);
        double a = g.ring_area(i);
        std::fill_n(f.cell_areas.begin() + static_cast<std::ptrdiff_t>(i) * g.nt, g.nt, a);
    }
    return f;
}

SampledAnnulusField sample_field(const LogPolarGrid& g,
                                 const std::function<double(double, double)>& fn) {
    SampledAnnulusField f = empty_like(g);
    f.values.resize(g.size());
    for (int i = 0; i < g.nr; ++i) {
        double r = f.radial_nodes[i];
        for (int j = 0; j < g.nt; ++j) f.values[static_cast<std::size_t>(i) * g.nt + j] = std::fabs(fn(r, g.theta(j)));
    }
    return f;
}

SampledAnnulusField field_from_values(const LogPolarGrid& g, std::vector<double> values) {
    if (values.size() != g.size()) fail(Errc::shape, "value array does not match grid");
    SampledAnnulusField f = empty_like(g);
    for (double& v : values) v = std::fabs(v);
    f.values = std::move(values);
    return f;
}

double StepFunction::at(double t) const {
    auto it = std::upper_bound(measures.begin(), measures.end(), t);
    if (it == measures.end()) return 0.0;
    return values[static_cast<std::size_t>(it - measures.begin())];
}

double StepFunction::distribution(double lambda) const {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > lambda) m = measures[i];
        else break;
    }
    return m;
}

StepFunction decreasing_rearrangement(const double* values, const double* weights, std::size_t n) {
    if (n == 0) fail(Errc::domain, "rearrangement of an empty field");
    std::vector<std::pair<double, double>> vw(n);
    for (std::size_t i = 0; i < n; ++i) vw[i] = {std::fabs(values[i]), weights[i]};
    std::sort(vw.begin(), vw.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    StepFunction s;
    s.values.reserve(n);
    s.measures.reserve(n);
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cum += vw[i].second;
        if (!s.values.empty() && s.values.back() == vw[i].first) {
            s.measures.back() = cum;
        } else {
            s.values.push_back(vw[i].first);
            s.measures.push_back(cum);
        }
    }
    return s;
}

StepFunction decreasing_rearrangement(const SampledAnnulusField& f) {
    if (f.values.empty()) fail(Errc::domain, "rearrangement of an empty field");
    if (f.values.size() != f.cell_areas.size()) fail(Errc::shape, "values and cell areas differ in length");
    return decreasing_rearrangement(f.values.data(), f.cell_areas.data(), f.values.size());
}

LorentzIndex LorentzIndex::finite(double p, double q) {
    if (!(p > 1.0)) fail(Errc::domain, "Lorentz index needs p > 1");
    if (!(q >= 1.0)) fail(Errc::domain, "Lorentz index needs q >= 1");
    return LorentzIndex{p, q, false};
}

LorentzIndex LorentzIndex::weak(double p) {
    if (!(p > 1.0)) fail(Errc::domain, "Lorentz index needs p > 1");
    return LorentzIndex{p, std::numeric_limits<double>::infinity(), true};
}

namespace {

// int_a^b t^{e-1} dt
double power_integral(double a, double b, double e) {
    if (e == 0.0) return std::log(b / a);
    return (std::pow(b, e) - std::pow(a, e)) / e;
}

// int_a^b t^{q/p-1} (v + c/t)^q dt
double maximal_piece(double a, double b, double v, double c, double p, double q) {
    if (b <= a) return 0.0;
    if (c == 0.0) return std::pow(v, q) * power_integral(a, b, q / p);
    double qi = std::round(q);
    if (qi == q && q <= 16) {
        int n = static_cast<int>(qi);
        double s = 0.0, binom = 1.0;
        for (int j = 0; j <= n; ++j) {
            double e = q / p - j;
            double coef = binom * std::pow(v, n - j) * std::pow(c, j);
            if (coef != 0.0) s += coef * power_integral(a, b, e);
            binom = binom * (n - j) / (j + 1);
        }
        return s;
    }
    // general q: Gauss-Legendre in log t
    static const double x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                                0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
    static const double w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                                0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    double la = std::log(a), lb = std::log(b);
    int panels = std::max(1, static_cast<int>(std::ceil((lb - la) / 0.5)));
    double h = (lb - la) / panels, s = 0.0;
    for (int k = 0; k < panels; ++k) {
        double mid = la + (k + 0.5) * h;
        for (int g = 0; g < 8; ++g) {
            double t = std::exp(mid + 0.5 * h * x[g]);
            s += w[g] * 0.5 * h * std::pow(t, q / p) * std::pow(v + c / t, q);
        }
    }
    return s;
}

}  // namespace

double lorentz_norm(const StepFunction& fs, LorentzIndex idx, Flavor flavor) {
    const double p = idx.p, q = idx.q;
    if (!(p > 1.0)) fail(Errc::domain, "Lorentz index needs p > 1");
    const std::size_t n = fs.values.size();
    if (n == 0) fail(Errc::domain, "Lorentz norm of an empty step function");

    if (flavor == Flavor::quasi) {
        if (idx.q_infinite) {
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (fs.values[i] > 0.0) m = std::max(m, fs.values[i] * std::pow(fs.measures[i], 1.0 / p));
            return m;
        }
        double s = 0.0, prev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double T = fs.measures[i];
            if (fs.values[i] > 0.0) s += std::pow(fs.values[i], q) * (p / q) * (std::pow(T, q / p) - std::pow(prev, q / p));
            prev = T;
        }
        return std::pow(s, 1.0 / q);
    }

    // maximal: f**(t) = v_i + c_i / t on piece i, S/t past the total measure
    double S = 0.0, prev = 0.0;
    if (idx.q_infinite) {
        double m = 0.0;
        const double e = 1.0 / p;
        for (std::size_t i = 0; i < n; ++i) {
            double v = fs.values[i], T = fs.measures[i];
            double c = S - v * prev;
            auto g = [&](double t) { return v * std::pow(t, e) + c * std::pow(t, e - 1.0); };
            m = std::max(m, g(T));
            if (prev > 0.0) m = std::max(m, g(prev));
            if (v > 0.0 && c > 0.0) {
                double ts = c * (p - 1.0) / v;
                if (ts > prev && ts < T) m = std::max(m, g(ts));
            }
            S += v * (T - prev);
            prev = T;
        }
        if (prev > 0.0) m = std::max(m, S * std::pow(prev, e - 1.0));
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = fs.values[i], T = fs.measures[i];
        double c = S - v * prev;
        if (prev == 0.0) c = 0.0;
        if (v > 0.0 || c > 0.0) s += maximal_piece(prev > 0.0 ? prev : 0.0, T, v, c, p, q);
        S += v * (T - prev);
        prev = T;
    }
    if (S > 0.0) s += std::pow(S, q) * std::pow(prev, q / p - q) / (q - q / p);
    return std::pow(s, 1.0 / q);
}

double lorentz_norm(const SampledAnnulusField& f, LorentzIndex idx, Flavor flavor) {
    return lorentz_norm(decreasing_rearrangement(f), idx, flavor);
}

double lp_norm(const SampledAnnulusField& f, double p) {
    if (p == 2.0) return std::sqrt(kernels::weighted_sum_sq(f.values.data(), f.cell_areas.data(), f.values.size()));
    if (p == 1.0) return kernels::weighted_sum(f.values.data(), f.cell_areas.data(), f.values.size());
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += std::pow(std::fabs(f.values[i]), p) * f.cell_areas[i];
    return std::pow(s, 1.0 / p);
}

DualityCheck duality_pairing_check(const SampledAnnulusField& f, const SampledAnnulusField& g) {
    if (f.nr != g.nr || f.nt != g.nt || f.inner_radius != g.inner_radius || f.outer_radius != g.outer_radius)
        fail(Errc::shape, "duality check needs identical grids");
    DualityCheck d;
    d.lhs = std::fabs(kernels::weighted_dot(f.values.data(), g.values.data(), f.cell_areas.data(), f.values.size()));
    StepFunction fs = decreasing_rearrangement(f), gs = decreasing_rearrangement(g);
    d.rhs = lorentz_norm(fs, LorentzIndex::finite(2, 1), Flavor::quasi) *
            lorentz_norm(gs, LorentzIndex::weak(2), Flavor::quasi);
    d.rhs_maximal = lorentz_norm(fs, LorentzIndex::finite(2, 1), Flavor::maximal) *
                    lorentz_norm(gs, LorentzIndex::weak(2), Flavor::maximal);
    return d;
}

}  // namespace bw
