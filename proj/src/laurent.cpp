#include "bw/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bw/error.hpp"
#include "bw/fourier.hpp"
#include "bw/kernels.hpp"

namespace bw {

namespace {
constexpr double kPi = std::numbers::pi;
}

Annulus::Annulus(double r_, double R_, cplx c) : r(r_), R(R_), center(c) {
    if (!(r_ > 0.0) || !(r_ < R_)) fail(Errc::domain, "annulus needs 0 < r < R");
}

double Annulus::area() const { return kPi * (R * R - r * r); }

LaurentField LaurentField::harmonic(std::map<int, cplx> a, double d) {
    LaurentField u;
    u.coeffs = std::move(a);
    u.log_coefficient = d;
    u.holomorphic = false;
    return u;
}

LaurentField LaurentField::holo(std::map<int, cplx> a) {
    LaurentField u;
    u.coeffs = std::move(a);
    u.holomorphic = true;
    return u;
}

int LaurentField::truncation() const {
    int t = 0;
    for (const auto& [n, c] : coeffs) t = std::max(t, std::abs(n));
    return t;
}

void LaurentField::check_truncation(int limit) const {
    if (truncation() > limit)
        fail(Errc::precondition, "Laurent field truncation " + std::to_string(truncation()) +
                                     " exceeds the limit " + std::to_string(limit));
}

cplx LaurentField::value(cplx z) const {
    if (holomorphic) {
        cplx s = 0.0;
        for (const auto& [n, a] : coeffs) s += a * std::pow(z, n);
        return s;
    }
    double s = log_coefficient * std::log(std::abs(z));
    for (const auto& [n, a] : coeffs) {
        if (n == 0) s += a.real();
        else s += 2.0 * (a * std::pow(z, n)).real();
    }
    return s;
}

cplx LaurentField::dz(cplx z) const {
    cplx s = holomorphic ? cplx(0.0) : log_coefficient / (2.0 * z);
    for (const auto& [n, a] : coeffs)
        if (n != 0) s += static_cast<double>(n) * a * std::pow(z, n - 1);
    return s;
}

cplx LaurentField::dzz(cplx z) const {
    cplx s = holomorphic ? cplx(0.0) : -log_coefficient / (2.0 * z * z);
    for (const auto& [n, a] : coeffs)
        if (n != 0 && n != 1) s += static_cast<double>(n) * (n - 1) * a * std::pow(z, n - 2);
    return s;
}

double LaurentField::grad_abs(cplx z) const {
    return holomorphic ? std::abs(dz(z)) : 2.0 * std::abs(dz(z));
}

namespace {

// Values of the order-th z-derivative of the series part on every ring.
// Harmonic fields: series part is sum_{n != 0} a_n z^n plus the d log term's
// derivatives; holomorphic: the full series.
void ring_series(const LaurentField& u, const LogPolarGrid& g, int order,
                 const std::function<void(int ring, const cplx* vals)>& emit) {
    const int K = g.nt;
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (const auto& [n, a] : u.coeffs) {
        lo = std::min(lo, n - order);
        hi = std::max(hi, n - order);
    }
    if (!u.holomorphic && order > 0) {
        lo = std::min(lo, -order);
        hi = std::max(hi, -order);
    }
    if (lo <= hi && hi - lo + 1 > K)
        fail(Errc::precondition, "angular resolution too small for the field's mode span");

    Fourier fft(K);
    std::vector<cplx> buf(K), out(K);
    const double half = 0.5 * g.dtheta();
    for (int i = 0; i < g.nr; ++i) {
        const double rho = g.radius(i);
        std::fill(buf.begin(), buf.end(), cplx(0.0));
        for (const auto& [n, a] : u.coeffs) {
            if (!u.holomorphic && n == 0) continue;
            double fall = 1.0;
            for (int j = 0; j < order; ++j) fall *= (n - j);
            if (fall == 0.0) continue;
            int k = n - order;
            cplx c = fall * a * std::pow(rho, k) * std::polar(1.0, k * half);
            buf[mode_index(k, K)] += c;
        }
        if (!u.holomorphic && order > 0 && u.log_coefficient != 0.0) {
            // d/dz (d log|z|) = d/(2z); d^2/dz^2 = -d/(2 z^2)
            int k = -order;
            double c = (order == 1 ? 0.5 : -0.5) * u.log_coefficient * std::pow(rho, k);
            if (order > 2) fail(Errc::precondition, "derivative order above 2 not supported");
            buf[mode_index(k, K)] += c * std::polar(1.0, k * half);
        }
        fft.backward(buf.data(), out.data());
        emit(i, out.data());
    }
}

}  // namespace

std::vector<double> value_samples(const LaurentField& u, const LogPolarGrid& g) {
    std::vector<double> v(g.size());
    double a0 = 0.0;
    if (!u.holomorphic) {
        auto it = u.coeffs.find(0);
        if (it != u.coeffs.end()) a0 = it->second.real();
    }
    ring_series(u, g, 0, [&](int i, const cplx* vals) {
        double base = a0 + (u.holomorphic ? 0.0 : u.log_coefficient * std::log(g.radius(i)));
        double* row = v.data() + static_cast<std::size_t>(i) * g.nt;
        for (int j = 0; j < g.nt; ++j) row[j] = u.holomorphic ? std::abs(vals[j]) : base + 2.0 * vals[j].real();
    });
    return v;
}

std::vector<double> grad_abs_samples(const LaurentField& u, const LogPolarGrid& g) {
    std::vector<double> v(g.size());
    const double scale = u.holomorphic ? 1.0 : 2.0;
    ring_series(u, g, 1, [&](int i, const cplx* vals) {
        kernels::abs_scaled(vals, scale, v.data() + static_cast<std::size_t>(i) * g.nt, g.nt);
    });
    return v;
}

std::vector<double> hess_abs_samples(const LaurentField& u, const LogPolarGrid& g) {
    std::vector<double> v(g.size());
    const double scale = u.holomorphic ? 1.0 : 4.0;
    ring_series(u, g, 2, [&](int i, const cplx* vals) {
        kernels::abs_scaled(vals, scale, v.data() + static_cast<std::size_t>(i) * g.nt, g.nt);
    });
    return v;
}

double flux_integral(const LaurentField& u, double radius, const Annulus& a) {
    if (!(radius >= a.r && radius <= a.R)) fail(Errc::domain, "flux radius outside the annulus");
    return u.holomorphic ? 0.0 : 2.0 * kPi * u.log_coefficient;
}

double flux_by_quadrature(const LaurentField& u, double radius, int nodes) {
    if (u.holomorphic) fail(Errc::precondition, "flux quadrature needs a harmonic field");
    double s = 0.0;
    for (int j = 0; j < nodes; ++j) {
        double t = 2.0 * kPi * j / nodes;
        cplx e = std::polar(1.0, t);
        double drho = 2.0 * (e * u.dz(radius * e)).real();
        s += drho;
    }
    return s * radius * 2.0 * kPi / nodes;
}

double grad_l2_norm(const LaurentField& u, const Annulus& a) {
    double s = 0.0;
    for (const auto& [n, c] : u.coeffs) {
        if (n == 0) continue;
        double tR = std::abs(c) * std::pow(a.R, n), tr = std::abs(c) * std::pow(a.r, n);
        s += std::abs(n) * std::fabs(tR * tR - tr * tr);
    }
    // harmonic: 4 pi sum |n||a_n|^2 |R^{2n} - r^{2n}| + 2 pi d^2 log(R/r)
    // holomorphic: |grad u|^2 = 2|u'|^2 gives 2 pi sum ...
    if (u.holomorphic) return std::sqrt(2.0 * kPi * s);
    s = 4.0 * kPi * s + 2.0 * kPi * u.log_coefficient * u.log_coefficient * std::log(a.R / a.r);
    return std::sqrt(s);
}

double shrink_l21_constant(double alpha) { return 32.0 * std::sqrt(2.0 / 15.0) * alpha / (1.0 - alpha); }
double shrink_hessian_constant(double alpha) { return 32.0 * std::sqrt(kPi / 15.0) * alpha / (1.0 - alpha); }

namespace {

void check_shrink_pre(const LaurentField& u, const Annulus& a, double alpha, double alpha_max) {
    if (u.holomorphic) fail(Errc::precondition, "annulus lemma needs a harmonic field");
    if (u.log_coefficient != 0.0) fail(Errc::precondition, "annulus lemma needs zero flux (d = 0)");
    if (!(4.0 * a.r < a.R)) fail(Errc::precondition, "annulus lemma needs 4r < R");
    if (!(std::sqrt(a.r / a.R) < alpha && alpha < alpha_max))
        fail(Errc::precondition, "annulus lemma needs sqrt(r/R) < alpha < " + std::to_string(alpha_max));
    u.check_truncation();
}

}  // namespace

BoundCheck verify_shrink_l21(const LaurentField& u, const Annulus& a, double alpha, GridSpec grid) {
    check_shrink_pre(u, a, alpha, 1.0);
    LogPolarGrid g(a.r / alpha, alpha * a.R, grid.nr, grid.nt);
    SampledAnnulusField f = field_from_values(g, grad_abs_samples(u, g));
    BoundCheck b;
    b.lhs = lorentz_norm(f, LorentzIndex::finite(2, 1), Flavor::maximal);
    b.bound = shrink_l21_constant(alpha) * grad_l2_norm(u, a);
    return b;
}

BoundCheck verify_hessian_l1(const LaurentField& u, const Annulus& a, double alpha, GridSpec grid) {
    check_shrink_pre(u, a, alpha, 1.0);
    LogPolarGrid g(a.r / alpha, alpha * a.R, grid.nr, grid.nt);
    SampledAnnulusField f = field_from_values(g, hess_abs_samples(u, g));
    BoundCheck b;
    b.lhs = lp_norm(f, 1.0);
    b.bound = shrink_hessian_constant(alpha) * grad_l2_norm(u, a);
    return b;
}

double verify_l2_from_weak(const LaurentField& u, const Annulus& a, double alpha, GridSpec grid) {
    check_shrink_pre(u, a, alpha, 0.5);
    LogPolarGrid g(a.r, a.R, grid.nr, grid.nt);
    SampledAnnulusField f = field_from_values(g, grad_abs_samples(u, g));
    double weak = lorentz_norm(f, LorentzIndex::weak(2), Flavor::maximal);
    double l2 = grad_l2_norm(u, Annulus(a.r / alpha, alpha * a.R));
    return weak > 0.0 ? l2 / weak : 0.0;
}

LaurentField radial_average(const LaurentField& u) {
    LaurentField v = u;
    v.coeffs.clear();
    auto it = u.coeffs.find(0);
    if (it != u.coeffs.end()) v.coeffs[0] = u.holomorphic ? it->second : cplx(it->second.real(), 0.0);
    return v;
}

std::vector<double> radial_average_samples(const std::vector<double>& values, const LogPolarGrid& g) {
    if (values.size() != g.size()) fail(Errc::shape, "value array does not match grid");
    std::vector<double> out(values.size());
    for (int i = 0; i < g.nr; ++i) {
        const double* row = values.data() + static_cast<std::size_t>(i) * g.nt;
        double s = 0.0;
        for (int j = 0; j < g.nt; ++j) s += row[j];
        std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(i) * g.nt, g.nt, s / g.nt);
    }
    return out;
}

OscillationCheck oscillation_bound_check(const LaurentField& u, const Annulus& a, GridSpec grid) {
    if (!(0.0 < 2.0 * a.r && 2.0 * a.r < a.R)) fail(Errc::precondition, "oscillation check needs 0 < 2r < R");
    if (u.holomorphic) fail(Errc::precondition, "oscillation check needs a real harmonic field");
    LogPolarGrid g(a.r, a.R, grid.nr, grid.nt);
    std::vector<double> v = value_samples(u, g);
    std::vector<double> w(g.size());
    for (int i = 0; i < g.nr; ++i) std::fill_n(w.begin() + static_cast<std::ptrdiff_t>(i) * g.nt, g.nt, g.ring_area(i));
    double mean = kernels::weighted_sum(v.data(), w.data(), v.size()) / a.area();
    for (double& x : v) x -= mean;
    OscillationCheck o;
    o.osc = kernels::max_abs(v.data(), v.size());
    SampledAnnulusField f = field_from_values(g, grad_abs_samples(u, g));
    o.norm = lorentz_norm(f, LorentzIndex::finite(2, 1), Flavor::maximal);
    return o;
}

namespace {

// Holomorphic Laurent evaluation at many points: P(z) + Q(1/z) by Horner.
void holo_values(const LaurentField& u, const std::vector<double>& zr, const std::vector<double>& zi,
                 std::vector<double>& outr, std::vector<double>& outi) {
    const std::size_t n = zr.size();
    int top = 0, bot = 0;
    for (const auto& [k, a] : u.coeffs) {
        top = std::max(top, k);
        bot = std::max(bot, -k);
    }
    std::vector<cplx> pos(top + 1, 0.0), neg(bot + 1, 0.0);
    for (const auto& [k, a] : u.coeffs) {
        if (k >= 0) pos[k] += a;
        else neg[-k] += a;
    }
    outr.assign(n, 0.0);
    outi.assign(n, 0.0);
    kernels::horner(pos.data(), pos.size(), zr.data(), zi.data(), outr.data(), outi.data(), n);
    if (bot > 0) {
        std::vector<double> wr(n), wi(n), qr(n), qi(n);
        for (std::size_t p = 0; p < n; ++p) {
            cplx w = 1.0 / cplx(zr[p], zi[p]);
            wr[p] = w.real();
            wi[p] = w.imag();
        }
        kernels::horner(neg.data(), neg.size(), wr.data(), wi.data(), qr.data(), qi.data(), n);
        for (std::size_t p = 0; p < n; ++p) {
            outr[p] += qr[p];
            outi[p] += qi[p];
        }
    }
}

void circle_points(cplx c, double rho, int nodes, std::vector<double>& zr, std::vector<double>& zi) {
    zr.resize(nodes);
    zi.resize(nodes);
    for (int j = 0; j < nodes; ++j) {
        cplx z = c + std::polar(rho, 2.0 * kPi * j / nodes);
        zr[j] = z.real();
        zi[j] = z.imag();
    }
}

double sup_abs(const std::vector<double>& re, const std::vector<double>& im) {
    double m = 0.0;
    for (std::size_t p = 0; p < re.size(); ++p) m = std::max(m, std::hypot(re[p], im[p]));
    return m;
}

}  // namespace

double boundary_sup(const LaurentField& u, cplx center, double radius, int nodes) {
    std::vector<double> zr, zi, vr, vi;
    circle_points(center, radius, nodes, zr, zi);
    if (u.holomorphic) {
        holo_values(u, zr, zi, vr, vi);
        return sup_abs(vr, vi);
    }
    double m = 0.0;
    for (int j = 0; j < nodes; ++j) m = std::max(m, std::abs(u.value(cplx(zr[j], zi[j]))));
    return m;
}

SchwarzResult schwarz_envelope(const LaurentField& u, const Annulus& a, double delta, SchwarzGrid grid) {
    if (!u.holomorphic) fail(Errc::precondition, "Schwarz envelope needs a holomorphic field");
    if (!(4.0 * a.r < a.R)) fail(Errc::precondition, "Schwarz envelope needs 4r < R");
    if (4096 % grid.nt != 0) fail(Errc::precondition, "angular grid must divide the 4096 boundary nodes");
    SchwarzResult res;
    res.inner_sup = boundary_sup(u, 0.0, a.r);
    res.outer_sup = boundary_sup(u, 0.0, a.R);
    if (res.inner_sup > delta * (1.0 + 1e-12) + 1e-300)
        fail(Errc::precondition, "inner boundary sup " + std::to_string(res.inner_sup) + " exceeds delta " +
                                     std::to_string(delta));
    std::vector<double> zr, zi, vr, vi;
    zr.reserve(static_cast<std::size_t>(grid.nr) * grid.nt);
    zi.reserve(zr.capacity());
    for (int i = 0; i < grid.nr; ++i) {
        double rho = a.r * std::pow(a.R / a.r, grid.nr == 1 ? 0.0 : static_cast<double>(i) / (grid.nr - 1));
        if (i == grid.nr - 1) rho = a.R;
        for (int j = 0; j < grid.nt; ++j) {
            cplx z = std::polar(rho, 2.0 * kPi * j / grid.nt);
            zr.push_back(z.real());
            zi.push_back(z.imag());
        }
    }
    holo_values(u, zr, zi, vr, vi);
    const double slope = 5.0 / a.R * (res.outer_sup + delta);
    res.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < zr.size(); ++p) {
        double az = std::hypot(zr[p], zi[p]);
        double slack = slope * az + 2.0 * delta - std::hypot(vr[p], vi[p]);
        if (slack < res.worst_slack) {
            res.worst_slack = slack;
            res.worst_point = cplx(zr[p], zi[p]);
        }
    }
    return res;
}

cplx MultiPoleField::value(cplx z) const {
    cplx s = 0.0;
    for (std::size_t k = regular.size(); k-- > 0;) s = s * z + regular[k];
    for (const auto& p : poles) {
        cplx w = 1.0 / (z - p.center), t = 0.0;
        for (std::size_t k = p.coeffs.size(); k-- > 0;) t = (t + p.coeffs[k]) * w;
        s += t;
    }
    return s;
}

void MultiPoleField::values(const std::vector<double>& zr, const std::vector<double>& zi,
                            std::vector<double>& outr, std::vector<double>& outi) const {
    const std::size_t n = zr.size();
    outr.assign(n, 0.0);
    outi.assign(n, 0.0);
    if (!regular.empty())
        kernels::horner(regular.data(), regular.size(), zr.data(), zi.data(), outr.data(), outi.data(), n);
    std::vector<double> wr(n), wi(n), qr(n), qi(n);
    for (const auto& p : poles) {
        std::vector<cplx> c(p.coeffs.size() + 1, 0.0);
        for (std::size_t k = 0; k < p.coeffs.size(); ++k) c[k + 1] = p.coeffs[k];
        for (std::size_t q = 0; q < n; ++q) {
            cplx w = 1.0 / (cplx(zr[q], zi[q]) - p.center);
            wr[q] = w.real();
            wi[q] = w.imag();
        }
        kernels::horner(c.data(), c.size(), wr.data(), wi.data(), qr.data(), qi.data(), n);
        for (std::size_t q = 0; q < n; ++q) {
            outr[q] += qr[q];
            outi[q] += qi[q];
        }
    }
}

void check_multi_disks(const std::vector<Disk>& disks, double R) {
    if (disks.empty()) fail(Errc::precondition, "multi-disk envelope needs at least one disk");
    for (std::size_t j = 0; j < disks.size(); ++j) {
        const Disk& d = disks[j];
        if (!(d.radius > 0.0) || !(std::abs(d.center) + d.radius < R))
            fail(Errc::precondition, "disk " + std::to_string(j) + " is not contained in B_R");
        if (!(4.0 * d.radius < R - std::abs(d.center)))
            fail(Errc::precondition, "disk " + std::to_string(j) + " violates 4 r_j < R - |a_j|");
        for (std::size_t k = j + 1; k < disks.size(); ++k)
            if (!(std::abs(d.center - disks[k].center) > d.radius + disks[k].radius))
                fail(Errc::precondition, "disks " + std::to_string(j) + " and " + std::to_string(k) + " overlap");
    }
}

double multi_envelope_bound(cplx z, const std::vector<Disk>& disks, double R, double outer_sup) {
    const std::size_t m = disks.size();
    double D = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            if (j != k) D = std::max(D, std::abs(disks[k].center - disks[j].center) + disks[j].radius);
    double s = 0.0;
    for (const Disk& d : disks) {
        double c = 5.0 / (R - std::abs(d.center)) * (outer_sup / m + 2.0 * d.delta);
        s += c * (std::abs(z - d.center) + D) + 4.0 * d.delta;
    }
    return s;
}

SchwarzResult schwarz_envelope_multi(const MultiPoleField& u, const std::vector<Disk>& disks, double R, int cart_n) {
    check_multi_disks(disks, R);
    SchwarzResult res;
    std::vector<double> zr, zi, vr, vi;
    circle_points(0.0, R, 4096, zr, zi);
    u.values(zr, zi, vr, vi);
    res.outer_sup = sup_abs(vr, vi);
    for (std::size_t j = 0; j < disks.size(); ++j) {
        circle_points(disks[j].center, disks[j].radius, 4096, zr, zi);
        u.values(zr, zi, vr, vi);
        double s = sup_abs(vr, vi);
        res.inner_sup = std::max(res.inner_sup, s);
        if (s > disks[j].delta * (1.0 + 1e-12) + 1e-300)
            fail(Errc::precondition, "boundary sup on disk " + std::to_string(j) + " exceeds its delta");
    }

    auto inside = [&](cplx z) {
        for (const Disk& d : disks) {
            double dist = std::abs(z - d.center);
            if (dist >= R - std::abs(d.center) || dist < d.radius) return false;
        }
        return true;
    };
    zr.clear();
    zi.clear();
    for (int a = 0; a < cart_n; ++a)
        for (int b = 0; b < cart_n; ++b) {
            cplx z(-R + (a + 0.5) * 2.0 * R / cart_n, -R + (b + 0.5) * 2.0 * R / cart_n);
            if (inside(z)) {
                zr.push_back(z.real());
                zi.push_back(z.imag());
            }
        }
    // refine around each hole, including its boundary circle
    for (const Disk& d : disks)
        for (int i = 0; i < 48; ++i) {
            double rho = d.radius * std::pow(4.0, i / 47.0);
            for (int j = 0; j < 256; ++j) {
                cplx z = d.center + std::polar(rho, 2.0 * kPi * j / 256);
                if (i == 0 || inside(z)) {
                    if (i == 0) {
                        bool ok = true;
                        for (const Disk& e : disks)
                            if (&e != &d && (std::abs(z - e.center) >= R - std::abs(e.center) ||
                                             std::abs(z - e.center) < e.radius))
                                ok = false;
                        if (std::abs(z - d.center) >= R - std::abs(d.center)) ok = false;
                        if (!ok) continue;
                    }
                    zr.push_back(z.real());
                    zi.push_back(z.imag());
                }
            }
        }
    u.values(zr, zi, vr, vi);
    res.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < zr.size(); ++p) {
        cplx z(zr[p], zi[p]);
        double slack = multi_envelope_bound(z, disks, R, res.outer_sup) - std::hypot(vr[p], vi[p]);
        if (slack < res.worst_slack) {
            res.worst_slack = slack;
            res.worst_point = z;
        }
    }
    return res;
}

namespace {
cplx gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    double a = nd(rng);
    double b = nd(rng);
    return {a, b};
}
}  // namespace

LaurentField random_harmonic(std::mt19937_64& rng, int N, const Annulus& a, bool zero_flux) {
    std::map<int, cplx> c;
    c[0] = cplx(gaussian(rng).real(), 0.0);
    for (int n = 1; n <= N; ++n) {
        double s = std::ldexp(1.0, -n);
        c[n] = gaussian(rng) * s * std::pow(a.R, -n);
        c[-n] = gaussian(rng) * s * std::pow(a.r, n);
    }
    double d = zero_flux ? 0.0 : gaussian(rng).real();
    return LaurentField::harmonic(std::move(c), d);
}

LaurentField random_holomorphic(std::mt19937_64& rng, int N, const Annulus& a) {
    std::map<int, cplx> c;
    c[0] = gaussian(rng);
    for (int n = 1; n <= N; ++n) {
        double s = std::ldexp(1.0, -n);
        c[n] = gaussian(rng) * s * std::pow(a.R, -n);
        c[-n] = gaussian(rng) * s * std::pow(a.r, n);
    }
    return LaurentField::holo(std::move(c));
}

}  // namespace bw
