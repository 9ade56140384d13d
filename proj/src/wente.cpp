#include "bw/wente.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "bw/error.hpp"
#include "bw/fourier.hpp"
#include "bw/kernels.hpp"
#include "bw/lorentz.hpp"

namespace bw {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// Spectral angular derivative of each ring; Nyquist mode dropped.
std::vector<double> dtheta_rows(const WenteGrid& g, const std::vector<double>& v) {
    const int K = g.K;
    Fourier fft(K);
    std::vector<cplx> spec(K / 2 + 1);
    std::vector<double> out(v.size());
    for (int i = 0; i < g.rows(); ++i) {
        fft.r2c(v.data() + static_cast<std::size_t>(i) * K, spec.data());
        for (int k = 0; k <= K / 2; ++k) spec[k] *= (k == K / 2 && K % 2 == 0) ? cplx(0.0) : cplx(0.0, k / static_cast<double>(K));
        fft.c2r(spec.data(), out.data() + static_cast<std::size_t>(i) * K);
    }
    return out;
}

// sum_j (d_theta u)(d_theta v) on one ring, by Parseval with every mode kept.
double angular_product(Fourier& fft, const double* u, const double* v, int K,
                       std::vector<cplx>& su, std::vector<cplx>& sv) {
    fft.r2c(u, su.data());
    fft.r2c(v, sv.data());
    double s = 0.0;
    for (int k = 0; k <= K / 2; ++k) {
        double m = (k == 0 || (K % 2 == 0 && k == K / 2)) ? 1.0 : 2.0;
        s += m * k * k * (su[k] * std::conj(sv[k])).real();
    }
    return s / K;
}

void check_same_grid(const WenteGrid& a, const WenteGrid& b) {
    if (a.disk != b.disk || a.r != b.r || a.R != b.R || a.M != b.M || a.K != b.K)
        fail(Errc::shape, "fields live on different grids");
}

}  // namespace

WenteGrid WenteGrid::make_disk(double R, int M, int K) {
    if (!(R > 0.0) || M < 2 || K < 4 || K % 2 != 0) fail(Errc::domain, "disk grid needs R > 0, M >= 2, even K >= 4");
    WenteGrid g;
    g.disk = true;
    g.r = 0.0;
    g.R = R;
    g.M = M;
    g.K = K;
    return g;
}

WenteGrid WenteGrid::make_annulus(double r, double R, int M, int K) {
    if (!(r > 0.0) || !(r < R) || M < 2 || K < 4 || K % 2 != 0)
        fail(Errc::domain, "annulus grid needs 0 < r < R, M >= 2, even K >= 4");
    WenteGrid g;
    g.disk = false;
    g.r = r;
    g.R = R;
    g.M = M;
    g.K = K;
    return g;
}

double WenteGrid::h() const { return disk ? R / (M + 0.5) : std::log(R / r) / M; }

double WenteGrid::radius(int i) const {
    if (disk) return i == M ? R : (i + 0.5) * h();
    if (i == 0) return r;
    if (i == M) return R;
    return r * std::exp(i * h());
}

double WenteGrid::theta(int j) const { return 2.0 * kPi * j / K; }

double WenteGrid::weight(int i) const {
    const double dt = 2.0 * kPi / K, hh = h();
    if (disk) {
        if (i < M) return radius(i) * hh * dt;
        double a = R - 0.5 * hh;
        return 0.5 * dt * (R * R - a * a);
    }
    double rr = radius(i);
    double w = rr * rr * hh * dt;
    return (i == 0 || i == M) ? 0.5 * w : w;
}

std::vector<double> DiskField::boundary_trace() const {
    return std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(grid.M) * grid.K, values.end());
}

DiskField sample_disk_field(const WenteGrid& g, const std::function<double(double, double)>& f) {
    DiskField d;
    d.grid = g;
    d.values.resize(g.size());
    for (int i = 0; i <= g.M; ++i) {
        double rr = g.radius(i);
        for (int j = 0; j < g.K; ++j) {
            double t = g.theta(j);
            d.values[static_cast<std::size_t>(i) * g.K + j] = f(rr * std::cos(t), rr * std::sin(t));
        }
    }
    return d;
}

namespace {

// Centered radial derivative on interior rows (d/dr for the disk, d/ds for the annulus).
std::vector<double> dradial_interior(const WenteGrid& g, const std::vector<double>& v) {
    const int K = g.K;
    const double inv2h = 0.5 / g.h();
    std::vector<double> out(v.size(), 0.0);
    auto at = [&](int i, int j) { return v[static_cast<std::size_t>(i) * K + j]; };
    for (int i = 0; i < g.M; ++i) {
        if (!g.disk && i == 0) continue;
        for (int j = 0; j < K; ++j) {
            // the disk's row -1 sits at radius h/2 on the opposite ray
            double lower = (i == 0) ? at(0, (j + K / 2) % K) : at(i - 1, j);
            out[static_cast<std::size_t>(i) * K + j] = (at(i + 1, j) - lower) * inv2h;
        }
    }
    return out;
}

}  // namespace

std::vector<double> dtheta(const WenteGrid& g, const std::vector<double>& v) {
    if (v.size() != g.size()) fail(Errc::shape, "field does not match grid");
    return dtheta_rows(g, v);
}

std::vector<double> jacobian(const DiskField& a, const DiskField& b) {
    check_same_grid(a.grid, b.grid);
    const WenteGrid& g = a.grid;
    std::vector<double> ar = dradial_interior(g, a.values), br = dradial_interior(g, b.values);
    std::vector<double> at = dtheta_rows(g, a.values), bt = dtheta_rows(g, b.values);
    std::vector<double> f(g.size(), 0.0);
    for (int i = 0; i < g.M; ++i) {
        if (!g.disk && i == 0) continue;
        double rr = g.radius(i);
        double scale = g.disk ? 1.0 / rr : 1.0 / (rr * rr);
        for (int j = 0; j < g.K; ++j) {
            std::size_t p = static_cast<std::size_t>(i) * g.K + j;
            f[p] = (ar[p] * bt[p] - at[p] * br[p]) * scale;
        }
    }
    return f;
}

DiskField solve_poisson(const WenteGrid& g, const std::vector<double>& f) {
    if (f.size() != g.size()) fail(Errc::shape, "source does not match grid");
    const int K = g.K, M = g.M, H = K / 2 + 1;
    const double h = g.h();
    Fourier fft(K);
    // spectra of the right-hand side rows, scaled to the tridiagonal form
    std::vector<cplx> rhs(static_cast<std::size_t>(M + 1) * H, 0.0);
    std::vector<cplx> tmp(H);
    int first = g.disk ? 0 : 1;
    for (int i = first; i < M; ++i) {
        fft.r2c(f.data() + static_cast<std::size_t>(i) * K, tmp.data());
        double rr = g.radius(i);
        double s = g.disk ? rr * h * h : rr * rr * h * h;
        for (int k = 0; k < H; ++k) rhs[static_cast<std::size_t>(i) * H + k] = tmp[k] * s;
    }
    std::vector<cplx> sol(static_cast<std::size_t>(M + 1) * H, 0.0);
    std::vector<double> lo(M + 1), di(M + 1), up(M + 1);
    std::vector<cplx> cp(M + 1), dp(M + 1);
    for (int k = 0; k < H; ++k) {
        const double k2 = static_cast<double>(k) * k;
        for (int i = first; i < M; ++i) {
            if (g.disk) {
                double rm = i * h, rp = (i + 1) * h, rr = g.radius(i);
                lo[i] = rm;
                up[i] = rp;
                di[i] = -(rm + rp + k2 * h * h / rr);
            } else {
                lo[i] = 1.0;
                up[i] = 1.0;
                di[i] = -(2.0 + k2 * h * h);
            }
        }
        // Thomas on rows first..M-1; U_{first-1} = 0 (annulus) and U_M = 0
        for (int i = first; i < M; ++i) {
            cplx b = rhs[static_cast<std::size_t>(i) * H + k];
            double denom = di[i] - (i > first ? lo[i] * cp[i - 1].real() : 0.0);
            cp[i] = up[i] / denom;
            dp[i] = (b - (i > first ? lo[i] * dp[i - 1] : cplx(0.0))) / denom;
        }
        cplx next = 0.0;
        for (int i = M - 1; i >= first; --i) {
            cplx x = dp[i] - cp[i].real() * next;
            sol[static_cast<std::size_t>(i) * H + k] = x;
            next = x;
        }
    }
    DiskField u;
    u.grid = g;
    u.values.assign(g.size(), 0.0);
    for (int i = first; i < M; ++i) {
        fft.c2r(sol.data() + static_cast<std::size_t>(i) * H, u.values.data() + static_cast<std::size_t>(i) * K);
        for (int j = 0; j < K; ++j) u.values[static_cast<std::size_t>(i) * K + j] /= K;
    }
    return u;
}

std::vector<double> discrete_laplacian(const DiskField& u) {
    const WenteGrid& g = u.grid;
    const int K = g.K, M = g.M;
    const double h = g.h();
    Fourier fft(K);
    std::vector<cplx> spec(K / 2 + 1);
    std::vector<double> tt(K), out(g.size(), 0.0);
    auto at = [&](int i, int j) { return u.values[static_cast<std::size_t>(i) * K + j]; };
    int first = g.disk ? 0 : 1;
    for (int i = first; i < M; ++i) {
        fft.r2c(u.values.data() + static_cast<std::size_t>(i) * K, spec.data());
        for (int k = 0; k <= K / 2; ++k) spec[k] *= -static_cast<double>(k) * k / K;
        fft.c2r(spec.data(), tt.data());
        double rr = g.radius(i);
        for (int j = 0; j < K; ++j) {
            double lap;
            if (g.disk) {
                double rm = i * h, rp = (i + 1) * h;
                double below = i > 0 ? at(i - 1, j) : 0.0;
                lap = (rp * (at(i + 1, j) - at(i, j)) - rm * (at(i, j) - below)) / (rr * h * h) + tt[j] / (rr * rr);
            } else {
                lap = ((at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / (h * h) + tt[j]) / (rr * rr);
            }
            out[static_cast<std::size_t>(i) * K + j] = lap;
        }
    }
    return out;
}

double dirichlet_product(const DiskField& u, const DiskField& v) {
    check_same_grid(u.grid, v.grid);
    const WenteGrid& g = u.grid;
    const int K = g.K, M = g.M;
    const double h = g.h(), dt = 2.0 * kPi / K;
    auto U = [&](int i, int j) { return u.values[static_cast<std::size_t>(i) * K + j]; };
    auto V = [&](int i, int j) { return v.values[static_cast<std::size_t>(i) * K + j]; };
    double radial = 0.0;
    for (int i = 0; i < M; ++i) {
        double face = g.disk ? (i + 1) * h : 1.0;
        // the disk's last face sits between r_{M-1} and R, a distance h apart
        double s = 0.0;
        for (int j = 0; j < K; ++j) s += (U(i + 1, j) - U(i, j)) * (V(i + 1, j) - V(i, j));
        radial += face * dt * s / h;
    }
    Fourier fft(K);
    std::vector<cplx> su(K / 2 + 1), sv(K / 2 + 1);
    double angular = 0.0;
    for (int i = 0; i <= M; ++i) {
        double wr;
        if (g.disk) {
            double rr = g.radius(i);
            wr = (i < M ? h : 0.5 * h) / rr;
        } else {
            wr = (i == 0 || i == M) ? 0.5 * h : h;
        }
        angular += wr * dt * angular_product(fft, u.values.data() + static_cast<std::size_t>(i) * K,
                                             v.values.data() + static_cast<std::size_t>(i) * K, K, su, sv);
    }
    return radial + angular;
}

double dirichlet_energy(const DiskField& u) { return dirichlet_product(u, u); }

double grid_integral(const WenteGrid& g, const std::vector<double>& f, const std::vector<double>& w) {
    std::vector<double> wt(g.size());
    for (int i = 0; i <= g.M; ++i) std::fill_n(wt.begin() + static_cast<std::ptrdiff_t>(i) * g.K, g.K, g.weight(i));
    std::vector<double> prod(g.size());
    for (std::size_t p = 0; p < prod.size(); ++p) prod[p] = f[p] * w[p];
    return kernels::weighted_sum(prod.data(), wt.data(), prod.size());
}

std::vector<double> grad_abs(const DiskField& u) {
    const WenteGrid& g = u.grid;
    const int K = g.K, M = g.M;
    const double h = g.h();
    std::vector<double> dr = dradial_interior(g, u.values);
    auto at = [&](int i, int j) { return u.values[static_cast<std::size_t>(i) * K + j]; };
    for (int j = 0; j < K; ++j) {
        dr[static_cast<std::size_t>(M) * K + j] = (at(M, j) - at(M - 1, j)) / h;
        if (!g.disk) dr[static_cast<std::size_t>(j)] = (at(1, j) - at(0, j)) / h;
    }
    std::vector<double> dt = dtheta_rows(g, u.values);
    std::vector<double> out(g.size());
    for (int i = 0; i <= M; ++i) {
        double rr = g.radius(i);
        for (int j = 0; j < K; ++j) {
            std::size_t p = static_cast<std::size_t>(i) * K + j;
            out[p] = g.disk ? std::hypot(dr[p], dt[p] / rr) : std::hypot(dr[p], dt[p]) / rr;
        }
    }
    return out;
}

double WenteResult::sup_ratio() const {
    double d = grad_a * grad_b;
    return d > 0.0 ? sup / d : 0.0;
}

double WenteResult::dirichlet_ratio() const {
    double d = grad_a * grad_b;
    return d > 0.0 ? grad_l2 / d : 0.0;
}

double wente_sup_constant() { return 1.0 / (2.0 * kPi); }
double wente_dirichlet_constant() { return 0.25 * std::sqrt(3.0 / kPi); }

WenteResult wente_solve(const DiskField& a, const DiskField& b) {
    check_same_grid(a.grid, b.grid);
    const WenteGrid& g = a.grid;
    WenteResult res;
    res.u = solve_poisson(g, jacobian(a, b));
    for (double v : res.u.values)
        if (!std::isfinite(v)) fail(Errc::solver, "non-finite value in the Wente solve");
    res.sup = kernels::max_abs(res.u.values.data(), res.u.values.size());
    res.grad_l2 = std::sqrt(std::max(0.0, dirichlet_energy(res.u)));
    res.grad_a = std::sqrt(std::max(0.0, dirichlet_energy(a)));
    res.grad_b = std::sqrt(std::max(0.0, dirichlet_energy(b)));
    std::vector<double> ga = grad_abs(res.u);
    std::vector<double> wt(g.size());
    for (int i = 0; i <= g.M; ++i) std::fill_n(wt.begin() + static_cast<std::ptrdiff_t>(i) * g.K, g.K, g.weight(i));
    StepFunction fs = decreasing_rearrangement(ga.data(), wt.data(), ga.size());
    res.grad_l21 = lorentz_norm(fs, LorentzIndex::finite(2, 1), Flavor::maximal);
    return res;
}

WenteSweep wente_constant_sweep(int seeds, const WenteGrid& g, std::uint64_t seed) {
    if (seeds < 1) fail(Errc::domain, "sweep needs at least one seed");
    WenteSweep out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int s = 0; s < seeds; ++s) {
        double ca[15], cb[15];
        for (double& c : ca) c = nd(rng);
        for (double& c : cb) c = nd(rng);
        auto poly = [](const double* c) {
            return [c](double x, double y) {
                double v = 0.0;
                int idx = 0;
                for (int d = 0; d <= 4; ++d)
                    for (int i = 0; i <= d; ++i) v += c[idx++] * std::pow(x, i) * std::pow(y, d - i);
                return v;
            };
        };
        DiskField a = sample_disk_field(g, poly(ca));
        DiskField b = sample_disk_field(g, poly(cb));
        WenteResult r = wente_solve(a, b);
        out.max_sup_ratio = std::max(out.max_sup_ratio, r.sup_ratio());
        out.max_dirichlet_ratio = std::max(out.max_dirichlet_ratio, r.dirichlet_ratio());
        ++out.samples;
    }
    return out;
}

std::pair<DiskField, DiskField> concentrated_pair(const WenteGrid& g, double delta) {
    auto f = [delta](double x, double y) { return 1.0 / std::sqrt(x * x + y * y + delta * delta); };
    DiskField a = sample_disk_field(g, [&](double x, double y) { return x * f(x, y); });
    DiskField b = sample_disk_field(g, [&](double x, double y) { return y * f(x, y); });
    return {a, b};
}

double concentrated_pair_sup_ratio(double delta) {
    double d2 = delta * delta;
    double L = 0.5 * std::log((1.0 + d2) / d2);
    double I = 0.25 * (1.0 - d2 * d2 / ((1.0 + d2) * (1.0 + d2)));
    return (0.5 * L) / (kPi * (L + I));
}

}  // namespace bw
