#include "bw/distrib.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bw/error.hpp"
#include "bw/kernels.hpp"

namespace bw {

namespace {

constexpr double kPi = std::numbers::pi;

double re_bilinear(const Vec3c& a, const Vec3c& b) { return bilinear(a, b).real(); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

void BranchModel::validate() const {
    if (theta0 < 2) fail(Errc::invalid, "branch order must be at least 2");
    if (m < 1 || m > theta0 - 1) fail(Errc::invalid, "need 1 <= m <= theta0 - 1");
    double a = norm(A0);
    if (a == 0.0 || std::abs(bilinear(A0, A0)) > 1e-10 * a * a) fail(Errc::invalid, "A0 must be a nonzero null vector");
}

double boundary_pairing(const BranchModel& model, const TestVariation& w, double eps, int nodes) {
    model.validate();
    if (!(eps > 0.0 && eps < 1.0)) fail(Errc::domain, "eps must lie in (0, 1)");
    if (nodes < 4096) fail(Errc::precondition, "at least 4096 quadrature nodes");
    const int m = model.m;
    double blow = norm(model.C0) * std::pow(eps, -m);
    if (!std::isfinite(blow) || blow > 1e150) fail(Errc::scale, "C0 / eps^m overflows");

    const double le = std::log(eps);
    std::vector<double> integrand(nodes), weights(nodes, 2.0 * kPi * eps / nodes);
    for (int j = 0; j < nodes; ++j) {
        double t = 2.0 * kPi * j / nodes;
        cplx zm = std::polar(std::pow(eps, m), m * t);  // z^m
        cplx zmi = 1.0 / zm;
        double s = 0.0;
        for (int a = 0; a < 3; ++a) {
            double H = (model.C0[a] * zmi).real() - model.gamma0[a] * le;
            double dH = (-static_cast<double>(m) * model.C0[a] * zmi).real() / eps - model.gamma0[a] / eps;
            double wv = w.w0[a] + (w.gamma[a] * zm).real() + (w.eta[a] * eps * eps * zm).real();
            double dw = (static_cast<double>(m) * w.gamma[a] * zm).real() / eps +
                        (static_cast<double>(m + 2) * w.eta[a] * eps * eps * zm).real() / eps;
            s += dw * H - wv * dH;
        }
        integrand[j] = s;
    }
    return -kernels::weighted_sum(integrand.data(), weights.data(), integrand.size());
}

double stated_residue(const BranchModel& model, const TestVariation& w) {
    return 2.0 * kPi * model.m * re_bilinear(w.gamma, model.C0) - 2.0 * kPi * dot(w.w0, model.gamma0);
}

double exact_pairing_limit(const BranchModel& model, const TestVariation& w) {
    return -2.0 * kPi * model.m * re_bilinear(w.gamma, model.C0) - 2.0 * kPi * dot(w.w0, model.gamma0);
}

ResidueLimit residue_limit(const BranchModel& model, const TestVariation& w, const std::vector<double>& eps) {
    if (eps.size() < 4) fail(Errc::precondition, "need at least 4 eps values");
    for (std::size_t i = 1; i < eps.size(); ++i)
        if (!(eps[i] < eps[i - 1])) fail(Errc::precondition, "eps sequence must be strictly decreasing");
    ResidueLimit out;
    for (double e : eps) out.values.push_back(boundary_pairing(model, w, e));
    const std::size_t n = eps.size();
    double a = eps[n - 2] * eps[n - 2], b = eps[n - 1] * eps[n - 1];
    out.limit = (out.values[n - 1] * a - out.values[n - 2] * b) / (a - b);

    double d1 = out.values[n - 3] - out.values[n - 2];
    double d2 = out.values[n - 2] - out.values[n - 1];
    double scale = 0.0;
    for (double v : out.values) scale = std::max(scale, std::abs(v));
    double noise = 1e-13 * std::max(scale, 1.0);
    if (std::abs(d2) <= noise || std::abs(d1) <= noise)
        out.rate = std::numeric_limits<double>::infinity();
    else
        out.rate = std::log(std::abs(d1 / d2)) / std::log(eps[n - 3] / eps[n - 2]);
    return out;
}

bool smoothness_criterion(int theta0, int r, const Vec3& gamma0) {
    if (theta0 < 1) fail(Errc::invalid, "branch order must be positive");
    if (r < 0 || r > theta0 - 1) fail(Errc::invalid, "second residue must lie in [0, theta0 - 1]");
    return r == 0 && gamma0[0] == 0.0 && gamma0[1] == 0.0 && gamma0[2] == 0.0;
}

}  // namespace bw
