#pragma once

// Boundary integrals on small circles around a branch point, whose eps -> 0 limits give
// the Dirac-mass coefficients of the distributional Willmore equation.
//
// Duality convention: for complex 3-vectors, <a, b> is the bilinear sum a_i b_i and the
// pairing against a real field takes its real part. Example in one component: with
// H = Re(c / z) and w = Re(g z), the circle average of H w is Re(c g) / 2.

#include <vector>

#include "bw/weierstrass.hpp"

namespace bw {

struct BranchModel {
    int theta0 = 2;
    int m = 1;          // pole order of the mean curvature, 1 <= m <= theta0 - 1
    Vec3c C0{};         // H = Re(C0 / z^m) - gamma0 log|z|
    Vec3 gamma0{};      // first residue
    Vec3c A0{1.0, cplx(0.0, 1.0), 0.0};

    void validate() const;
};

// w = w0 + Re(gamma z^m) + Re(eta |z|^2 z^m)
struct TestVariation {
    Vec3 w0{};
    Vec3c gamma{};
    Vec3c eta{};
};

// -int_{|z| = eps} (<d_nu w, H> - <w, d_nu H>) with nu = z/|z|, trapezoidal rule.
double boundary_pairing(const BranchModel& model, const TestVariation& w, double eps, int nodes = 4096);

// 2 pi m Re<gamma, C0> - 2 pi <w0, gamma0>: the limit as stated for the distributional residue.
double stated_residue(const BranchModel& model, const TestVariation& w);
// Exact eps -> 0 limit of boundary_pairing for the model fields.
double exact_pairing_limit(const BranchModel& model, const TestVariation& w);

struct ResidueLimit {
    double limit = 0.0;
    double rate = 0.0;  // observed order; +inf when the sequence is constant to rounding
    std::vector<double> values;
};

// Richardson extrapolation (order 2) of the last two values; the rate is measured from
// the last three successive differences.
ResidueLimit residue_limit(const BranchModel& model, const TestVariation& w, const std::vector<double>& eps);

// Smooth iff gamma0 = 0 and r = 0.
bool smoothness_criterion(int theta0, int r, const Vec3& gamma0);

}  // namespace bw
