#pragma once

// Weierstrass representation phi = Re int ((1-g^2) w, i(1+g^2) w, 2 g w) of complete
// minimal surfaces of genus zero, with ends at finite points or at infinity.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bw/poly.hpp"

namespace bw {

using Vec3c = std::array<cplx, 3>;
using Vec3 = std::array<double, 3>;

struct EndPoint {
    bool infinity = false;
    cplx z{0.0, 0.0};

    static EndPoint at(cplx p) { return {false, p}; }
    static EndPoint inf() { return {true, {0.0, 0.0}}; }
    std::string str() const;
    bool operator==(const EndPoint& o) const { return infinity == o.infinity && (infinity || z == o.z); }
};

struct WeierstrassSurface {
    RationalMap g;
    RationalMap omega;  // omega = omega(z) dz
    std::vector<EndPoint> ends;
    std::string label;
    std::map<std::string, cplx> params;

    // The three holomorphic 1-form coefficients ((1-g^2) w, i(1+g^2) w, 2 g w).
    std::array<RationalMap, 3> forms() const;
    // Same forms written in the chart w = 1/z near infinity.
    std::array<RationalMap, 3> forms_at_infinity() const;
};

// Complex bilinear product (no conjugation).
cplx bilinear(const Vec3c& a, const Vec3c& b);
double norm(const Vec3c& a);

// Coefficient of (z-p)^{-1}; at infinity the residue of f(1/w)(-1/w^2) at w = 0.
cplx form_residue(const RationalMap& form, const EndPoint& p);
// (1/2 pi i) of the trapezoidal contour integral on a circle of radius rho around p
// (for infinity: the circle |w| = rho in the chart w = 1/z).
cplx contour_residue(const RationalMap& form, const EndPoint& p, double rho, int nodes = 4096);

struct EndReport {
    EndPoint end;
    int m = 0;  // pole order of phi
    int k = 0;  // gap to the next nonvanishing coefficient (0 when none in range)
    Vec3c A0{};
    Vec3c A1{};
    Vec3c residue{};  // residues of the three forms
    Vec3 flux{};
    bool log_term = false;           // nonzero residue: expansion carries a log term
    bool independence = false;       // A0, A1 linearly independent
    bool residue_applicable = true;  // the second-residue formula assumes a log-free expansion
    int second_residue = 0;          // r = max(m - k, 0)
    bool degenerate = false;         // A1 parallel to A0 with m - k > 0 (only when not thrown)
    cplx alpha0{0.0, 0.0};           // <conj A0, A1> / |A0|^2
    Vec3c h_coeff{};                 // m k (A1 - alpha0 A0)
    // Laurent coefficients of the antiderivative: F[e] multiplies t^e
    std::map<int, Vec3c> F;
};

// Expansion of phi at an end. Throws Errc::degenerate when A1 is parallel to A0 and
// m - k > 0 (or flags the report when throw_degenerate is false); Errc::geometry when
// the point is not a pole.
EndReport end_expand(const WeierstrassSurface& s, const EndPoint& end, int order = 12, bool throw_degenerate = true);

// (1/4 pi) Im of the integral of d phi = (1/2) f dz around the end, from residues.
Vec3 flux_vector(const WeierstrassSurface& s, const EndPoint& end);
// Same by contour quadrature; the radius shrinks automatically to avoid other poles.
Vec3 flux_by_contour(const WeierstrassSurface& s, const EndPoint& end, int nodes = 4096);

struct JorgeMeeks {
    int gauss_degree = 0;
    double total_curvature = 0.0;
};
JorgeMeeks jorge_meeks(int d, const std::vector<int>& multiplicities);

// max(deg num, deg den) of the reduced map; 0 for constant g.
int gauss_degree(const RationalMap& g);

// Max over the circle |z - center| = radius of |<f,f>| / sum |f_k|^2.
double conformality_check(const std::array<RationalMap, 3>& forms, cplx center, double radius, int nodes = 1024);
double conformality_check(const WeierstrassSurface& s, double radius, int nodes = 1024);

// Finite poles of the three forms, plus a flag for a pole at infinity.
struct PoleSet {
    std::vector<cplx> finite;
    bool at_infinity = false;
};
PoleSet form_poles(const WeierstrassSurface& s);
// Every pole lies among the declared ends.
bool poles_within_ends(const WeierstrassSurface& s, double tol = 1e-8);

}  // namespace bw
