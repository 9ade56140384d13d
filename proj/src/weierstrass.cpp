#include "bw/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Dense>

#include "bw/error.hpp"

namespace bw {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I1{0.0, 1.0};

Vec3c scaled(const Vec3c& a, cplx s) { return {a[0] * s, a[1] * s, a[2] * s}; }

double vnorm(const Vec3c& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2])); }

// The three forms in the chart where the end sits at t = 0, plus the base point.
std::array<RationalMap, 3> chart_forms(const WeierstrassSurface& s, const EndPoint& e, cplx& base) {
    if (e.infinity) {
        base = 0.0;
        return s.forms_at_infinity();
    }
    base = e.z;
    return s.forms();
}

std::vector<cplx> chart_poles(const std::array<RationalMap, 3>& f) {
    std::vector<cplx> out;
    for (const auto& r : f)
        for (cplx p : r.poles()) out.push_back(p);
    return out;
}

}  // namespace

std::string EndPoint::str() const {
    if (infinity) return "inf";
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.6g,%.6g)", z.real(), z.imag());
    return buf;
}

std::array<RationalMap, 3> WeierstrassSurface::forms() const {
    RationalMap one = RationalMap::from_poly(Polynomial({1.0}));
    RationalMap g2 = g * g;
    return {(one - g2) * omega, (one + g2) * omega * I1, g * omega * cplx(2.0)};
}

std::array<RationalMap, 3> WeierstrassSurface::forms_at_infinity() const {
    auto f = forms();
    return {f[0].at_infinity_form(), f[1].at_infinity_form(), f[2].at_infinity_form()};
}

cplx bilinear(const Vec3c& a, const Vec3c& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3c& a) { return vnorm(a); }

cplx form_residue(const RationalMap& form, const EndPoint& p) {
    RationalMap f = p.infinity ? form.at_infinity_form() : form;
    cplx base = p.infinity ? cplx(0.0) : p.z;
    if (f.is_zero()) return 0.0;
    LaurentSeries s = laurent_at(f, base, 2);
    if (s.lowest > -1) return 0.0;
    s = laurent_at(f, base, -s.lowest + 1);
    return s.coeff(-1);
}

cplx contour_residue(const RationalMap& form, const EndPoint& p, double rho, int nodes) {
    RationalMap f = p.infinity ? form.at_infinity_form() : form;
    cplx base = p.infinity ? cplx(0.0) : p.z;
    cplx acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        cplx e = std::polar(rho, 2.0 * kPi * j / nodes);
        acc += f.eval(base + e) * e;
    }
    return acc / static_cast<double>(nodes);
}

EndReport end_expand(const WeierstrassSurface& s, const EndPoint& end, int order, bool throw_degenerate) {
    if (std::find(s.ends.begin(), s.ends.end(), end) == s.ends.end())
        fail(Errc::precondition, "end " + end.str() + " is not among the surface ends");
    cplx base;
    auto f = chart_forms(s, end, base);

    int lowest = 0;
    for (const auto& r : f)
        if (!r.is_zero()) lowest = std::min(lowest, laurent_at(r, base, 1).lowest);
    int terms = std::max(order, -2 * lowest + 4);

    EndReport rep;
    rep.end = end;
    std::array<LaurentSeries, 3> ser;
    for (int a = 0; a < 3; ++a) {
        if (f[a].is_zero()) {
            ser[a].lowest = lowest;
            ser[a].c.assign(terms, 0.0);
        } else {
            ser[a] = laurent_at(f[a], base, terms);
        }
        rep.residue[a] = ser[a].coeff(-1);
    }
    // F = antiderivative; exponent e of F comes from exponent e-1 of f
    int emax = lowest + terms;
    double scale = 0.0;
    for (int e = lowest + 1; e <= emax; ++e) {
        if (e == 0) continue;
        Vec3c v;
        for (int a = 0; a < 3; ++a) v[a] = ser[a].coeff(e - 1) / static_cast<double>(e);
        rep.F[e] = v;
        if (e <= -lowest) scale = std::max(scale, vnorm(v));
    }
    double tol = 1e-11 * std::max(scale, 1e-300);
    for (int a = 0; a < 3; ++a)
        rep.flux[a] = rep.residue[a].real() / 4.0;
    rep.log_term = vnorm(rep.residue) > tol;

    rep.m = 0;
    for (const auto& [e, v] : rep.F)
        if (e < 0 && vnorm(v) > tol) {
            rep.m = -e;
            rep.A0 = v;
            break;
        }
    if (rep.m == 0) fail(Errc::geometry, "no pole of the immersion at end " + end.str());

    rep.k = 0;
    for (int e = -rep.m + 1; e <= rep.m; ++e) {
        if (e == 0) continue;
        auto it = rep.F.find(e);
        if (it == rep.F.end()) break;
        if (vnorm(it->second) > tol) {
            rep.A1 = it->second;
            rep.k = e + rep.m;
            break;
        }
    }

    double a0 = vnorm(rep.A0);
    cplx num = std::conj(rep.A0[0]) * rep.A1[0] + std::conj(rep.A0[1]) * rep.A1[1] + std::conj(rep.A0[2]) * rep.A1[2];
    rep.alpha0 = num / (a0 * a0);
    Vec3c diff;
    for (int a = 0; a < 3; ++a) diff[a] = rep.A1[a] - rep.alpha0 * rep.A0[a];
    rep.h_coeff = scaled(diff, static_cast<double>(rep.m * rep.k));

    Eigen::Matrix<cplx, 2, 3> stack;
    for (int a = 0; a < 3; ++a) {
        stack(0, a) = rep.A0[a];
        stack(1, a) = rep.A1[a];
    }
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 2, 3>> svd(stack);
    rep.independence = rep.k > 0 && svd.singularValues()(1) > 1e-8 * a0;

    rep.second_residue = std::max(rep.m - rep.k, 0);
    if (rep.k == 0) rep.second_residue = rep.m;
    rep.residue_applicable = !rep.log_term;
    rep.degenerate = !rep.independence && rep.residue_applicable && rep.m - rep.k > 0;
    if (rep.degenerate && throw_degenerate)
        fail(Errc::degenerate, "degenerate expansion at end " + end.str() + ": A1 is parallel to A0");
    return rep;
}

Vec3 flux_vector(const WeierstrassSurface& s, const EndPoint& end) {
    auto f = s.forms();
    Vec3 out;
    for (int a = 0; a < 3; ++a) out[a] = form_residue(f[a], end).real() / 4.0;
    return out;
}

Vec3 flux_by_contour(const WeierstrassSurface& s, const EndPoint& end, int nodes) {
    cplx base;
    auto f = chart_forms(s, end, base);
    double dist = 1.0;
    for (cplx p : chart_poles(f)) {
        double d = std::abs(p - base);
        if (d > 1e-9 * (1.0 + std::abs(base))) dist = std::min(dist, 0.5 * d);
    }
    if (!(dist > 1e-8)) fail(Errc::geometry, "no admissible contour around end " + end.str());
    Vec3 out;
    for (int a = 0; a < 3; ++a) {
        cplx acc = 0.0;
        for (int j = 0; j < nodes; ++j) {
            cplx e = std::polar(dist, 2.0 * kPi * j / nodes);
            acc += f[a].eval(base + e) * e;
        }
        out[a] = (acc / static_cast<double>(nodes)).real() / 4.0;
    }
    return out;
}

JorgeMeeks jorge_meeks(int d, const std::vector<int>& ms) {
    if (d < 1 || static_cast<int>(ms.size()) != d)
        fail(Errc::invalid, "need d >= 1 ends with one multiplicity each");
    int sum = 0;
    for (int m : ms) {
        if (m < 1) fail(Errc::invalid, "end multiplicities must be positive");
        sum += m + 1;
    }
    if (sum % 2 != 0) fail(Errc::invalid, "sum of (m_j + 1) must be even");
    JorgeMeeks r;
    r.gauss_degree = -1 + sum / 2;
    r.total_curvature = -4.0 * kPi * r.gauss_degree;
    return r;
}

int gauss_degree(const RationalMap& g) {
    RationalMap r = g;
    r.reduce();
    return std::max(std::max(r.num.degree(), 0), r.den.degree());
}

double conformality_check(const std::array<RationalMap, 3>& forms, cplx center, double radius, int nodes) {
    double worst = 0.0;
    for (int j = 0; j < nodes; ++j) {
        cplx z = center + std::polar(radius, 2.0 * kPi * j / nodes);
        Vec3c v{forms[0].eval(z), forms[1].eval(z), forms[2].eval(z)};
        double den = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
        if (den == 0.0) continue;
        worst = std::max(worst, std::abs(bilinear(v, v)) / den);
    }
    return worst;
}

double conformality_check(const WeierstrassSurface& s, double radius, int nodes) {
    return conformality_check(s.forms(), 0.0, radius, nodes);
}

PoleSet form_poles(const WeierstrassSurface& s) {
    PoleSet out;
    auto f = s.forms();
    for (const auto& r : f)
        for (cplx p : r.poles()) {
            bool dup = false;
            for (cplx q : out.finite) dup = dup || std::abs(p - q) < 1e-9 * (1.0 + std::abs(p));
            if (!dup) out.finite.push_back(p);
        }
    for (const auto& r : s.forms_at_infinity())
        if (!r.is_zero() && laurent_at(r, 0.0, 1).lowest < 0) out.at_infinity = true;
    return out;
}

bool poles_within_ends(const WeierstrassSurface& s, double tol) {
    PoleSet ps = form_poles(s);
    bool inf_end = std::any_of(s.ends.begin(), s.ends.end(), [](const EndPoint& e) { return e.infinity; });
    if (ps.at_infinity && !inf_end) return false;
    for (cplx p : ps.finite) {
        bool hit = false;
        for (const auto& e : s.ends)
            if (!e.infinity && std::abs(e.z - p) <= tol * (1.0 + std::abs(p))) hit = true;
        if (!hit) return false;
    }
    return true;
}

}  // namespace bw
