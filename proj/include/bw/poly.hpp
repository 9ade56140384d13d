#pragma once

// Complex polynomials, rational maps and truncated Laurent series.

#include <complex>
#include <string>
#include <vector>

namespace bw {

using cplx = std::complex<double>;

struct Polynomial {
    std::vector<cplx> c;  // ascending degree

    Polynomial() = default;
    Polynomial(std::vector<cplx> coeffs) : c(std::move(coeffs)) { trim(); }
    static Polynomial constant(cplx a) { return Polynomial({a}); }
    static Polynomial monomial(int k, cplx a = 1.0);

    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return degree() < 0; }
    double norm1() const;
    cplx eval(cplx z) const;
    Polynomial derivative() const;
    // q(t) = p(a + t)
    Polynomial shifted(cplx a) const;
    // t^deg p(1/t)
    Polynomial reversed() const;
    // exact trailing-zero removal: returns k with p = z^k q
    int strip_z(Polynomial& q) const;
    void trim(double tol = 0.0);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(cplx s) const;
};

// Roots by companion-matrix eigenvalues, polished by Newton. Roots at 0 are exact.
std::vector<cplx> roots(const Polynomial& p);
// Synthetic division by (z - a); remainder returned through rem.
Polynomial divide_linear(const Polynomial& p, cplx a, cplx* rem = nullptr);

struct RationalMap {
    Polynomial num;
    Polynomial den{{1.0}};

    RationalMap() = default;
    RationalMap(Polynomial n, Polynomial d, bool reduce_now = true);
    static RationalMap from_poly(Polynomial n) { return RationalMap(std::move(n), Polynomial({1.0})); }

    // Removes common roots (approximate gcd, relative tolerance tol) and makes den monic.
    void reduce(double tol = 1e-12);
    cplx eval(cplx z) const;
    bool is_zero() const { return num.is_zero(); }
    std::vector<cplx> poles() const;

    RationalMap operator+(const RationalMap& o) const;
    RationalMap operator-(const RationalMap& o) const;
    RationalMap operator*(const RationalMap& o) const;
    RationalMap operator*(cplx s) const;

    // g(1/w) as a function of w
    RationalMap at_infinity_function() const;
    // f(1/w) (-1/w^2) for the 1-form f(z) dz
    RationalMap at_infinity_form() const;
};

// sum_{k=0}^{n-1} c[k] t^{lowest + k}
struct LaurentSeries {
    int lowest = 0;
    std::vector<cplx> c;

    cplx coeff(int e) const;
    int order(double tol) const;  // first exponent with |c| > tol, or INT_MAX
};

// Laurent expansion of f at t = 0 where f(z) = r(p + t); at least `terms` coefficients.
LaurentSeries laurent_at(const RationalMap& r, cplx p, int terms, double tol = 1e-13);

}  // namespace bw
