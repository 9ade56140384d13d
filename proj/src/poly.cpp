#include "bw/poly.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include <Eigen/Dense>

#include "bw/error.hpp"

namespace bw {

Polynomial Polynomial::monomial(int k, cplx a) {
    std::vector<cplx> c(k + 1, 0.0);
    c[k] = a;
    return Polynomial(std::move(c));
}

int Polynomial::degree() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
        if (c[k] != cplx(0.0)) return k;
    return -1;
}

double Polynomial::norm1() const {
    double s = 0.0;
    for (const cplx& a : c) s += std::abs(a);
    return s;
}

cplx Polynomial::eval(cplx z) const {
    cplx s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * z + c[k];
    return s;
}

Polynomial Polynomial::derivative() const {
    if (c.size() <= 1) return Polynomial();
    std::vector<cplx> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(cplx a) const {
    // p(a + t): repeated synthetic division by (z - a) yields the Taylor coefficients
    if (a == cplx(0.0) || c.empty()) return *this;
    std::vector<cplx> out, cur = c;
    out.reserve(c.size());
    while (!cur.empty()) {
        cplx rem = 0.0;
        std::vector<cplx> q(cur.size() - 1, 0.0);
        for (int j = static_cast<int>(cur.size()) - 1; j >= 0; --j) {
            rem = rem * a + cur[j];
            if (j > 0) q[j - 1] = rem;
        }
        out.push_back(rem);
        cur = std::move(q);
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::reversed() const {
    int d = degree();
    if (d < 0) return Polynomial();
    std::vector<cplx> r(d + 1);
    for (int k = 0; k <= d; ++k) r[k] = c[d - k];
    return Polynomial(std::move(r));
}

int Polynomial::strip_z(Polynomial& q) const {
    int d = degree();
    if (d < 0) {
        q = Polynomial();
        return 0;
    }
    int k = 0;
    while (k <= d && c[k] == cplx(0.0)) ++k;
    q = Polynomial(std::vector<cplx>(c.begin() + k, c.begin() + d + 1));
    return k;
}

void Polynomial::trim(double tol) {
    double scale = tol > 0.0 ? tol * norm1() : 0.0;
    for (cplx& a : c)
        if (std::abs(a) <= scale) a = 0.0;
    while (!c.empty() && c.back() == cplx(0.0)) c.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<cplx> r(std::max(c.size(), o.c.size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) r[k] += c[k];
    for (std::size_t k = 0; k < o.c.size(); ++k) r[k] += o.c[k];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * cplx(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c.empty() || o.c.empty()) return Polynomial();
    std::vector<cplx> r(c.size() + o.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(cplx s) const {
    std::vector<cplx> r = c;
    for (cplx& a : r) a *= s;
    return Polynomial(std::move(r));
}

Polynomial divide_linear(const Polynomial& p, cplx a, cplx* rem) {
    int d = p.degree();
    if (d < 1) {
        if (rem) *rem = d < 0 ? cplx(0.0) : p.c[0];
        return Polynomial();
    }
    std::vector<cplx> q(d, 0.0);
    cplx acc = 0.0;
    for (int j = d; j >= 0; --j) {
        acc = acc * a + p.c[j];
        if (j > 0) q[j - 1] = acc;
    }
    if (rem) *rem = acc;
    return Polynomial(std::move(q));
}

std::vector<cplx> roots(const Polynomial& p) {
    Polynomial q;
    int k0 = p.strip_z(q);
    std::vector<cplx> out(k0, cplx(0.0));
    int n = q.degree();
    if (n <= 0) return out;
    if (n == 1) {
        out.push_back(-q.c[0] / q.c[1]);
        return out;
    }
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -q.c[i] / q.c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    Polynomial dq = q.derivative();
    for (int i = 0; i < n; ++i) {
        cplx z = es.eigenvalues()[i];
        for (int it = 0; it < 4; ++it) {
            cplx d = dq.eval(z);
            if (std::abs(d) < 1e-300) break;
            cplx step = q.eval(z) / d;
            if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-3 * (1.0 + std::abs(z))) break;
            z -= step;
        }
        out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

RationalMap::RationalMap(Polynomial n, Polynomial d, bool reduce_now) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) fail(Errc::invalid, "rational map with zero denominator");
    if (reduce_now) reduce();
}

void RationalMap::reduce(double tol) {
    num.trim(1e-15);
    den.trim(1e-15);
    if (den.is_zero()) fail(Errc::invalid, "rational map with zero denominator");
    if (num.is_zero()) {
        den = Polynomial({1.0});
        return;
    }
    auto strip_common = [this] {
        Polynomial nq, dq;
        int kn = num.strip_z(nq), kd = den.strip_z(dq);
        int common = std::min(kn, kd);
        num = nq * Polynomial::monomial(kn - common);
        den = dq * Polynomial::monomial(kd - common);
    };
    strip_common();
    bool changed = true;
    while (changed && den.degree() > 0 && num.degree() > 0) {
        changed = false;
        for (cplx rt : roots(den)) {
            if (rt == cplx(0.0)) continue;
            double scale = 0.0, ar = std::abs(rt);
            for (std::size_t k = 0; k < num.c.size(); ++k) scale += std::abs(num.c[k]) * std::pow(ar, static_cast<double>(k));
            if (std::abs(num.eval(rt)) <= tol * scale) {
                num = divide_linear(num, rt);
                den = divide_linear(den, rt);
                // division leaves rounding residue where exact cancellation happened
                num.trim(1e-14);
                den.trim(1e-14);
                strip_common();
                changed = true;
                break;
            }
        }
    }
    cplx lead = den.c[den.degree()];
    num = num * (1.0 / lead);
    den = den * (1.0 / lead);
}

cplx RationalMap::eval(cplx z) const { return num.eval(z) / den.eval(z); }

std::vector<cplx> RationalMap::poles() const { return roots(den); }

RationalMap RationalMap::operator+(const RationalMap& o) const {
    return RationalMap(num * o.den + o.num * den, den * o.den);
}
RationalMap RationalMap::operator-(const RationalMap& o) const {
    return RationalMap(num * o.den - o.num * den, den * o.den);
}
RationalMap RationalMap::operator*(const RationalMap& o) const {
    return RationalMap(num * o.num, den * o.den);
}
RationalMap RationalMap::operator*(cplx s) const {
    RationalMap r = *this;
    r.num = r.num * s;
    r.reduce();
    return r;
}

RationalMap RationalMap::at_infinity_function() const {
    int n = num.degree(), d = den.degree();
    if (n < 0) return *this;
    Polynomial nr = num.reversed(), dr = den.reversed();
    if (d >= n) return RationalMap(nr * Polynomial::monomial(d - n), dr);
    return RationalMap(nr, dr * Polynomial::monomial(n - d));
}

RationalMap RationalMap::at_infinity_form() const {
    int n = num.degree(), d = den.degree();
    if (n < 0) return *this;
    Polynomial nr = num.reversed() * cplx(-1.0), dr = den.reversed();
    int e = d - n - 2;
    if (e >= 0) return RationalMap(nr * Polynomial::monomial(e), dr);
    return RationalMap(nr, dr * Polynomial::monomial(-e));
}

cplx LaurentSeries::coeff(int e) const {
    int k = e - lowest;
    if (k < 0 || k >= static_cast<int>(c.size())) return 0.0;
    return c[k];
}

int LaurentSeries::order(double tol) const {
    for (std::size_t k = 0; k < c.size(); ++k)
        if (std::abs(c[k]) > tol) return lowest + static_cast<int>(k);
    return INT_MAX;
}

LaurentSeries laurent_at(const RationalMap& r, cplx p, int terms, double tol) {
    LaurentSeries s;
    if (r.num.is_zero()) {
        s.lowest = 0;
        s.c.assign(terms, 0.0);
        return s;
    }
    Polynomial N = r.num.shifted(p), D = r.den.shifted(p);
    auto valuation = [tol](const Polynomial& P) {
        double sc = tol * P.norm1();
        int v = 0;
        while (v <= P.degree() && std::abs(P.c[v]) <= sc) ++v;
        return v;
    };
    int u = valuation(N), v = valuation(D);
    std::vector<cplx> n(terms, 0.0), d(terms, 0.0);
    for (int k = 0; k < terms; ++k) {
        if (u + k <= N.degree()) n[k] = N.c[u + k];
        if (v + k <= D.degree()) d[k] = D.c[v + k];
    }
    s.lowest = u - v;
    s.c.assign(terms, 0.0);
    for (int k = 0; k < terms; ++k) {
        cplx acc = n[k];
        for (int j = 1; j <= k; ++j) acc -= d[j] * s.c[k - j];
        s.c[k] = acc / d[0];
    }
    return s;
}

}  // namespace bw
