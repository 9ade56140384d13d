#pragma once

// Harmonic and holomorphic fields on annuli given by finite Laurent series,
// and numerical harnesses for the annulus estimates and Schwarz-type envelopes.
//
// Harmonic convention (real valued):
//   u = Re a_0 + d log|z| + 2 Re sum_{n != 0} a_n z^n
// which is a_0 + d log rho + sum_{n != 0} (a_n rho^n + conj(a_{-n}) rho^{-n}) e^{in theta}.
// Then d_z u = d/(2z) + sum n a_n z^{n-1}, |grad u| = 2|d_z u|, |grad^2 u| = 4|d_z^2 u|.
// Holomorphic convention: u = sum a_n z^n, d = 0.

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "bw/lorentz.hpp"

namespace bw {

using cplx = std::complex<double>;

struct Annulus {
    double r = 0.0;
    double R = 1.0;
    cplx center{0.0, 0.0};

    Annulus() = default;
    Annulus(double r_, double R_, cplx c = {0.0, 0.0});
    double area() const;
};

struct LaurentField {
    static constexpr int kMaxTruncation = 64;

    std::map<int, cplx> coeffs;
    double log_coefficient = 0.0;
    bool holomorphic = false;

    static LaurentField harmonic(std::map<int, cplx> a, double d = 0.0);
    static LaurentField holo(std::map<int, cplx> a);

    int truncation() const;  // max |n| with a stored coefficient
    void check_truncation(int limit = kMaxTruncation) const;

    // harmonic: real value in .real(); holomorphic: complex value
    cplx value(cplx z) const;
    cplx dz(cplx z) const;   // d_z u (harmonic) or u' (holomorphic)
    cplx dzz(cplx z) const;  // d_z^2 u or u''
    double grad_abs(cplx z) const;
};

struct GridSpec {
    int nr = 512;
    int nt = 1024;
};

// Pointwise samples on the log-polar grid of an annulus, via one inverse FFT
// per ring. nt must exceed the mode span of the field.
std::vector<double> value_samples(const LaurentField& u, const LogPolarGrid& g);
std::vector<double> grad_abs_samples(const LaurentField& u, const LogPolarGrid& g);
std::vector<double> hess_abs_samples(const LaurentField& u, const LogPolarGrid& g);

double flux_integral(const LaurentField& u, double radius, const Annulus& a);
double flux_by_quadrature(const LaurentField& u, double radius, int nodes = 4096);

// ||grad u||_{L^2(a)} from the exact series.
double grad_l2_norm(const LaurentField& u, const Annulus& a);

struct BoundCheck {
    double lhs = 0.0;
    double bound = 0.0;
    double ratio() const { return bound > 0.0 ? lhs / bound : 0.0; }
};

double shrink_l21_constant(double alpha);      // 32 sqrt(2/15) alpha/(1-alpha)
double shrink_hessian_constant(double alpha);  // 32 sqrt(pi/15) alpha/(1-alpha)

BoundCheck verify_shrink_l21(const LaurentField& u, const Annulus& a, double alpha, GridSpec grid = {});
BoundCheck verify_hessian_l1(const LaurentField& u, const Annulus& a, double alpha, GridSpec grid = {});
// ||grad u||_2(shrunk) / ||grad u||_{2,inf}(full), maximal flavour.
double verify_l2_from_weak(const LaurentField& u, const Annulus& a, double alpha, GridSpec grid = {});

// Radial average: exact for Laurent fields (keeps a_0 and d).
LaurentField radial_average(const LaurentField& u);
// Ring means of grid samples, broadcast back over each ring.
std::vector<double> radial_average_samples(const std::vector<double>& values, const LogPolarGrid& g);

struct OscillationCheck {
    double osc = 0.0;   // sup |u - mean_Omega u|
    double norm = 0.0;  // ||grad u||_{2,1}, maximal flavour
    double ratio() const { return norm > 0.0 ? osc / norm : 0.0; }
};
OscillationCheck oscillation_bound_check(const LaurentField& u, const Annulus& a, GridSpec grid = {});

// Sup of |u| over a circle sampled at `nodes` uniformly spaced angles 2 pi j / nodes.
double boundary_sup(const LaurentField& u, cplx center, double radius, int nodes = 4096);

struct SchwarzResult {
    double worst_slack = 0.0;
    cplx worst_point{0.0, 0.0};
    double inner_sup = 0.0;
    double outer_sup = 0.0;
};

struct SchwarzGrid {
    int nr = 256;
    int nt = 256;
};

SchwarzResult schwarz_envelope(const LaurentField& u, const Annulus& a, double delta, SchwarzGrid grid = {});

// Holomorphic on B_R minus disks: sum_{n>=0} c_n z^n + sum_j sum_{n>=1} b_{j,n} (z - a_j)^{-n}.
struct MultiPoleField {
    std::vector<cplx> regular;
    struct Pole {
        cplx center;
        std::vector<cplx> coeffs;  // coeffs[k] multiplies (z - a)^{-(k+1)}
    };
    std::vector<Pole> poles;

    cplx value(cplx z) const;
    void values(const std::vector<double>& zr, const std::vector<double>& zi,
                std::vector<double>& outr, std::vector<double>& outi) const;
};

struct Disk {
    cplx center;
    double radius;
    double delta;
};

double multi_envelope_bound(cplx z, const std::vector<Disk>& disks, double R, double outer_sup);
SchwarzResult schwarz_envelope_multi(const MultiPoleField& u, const std::vector<Disk>& disks, double R,
                                     int cart_n = 240);
void check_multi_disks(const std::vector<Disk>& disks, double R);

// Random draws. Coefficients are complex Gaussian scaled by 2^{-|n|} and by
// the relevant boundary radius so every mode is O(1) on its own boundary.
LaurentField random_harmonic(std::mt19937_64& rng, int N, const Annulus& a, bool zero_flux = true);
LaurentField random_holomorphic(std::mt19937_64& rng, int N, const Annulus& a);

}  // namespace bw
