#pragma once

// Wente problem  Lap u = grad a . grad^perp b = a_x b_y - a_y b_x,  u = 0 on the boundary,
// on a disk or an annulus. Fourier in theta, second-order finite volumes in r
// (disk) or log r (annulus), one tridiagonal solve per mode.

#include <functional>
#include <random>
#include <vector>

namespace bw {

// Rows i = 0..M, K angular nodes theta_j = 2 pi j / K.
// disk:    r_i = (i + 1/2) h with h = R / (M + 1/2), so row M is the boundary circle.
// annulus: r_i = r (R/r)^{i/M}, rows 0 and M are the two boundary circles.
struct WenteGrid {
    bool disk = true;
    double r = 0.0;
    double R = 1.0;
    int M = 128;
    int K = 256;

    static WenteGrid make_disk(double R, int M, int K);
    static WenteGrid make_annulus(double r, double R, int M, int K);

    double h() const;  // radial step (in r for the disk, in log r for the annulus)
    double radius(int i) const;
    double theta(int j) const;
    int rows() const { return M + 1; }
    std::size_t size() const { return static_cast<std::size_t>(M + 1) * K; }
    // area weight of the node (i, j)
    double weight(int i) const;
};

struct DiskField {
    WenteGrid grid;
    std::vector<double> values;  // rows() * K, row-major by ring

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.K + j]; }
    std::vector<double> boundary_trace() const;  // outer ring
};

DiskField sample_disk_field(const WenteGrid& g, const std::function<double(double x, double y)>& f);

// Discrete Jacobian a_x b_y - a_y b_x on interior rows (boundary rows are 0):
// centered differences in the radial variable, spectral differences in theta.
std::vector<double> jacobian(const DiskField& a, const DiskField& b);

// Solve Lap u = f with zero Dirichlet data; f given on all rows, boundary rows ignored.
DiskField solve_poisson(const WenteGrid& g, const std::vector<double>& f);

// Apply the discrete Laplacian used by the solver (interior rows; boundary rows 0).
std::vector<double> discrete_laplacian(const DiskField& u);

// Discrete Dirichlet energy int |grad u|^2: radial face differences plus a spectral
// angular part, consistent with the solver's Laplacian.
double dirichlet_energy(const DiskField& u);
// Discrete Dirichlet inner product int grad u . grad v.
double dirichlet_product(const DiskField& u, const DiskField& v);
// Quadrature of int f g over the domain with the node weights.
double grid_integral(const WenteGrid& g, const std::vector<double>& f, const std::vector<double>& w);

// Spectral d/dtheta of every ring (Nyquist mode dropped).
std::vector<double> dtheta(const WenteGrid& g, const std::vector<double>& v);

// Node-wise |grad u|.
std::vector<double> grad_abs(const DiskField& u);

struct WenteResult {
    DiskField u;
    double sup = 0.0;
    double grad_l2 = 0.0;
    double grad_l21 = 0.0;  // maximal flavour
    double grad_a = 0.0;    // ||grad a||_2
    double grad_b = 0.0;
    double sup_ratio() const;
    double dirichlet_ratio() const;
};

WenteResult wente_solve(const DiskField& a, const DiskField& b);

double wente_sup_constant();        // 1 / (2 pi)
double wente_dirichlet_constant();  // (1/4) sqrt(3/pi)

struct WenteSweep {
    double max_sup_ratio = 0.0;
    double max_dirichlet_ratio = 0.0;
    int samples = 0;
};

// Random polynomial pairs of total degree <= 4 on the unit disk.
WenteSweep wente_constant_sweep(int seeds, const WenteGrid& g, std::uint64_t seed = 42);

// a = f cos(theta), b = f sin(theta), f = rho / sqrt(rho^2 + delta^2): concentrates
// toward the degree-one extremal pair as delta -> 0.
std::pair<DiskField, DiskField> concentrated_pair(const WenteGrid& g, double delta);
// Exact sup ratio of the concentrated pair on the unit disk.
double concentrated_pair_sup_ratio(double delta);

}  // namespace bw
