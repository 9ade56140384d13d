#pragma once

// Conformal factor on annuli: lambda = mu + nu with mu the Wente part of the frame
// Jacobian (zero on both boundary circles) and nu harmonic; the flux of nu is an integer.

#include <cstdint>
#include <string>
#include <vector>

#include "bw/weierstrass.hpp"
#include "bw/wente.hpp"

namespace bw {

// Nodal log-polar sample on r <= |z - center| <= R (WenteGrid annulus layout).
struct ConformalImmersionSample {
    WenteGrid grid;
    cplx center{0.0, 0.0};
    std::string label;
    std::vector<Vec3> position;  // may be empty for samples built from derivatives
    std::vector<Vec3> phi_x, phi_y;
    std::vector<double> lambda;  // e^lambda = |grad phi| / sqrt 2
    std::vector<Vec3> e1, e2, normal;
    double conformality_residual = 0.0;  // max |<phi_z, phi_z>| e^{-2 lambda}

    std::size_t size() const { return grid.size(); }
};

// Derivatives by finite differences: second order in log r, spectral in theta.
ConformalImmersionSample sample_from_positions(const WenteGrid& g, std::vector<Vec3> pos, cplx center = 0.0,
                                               std::string label = "");
// From log-polar derivatives phi_s = r phi_r and phi_theta given at every node.
ConformalImmersionSample sample_from_derivatives(const WenteGrid& g, const std::vector<Vec3>& phi_s,
                                                 const std::vector<Vec3>& phi_t, cplx center = 0.0,
                                                 std::string label = "");

// (Re z^t, Im z^t, 0)
ConformalImmersionSample monomial_sheet(int theta0, double rmin, double R, int M, int K);
// (Re z^t, Im z^t, eps Re z^{t+1})
ConformalImmersionSample perturbed_graph(int theta0, double eps, double rmin, double R, int M, int K);
// inverse stereographic projection onto the unit sphere
ConformalImmersionSample sphere_patch(double rmin, double R, int M, int K);
// minimal immersion from Weierstrass data g = small random cubic, omega = dz (a graph)
ConformalImmersionSample random_minimal_graph(std::uint64_t seed, double rmin, double R, int M, int K);
// CSV rows r,theta,x,y,z on a full nodal log-polar grid (any row order).
ConformalImmersionSample load_sample_csv(const std::string& path);

struct NeckDecomposition {
    DiskField mu;
    std::vector<double> nu;
    double d = 0.0;  // (1/2 pi) flux of nu at the measuring row
    int measure_row = 0;
    int degree = 0;  // nearest integer
    double distance = 0.0;
    bool integral = false;           // distance <= 0.2
    std::vector<double> d_by_row;    // interior rows
    double d_spread = 0.0;           // max - min over rows away from the boundary
    double nu_harmonic_residual = 0.0;
    double mu_sup = 0.0;
    double wente_bound = 0.0;  // (1/2 pi) sum_k ||grad e1^k|| ||grad e2^k||
    double frame_energy = 0.0;
};

// measure_row < 0 selects the middle row.
NeckDecomposition decompose(const ConformalImmersionSample& c, int measure_row = -1);

struct RotationCheck {
    int winding = 0;
    double winding_raw = 0.0;
    // sup of |*d nu - d theta| in the coframe (d log r, d theta), rows 2..M-2
    double identity_residual = 0.0;
};

// frame2 = (f1, f2) spanning the same tangent planes; theta is the angle taking f1 to
// e1, i.e. e1 = cos(theta) f1 + sin(theta) f2.
RotationCheck rotation_field_check(const ConformalImmersionSample& c, const std::vector<Vec3>& f1,
                                   const std::vector<Vec3>& f2);
// Constant frame ((1,0,0), (0,1,0)), for planar sheets.
std::pair<std::vector<Vec3>, std::vector<Vec3>> cartesian_frame(const ConformalImmersionSample& c);

// sup over interior rows of |d_j n - n x (grad^perp n)_j + 2 H d_j phi| with
// grad^perp = (d_y, -d_x) and H = e^{-2 lambda}<Lap phi, n>/2
double gauss_identity_check(const ConformalImmersionSample& c);

struct Hole {
    cplx center;
    double radius;
};

struct MultiDiskSample {
    std::vector<Hole> holes;
    std::vector<ConformalImmersionSample> around;  // one annulus per hole
    ConformalImmersionSample outer;                // annulus around 0 enclosing every hole
};

// Planar sheet with d phi = (Re, Im)(F'(z) dz) on B(0,1) minus the holes.
MultiDiskSample holomorphic_multi_disk(const RationalMap& dF, const std::vector<Hole>& holes, int M, int K);

struct MultiDiskResult {
    std::vector<double> flux;
    std::vector<int> degrees;
    int total = 0;
    double outer_flux = 0.0;
    int outer_degree = 0;
    bool integral = true;
    bool consistent = false;  // total == outer degree
    std::vector<std::string> diagnostics;
};

MultiDiskResult multi_disk_decompose(const MultiDiskSample& s);

}  // namespace bw
