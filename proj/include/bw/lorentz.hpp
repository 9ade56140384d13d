#pragma once

// Decreasing rearrangements and Lorentz L^{p,q} norms of sampled functions on
// planar annuli.
//
// Two flavours are provided:
//   quasi    ||f||*_{p,q}  = ( int_0^inf (t^{1/p} f*(t))^q dt/t )^{1/q}
//   maximal  ||f||_{p,q}   = same with f** (t) = (1/t) int_0^t f*
// q = infinity is the weak space: sup_t t^{1/p} f*(t) (resp. f**).
// For p = 2, q = 1 the maximal flavour equals 4 int_0^inf mu{|f|>s}^{1/2} ds.
//
// Samples are piecewise constant on grid cells, so f* and f** are explicit
// step / hyperbolic functions and every integral below is evaluated exactly.

#include <functional>
#include <limits>
#include <vector>

namespace bw {

// Cell-centered tensor grid, uniform in (log r, theta).
struct LogPolarGrid {
    double inner = 0.0;
    double outer = 0.0;
    int nr = 0;
    int nt = 0;

    LogPolarGrid() = default;
    LogPolarGrid(double r, double R, int nr, int nt);

    double ds() const;        // log-radial step
    double dtheta() const;    // angular step
    double radius(int i) const;   // cell-center radius e^{s_i}
    double edge(int i) const;     // radius of the i-th cell boundary, 0..nr
    double theta(int j) const;    // (j + 1/2) dtheta
    double ring_area(int i) const;  // area of one cell in ring i
    std::size_t size() const { return static_cast<std::size_t>(nr) * nt; }
};

struct SampledAnnulusField {
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    int nr = 0;
    int nt = 0;
    std::vector<double> radial_nodes;  // nr
    std::vector<double> values;        // nr * nt, row i = ring i
    std::vector<double> cell_areas;    // nr * nt

    // Throws Errc::invalid when an invariant fails.
    void validate() const;
    double area() const;
};

// Samples |f| at the cell centers.
SampledAnnulusField sample_field(const LogPolarGrid& g,
                                 const std::function<double(double r, double theta)>& f);
// Wraps precomputed values laid out ring by ring.
SampledAnnulusField field_from_values(const LogPolarGrid& g, std::vector<double> values);

struct StepFunction {
    // f*(t) = values[i] on [measures[i-1], measures[i]), measures[-1] = 0.
    std::vector<double> values;
    std::vector<double> measures;  // cumulative, last = total area

    double total_measure() const { return measures.empty() ? 0.0 : measures.back(); }
    double at(double t) const;                 // f*(t)
    double distribution(double lambda) const;  // mu{f* > lambda}
};

StepFunction decreasing_rearrangement(const SampledAnnulusField& f);
// Same, from raw (value, weight) arrays.
StepFunction decreasing_rearrangement(const double* values, const double* weights, std::size_t n);

struct LorentzIndex {
    double p = 2.0;
    double q = 2.0;
    bool q_infinite = false;

    static LorentzIndex finite(double p, double q);
    static LorentzIndex weak(double p);
};

enum class Flavor { quasi, maximal };

double lorentz_norm(const StepFunction& fstar, LorentzIndex idx, Flavor flavor);
double lorentz_norm(const SampledAnnulusField& f, LorentzIndex idx, Flavor flavor);

// Plain L^p norm by quadrature.
double lp_norm(const SampledAnnulusField& f, double p);

struct DualityCheck {
    double lhs = 0.0;  // |int f g|
    double rhs = 0.0;  // ||f||*_{2,1} ||g||*_{2,inf}
    double rhs_maximal = 0.0;
};

DualityCheck duality_pairing_check(const SampledAnnulusField& f, const SampledAnnulusField& g);

}  // namespace bw
