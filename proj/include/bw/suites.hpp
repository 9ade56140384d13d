#pragma once

// Seeded property suites over the annulus estimates. A sample's slack is
// bound - observed in the suite's own units; negative slack beyond the budget is a violation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bw/laurent.hpp"

namespace bw {

struct SuiteConfig {
    int samples = 0;  // 0 selects the suite default
    std::uint64_t seed = 42;
    std::vector<double> alphas;  // l21l2 only; empty selects {1/8, 1/4, 1/2}
    std::optional<LaurentField> field;  // single user field instead of random draws
};

struct SuiteReport {
    std::string name;
    int samples = 0;
    int violations = 0;
    double budget = 0.0;                // allowed negative slack
    double worst = 0.0;                 // min slack over all samples
    std::vector<double> per_sample;     // min slack of each sample
    std::map<std::string, double> stats;
    bool passed() const { return violations == 0; }
};

const std::vector<std::string>& suite_names();
bool has_suite(const std::string& name);
// Throws Errc::usage for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

// Individual suites.
SuiteReport suite_l21l2(const SuiteConfig& cfg);          // default 1000 fields
SuiteReport suite_schwarz(const SuiteConfig& cfg);        // default 1000
SuiteReport suite_schwarz_multi(const SuiteConfig& cfg);  // default 200
SuiteReport suite_wente(const SuiteConfig& cfg);          // default 200
SuiteReport suite_oscillation(const SuiteConfig& cfg);    // default 500
SuiteReport suite_radial_average(const SuiteConfig& cfg); // default 200

// Random multi-disk configuration inside B_1: 1..3 disjoint small disks with
// 4 r_j < 1 - |a_j|, and a field with poles at the centers; delta_j is the measured
// circle sup.
struct MultiDiskConfig {
    MultiPoleField field;
    std::vector<Disk> disks;
};
MultiDiskConfig random_multi_disk(std::mt19937_64& rng);

}  // namespace bw
