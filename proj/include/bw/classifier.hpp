#pragma once

// Bubble admissibility of complete minimal surfaces with total curvature > -12 pi:
// an immersion is rejected when it has flux, or when an end of multiplicity m >= 2
// carries second residue m - 1.

#include <optional>
#include <string>
#include <vector>

#include "bw/weierstrass.hpp"

namespace bw {

// One row of the reference table.
struct ExpectedRow {
    int total_curvature_pi = 0;  // total curvature in units of pi
    bool flux = false;
    std::vector<int> m;
    std::vector<int> r;
    bool admissible = false;
};

struct CatalogueEntry {
    std::string key;    // short id, e.g. "lopez-ii"
    std::string label;  // table label
    std::optional<WeierstrassSurface> surface;  // empty for metadata-only rows
    ExpectedRow expected;
    bool has_expected = true;  // false for user surfaces without a reference row
    std::string source;             // classification case of the data, if any
    bool mapping_uncertain = false;  // table label inferred, not stated
    // r at the multiplicity-3 end depends on c for the VI family
    bool vi_family = false;
};

enum class Verdict { yes, no, indeterminate };
enum class Provenance { computed, metadata };

const char* verdict_name(Verdict v);
const char* provenance_name(Provenance p);

struct EndRecord {
    std::string end;  // "inf", "(x,y)" or "#j" for metadata ends
    int m = 0;
    std::optional<int> r;  // empty when not determined
    bool flux_nonzero = false;
    bool residue_applicable = true;
    bool from_remark = false;  // r taken from the c = 0 exception
    std::optional<EndReport> report;
};

struct AdmissibilityReport {
    std::string key;
    std::string label;
    std::vector<EndRecord> ends;
    int gauss_degree = 0;
    double total_curvature = 0.0;
    bool flux_nonzero = false;
    bool residue_violation = false;
    bool admissible = false;
    Verdict verdict = Verdict::no;
    Provenance provenance = Provenance::computed;
    bool mapping_uncertain = false;
    std::vector<std::string> discrepancies;
    std::vector<std::string> notes;
};

struct CatalogueParams {
    double lambda = 1.0;
    cplx c{0.5, 0.0};
    double theta = 0.0;
};

// Twelve rows in table order: catenoid, Enneper, trinoid, Lopez I..IX.
std::vector<CatalogueEntry> builtin_catalogue(const CatalogueParams& p = {});
const CatalogueEntry& find_entry(const std::vector<CatalogueEntry>& cat, const std::string& key);

// Pure verdict rule on per-end data.
Verdict verdict_rule(bool flux_nonzero, const std::vector<EndRecord>& ends, bool* residue_violation = nullptr);

AdmissibilityReport classify(const CatalogueEntry& e);

struct Figure1Table {
    std::vector<AdmissibilityReport> rows;
    bool partial = false;
    std::vector<std::string> missing;
    std::string to_csv() const;
};

// Throws Errc::incomplete listing the gaps when rows are missing, unless allow_partial
// (an empty catalogue always throws).
Figure1Table figure1_table(const std::vector<CatalogueEntry>& cat, bool allow_partial = false);

struct LiYau {
    double willmore = 0.0;          // 4 pi theta0
    double compact_curvature = 0.0;  // 2 pi (theta0 + 1)
    double open_curvature = 0.0;     // -2 pi (theta0 - 1)
    double telescoped = 0.0;
};
LiYau li_yau_gauss_bonnet(int theta0);

}  // namespace bw
