#pragma once

#include <iosfwd>
#include <string>

// Minimal-length upper bound from the Kim-Shih two-photon ghost-imaging data.
//
// The with-slit arm of that experiment obeys the single-particle relation
//
//     2 w dPs = hbar (1 + beta dPs^2 + gamma),      gamma = eta - 1,
//
// whose larger root r_plus(beta) is the slit-case momentum spread. The
// interference data fix the no-slit (ghost) spread at dPns = ratio * r_plus
// with ratio = ratio_ns / ratio_s. Entanglement lets the measured product
// w * dPns sit below hbar/2, but it must stay above the pair bound evaluated
// along the slit root,
//
//     w * dPns >= (hbar/4) (eta + beta r_plus^2),
//
// which fails once beta grows past a crossing beta_max. That crossing is the
// estimate: l_min <= hbar sqrt(beta_max).
//
// All arithmetic runs in the record's length unit with the given hbar
// (default 1), so a millimetre slit width yields beta in mm^2; the headline
// l_min is additionally converted to meters.

namespace entgup {

struct ExperimentRecord {
    double slit_width = 0.16;           // in length_unit
    std::string length_unit = "mm";
    double ratio_ns_over_s = 1.25 / 2.15;
    double eta = 1.0;                   // 1 + gamma, >= 1
    std::string source;
};

// The published Kim-Shih configuration: 0.16 mm slit, spread ratio 1.25/2.15.
ExperimentRecord default_record();

// Key-value text format, one `key = value` pair per line, '#' comments.
// Keys: slit_width (required), slit_width_unit, ratio_ns (required),
// ratio_s (required), eta, source.
ExperimentRecord load_experiment(std::istream& in);
ExperimentRecord load_experiment(const std::string& path);

// Conversion factor for the supported length units (m, cm, mm, um, nm).
double length_unit_in_meters(const std::string& unit);

enum class RootMethod {
    Series,          // series-expanded roots, faithful to the classic analysis
    ExactQuadratic,  // numerically stable exact roots of the slit relation
};

const char* to_string(RootMethod method);
RootMethod root_method_from_string(const std::string& name);

struct SlitRoots {
    double r_plus;
    double r_minus;
};

// Series roots
//   r_plus  = 2w/(hbar beta) - hbar eta/(2w) - beta hbar^3 eta^2 / (2w)^3
//   r_minus = hbar eta/(2w) + beta hbar^3 eta^2 / (2w)^3
// These evaluate for any beta > 0; series_condition_ok reports whether beta
// still satisfies the real-root condition beta <= w^2/(hbar^2 eta) of the
// quadratic the series came from.
SlitRoots slit_roots_series(double beta, const ExperimentRecord& record,
                            double hbar = 1.0);
bool series_condition_ok(double beta, const ExperimentRecord& record,
                         double hbar = 1.0);

// Exact roots of 2 hbar beta x^2 - w x + (hbar/2) eta = 0, computed in the
// cancellation-free form (larger root from the standard formula, smaller via
// the product identity). Real roots require beta <= exact_root_threshold;
// beyond it this throws naming the threshold.
SlitRoots slit_roots_exact(double beta, const ExperimentRecord& record,
                           double hbar = 1.0);
double exact_root_threshold(const ExperimentRecord& record, double hbar = 1.0);

struct BoundEstimate {
    RootMethod method;
    double beta_max;       // length_unit^2 / hbar^2
    double l_min_upper;    // hbar * sqrt(beta_max), in length_unit
    double l_min_upper_m;  // same, in meters
    SlitRoots roots_at_max;
    // Exact mode: the crossing was never reached inside the real-root domain,
    // so beta_max is the discriminant threshold itself.
    bool limited_by_root_condition;
    // Series mode: beta_max lies beyond the series' real-root condition (the
    // formulas still evaluate; this flags the extrapolation).
    bool beyond_series_validity;
};

// Largest beta compatible with the record (bisection to 1e-13 relative) and
// the implied minimal-length bound. Throws std::domain_error when the record
// is degenerate, i.e. the pair bound fails already in the beta -> 0 limit.
BoundEstimate estimate_bound(const ExperimentRecord& record, RootMethod method,
                             double hbar = 1.0);

}  // namespace entgup
