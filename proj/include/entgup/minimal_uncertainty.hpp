#pragma once

#include "entgup/gup_models.hpp"

// Minima of the position-uncertainty bound dQ_lower(dP) = rhs(dP) / dP and
// the minimal observable length they imply.
//
// For gamma = 0 all four deformed families have closed-form minima; numeric_min
// covers gamma > 0 and doubles as an independent cross-check. The separable
// (non-entangled) bound is exactly twice the pair bound at every spread, so it
// shares the minimizing dP and doubles the minimum.

namespace entgup {

struct MinimalLengthQuery {
    GupModel model;
    bool entangled = true;  // false = separable single-particle bound
    double gamma = 0.0;     // frozen mean-momentum term, >= 0
    int n_particles = 2;    // 2 for the entangled pair, 1 otherwise
    double hbar = 1.0;
};

enum class MinMethod { Analytic, Numeric };

struct MinimumResult {
    double dq_min;   // smallest admissible position uncertainty
    double dp_star;  // momentum spread achieving it
    MinMethod method;
};

// Closed-form minimum. Only gamma = 0 queries are supported analytically;
// anything else goes through numeric_min. Hup (and a vanishing deformation
// parameter) has no minimum and raises std::domain_error.
MinimumResult analytic_min(const MinimalLengthQuery& query);

// Derivative-free minimum of rhs(dP)/dP: a geometric scan brackets the
// minimum, golden-section refines it until the bracket is below rel_tol
// relative to dp_star. Handles gamma > 0 and respects the Pedram domain
// dP < sqrt((1 - gamma)/beta).
MinimumResult numeric_min(const MinimalLengthQuery& query,
                          double rel_tol = 1e-10);

// Composite-system rescaling of a beta-like deformation parameter,
// param / n^2. (For the linear family the equivalent map is alpha / n,
// applied inside minimal_length; alpha enters the bounds only as alpha^2.)
double effective_parameter(double param, int n_particles);

// Minimal observable length probed by an n-particle system whose individual
// particles obey `single_particle_model`. n = 1 is the separable minimum; for
// the entangled pair (n = 2) the bound is evaluated with the parameter scaled
// by n^2 (alpha by n), undoing the composite rescaling, which lands exactly on
// the separable single-particle value: entanglement does not shrink the
// minimal length. Only n in {1, 2} is supported.
double minimal_length(const GupModel& single_particle_model, int n_particles,
                      double hbar = 1.0);

}  // namespace entgup
