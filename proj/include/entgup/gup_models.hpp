#pragma once

#include <string>
#include <vector>

// Deformed commutation relations and the uncertainty bounds they induce for a
// pair of identical particles.
//
// Every model fixes a deformation factor f(p) in the single-particle relation
//
//     [x, p] = i hbar f(p)
//
// and the derived bounds refer to two kinds of statistics:
//
//   single particle:  dx dp >= (hbar/2) <f(p)>, evaluated at second-moment level,
//   entangled pair:   dQi dPi >= (hbar/4) B(dP, gamma), the collective-operator
//                     bound for identical particles with per-particle spread dP
//                     and mean-momentum term gamma.
//
// The bracket B depends on the model family only through (dP^2, gamma), except
// for the linear model (Adv) whose odd term survives unless the two particles
// carry opposite mean momenta; see BoundContext::opposite_momenta.
//
// Units: momenta are in units of hbar/length, so the deformation parameters
// carry 1/momentum^2 (beta) or 1/momentum (alpha). hbar is explicit everywhere
// and defaults to 1.

namespace entgup {

enum class GupKind {
    Hup,     // undeformed, f = 1
    Kmm,     // f = 1 + beta p^2
    Adv,     // f = 1 - 2 alpha p + 4 alpha^2 p^2
    Pedram,  // f = 1 / (1 - beta p^2), valid for beta p^2 < 1
    Exp,     // f = exp(beta p^2)
};

const char* to_string(GupKind kind);
GupKind gup_kind_from_string(const std::string& name);

// A model is a family tag plus its deformation parameter. `param` is beta
// (units 1/p^2) for Kmm/Pedram/Exp, alpha (units 1/p) for Adv, and unused for
// Hup. Use the named factories; they validate the parameter.
struct GupModel {
    GupKind kind = GupKind::Hup;
    double param = 0.0;

    static GupModel hup();
    static GupModel kmm(double beta);
    static GupModel adv(double alpha);
    static GupModel pedram(double beta);
    static GupModel exponential(double beta);
    static GupModel make(GupKind kind, double param);
};

// Second-moment data of one particle's momentum distribution. Stores the
// spread and the mean; <p^2> = dp^2 + <p>^2 is derived so the three numbers
// can never disagree.
class MomentumStats {
public:
    MomentumStats(double dp, double mean_p);
    static MomentumStats from_mean_and_mean_sq(double mean_p, double mean_p_sq);

    double dp() const { return dp_; }
    double mean_p() const { return mean_p_; }
    double mean_p_sq() const { return dp_ * dp_ + mean_p_ * mean_p_; }

private:
    double dp_;
    double mean_p_;
};

// Deformation factor f(p). Throws std::domain_error at the Pedram pole
// (beta p^2 >= 1).
double commutator_factor(const GupModel& model, double p);

// Mean-momentum contribution to the pair bracket: beta <p>^2 for the
// quadratic-in-beta families, 4 alpha^2 <p>^2 for Adv, 0 for Hup.
double gamma_term(const GupModel& model, const MomentumStats& stats);

// Everything entangled_pair_rhs needs, with gamma computed once from the
// stats at construction so it cannot drift out of sync.
//
// opposite_momenta marks the configuration <p1> = -<p2>; it only affects the
// Adv bracket, whose linear term cancels between the particles in that case
// and survives (as -2 alpha <p>) when both means point the same way.
class BoundContext {
public:
    BoundContext(GupModel model, MomentumStats stats, double hbar = 1.0,
                 bool opposite_momenta = true);

    const GupModel& model() const { return model_; }
    const MomentumStats& stats() const { return stats_; }
    double gamma() const { return gamma_; }
    double hbar() const { return hbar_; }
    bool opposite_momenta() const { return opposite_momenta_; }

private:
    GupModel model_;
    MomentumStats stats_;
    double gamma_;
    double hbar_;
    bool opposite_momenta_;
};

// Lower bound on dQi dPi for the entangled pair, (hbar/4) B(dP, gamma), with
// the bracket in its even form (no Adv linear term). gamma is taken as a free
// parameter here; pass gamma_term(...) or any nonnegative value. Throws
// std::domain_error at the Pedram pole beta dP^2 + gamma >= 1.
double entangled_pair_rhs(const GupModel& model, double dp, double gamma,
                          double hbar);

// Same bound evaluated from a context; restores the Adv linear term when the
// context is not in the opposite-momenta configuration.
double entangled_pair_rhs(const BoundContext& ctx);

// Non-entangled single-particle bound (hbar/2) <f(p)> at second-moment level.
// Exactly twice entangled_pair_rhs for the same model and stats when the pair
// context shares the particle's mean momentum (opposite_momenta = false).
double single_particle_rhs(const GupModel& model, const MomentumStats& stats,
                           double hbar);

struct CurvePoint {
    double dp;        // per-particle momentum spread
    double dq_lower;  // entangled bound on dQ at that spread, rhs / dp
};

// Samples dQ_lower(dP) = entangled_pair_rhs / dP at n_points equally spaced
// spreads in [dp_min, dp_max], endpoints included. For Pedram the whole range
// must sit below the pole; otherwise throws std::domain_error naming the
// admissible interval.
std::vector<CurvePoint> bound_curve(const GupModel& model, double mean_p,
                                    double hbar, double dp_min, double dp_max,
                                    int n_points);

}  // namespace entgup
