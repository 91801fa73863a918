#include "entgup/gup_models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace entgup {

namespace {

void require_finite_nonneg(double value, const char* what) {
    if (!std::isfinite(value) || value < 0.0) {
        std::ostringstream msg;
        msg << what << " must be finite and >= 0, got " << value;
        throw std::invalid_argument(msg.str());
    }
}

[[noreturn]] void throw_pedram_pole(double beta, double arg, const char* site) {
    std::ostringstream msg;
    msg << "pedram " << site << " has a pole where beta*p^2 reaches 1: got "
        << arg << " with beta = " << beta
        << " (valid only for |p| < " << 1.0 / std::sqrt(beta) << ")";
    throw std::domain_error(msg.str());
}

// Even part of the pair bracket B(dP, gamma). The Adv linear term is handled
// by the callers that know the momentum configuration.
double pair_bracket(const GupModel& model, double dp, double gamma) {
    const double b = model.param;
    switch (model.kind) {
        case GupKind::Hup:
            return 1.0;
        case GupKind::Kmm:
            return 1.0 + b * dp * dp + gamma;
        case GupKind::Adv:
            return 1.0 + 4.0 * b * b * dp * dp + gamma;
        case GupKind::Pedram: {
            const double arg = b * dp * dp + gamma;
            if (arg >= 1.0) {
                std::ostringstream msg;
                msg << "pedram pair bound has a pole where beta*dP^2 + gamma "
                       "reaches 1: got "
                    << arg << " (admissible spreads: 0 < dP < "
                    << std::sqrt((1.0 - gamma) / b) << ")";
                throw std::domain_error(msg.str());
            }
            return 1.0 / (1.0 - arg);
        }
        case GupKind::Exp:
            return std::exp(b * dp * dp + gamma);
    }
    throw std::logic_error("unreachable: bad GupKind");
}

}  // namespace

const char* to_string(GupKind kind) {
    switch (kind) {
        case GupKind::Hup: return "hup";
        case GupKind::Kmm: return "kmm";
        case GupKind::Adv: return "adv";
        case GupKind::Pedram: return "pedram";
        case GupKind::Exp: return "exp";
    }
    return "?";
}

GupKind gup_kind_from_string(const std::string& name) {
    if (name == "hup") return GupKind::Hup;
    if (name == "kmm") return GupKind::Kmm;
    if (name == "adv") return GupKind::Adv;
    if (name == "pedram") return GupKind::Pedram;
    if (name == "exp") return GupKind::Exp;
    throw std::invalid_argument("unknown model '" + name +
                                "' (expected hup, kmm, adv, pedram or exp)");
}

GupModel GupModel::hup() { return {GupKind::Hup, 0.0}; }

GupModel GupModel::kmm(double beta) {
    require_finite_nonneg(beta, "kmm beta");
    return {GupKind::Kmm, beta};
}

GupModel GupModel::adv(double alpha) {
    require_finite_nonneg(alpha, "adv alpha");
    return {GupKind::Adv, alpha};
}

GupModel GupModel::pedram(double beta) {
    require_finite_nonneg(beta, "pedram beta");
    return {GupKind::Pedram, beta};
}

GupModel GupModel::exponential(double beta) {
    require_finite_nonneg(beta, "exp beta");
    return {GupKind::Exp, beta};
}

GupModel GupModel::make(GupKind kind, double param) {
    switch (kind) {
        case GupKind::Hup: return hup();
        case GupKind::Kmm: return kmm(param);
        case GupKind::Adv: return adv(param);
        case GupKind::Pedram: return pedram(param);
        case GupKind::Exp: return exponential(param);
    }
    throw std::invalid_argument("bad GupKind");
}

MomentumStats::MomentumStats(double dp, double mean_p)
    : dp_(dp), mean_p_(mean_p) {
    if (!std::isfinite(dp) || dp <= 0.0) {
        throw std::invalid_argument("momentum spread dp must be positive");
    }
    if (!std::isfinite(mean_p)) {
        throw std::invalid_argument("mean momentum must be finite");
    }
}

MomentumStats MomentumStats::from_mean_and_mean_sq(double mean_p,
                                                   double mean_p_sq) {
    const double var = mean_p_sq - mean_p * mean_p;
    if (!std::isfinite(var) || var <= 0.0) {
        std::ostringstream msg;
        msg << "<p^2> = " << mean_p_sq << " is not consistent with <p> = "
            << mean_p << " (needs <p^2> > <p>^2)";
        throw std::invalid_argument(msg.str());
    }
    return MomentumStats(std::sqrt(var), mean_p);
}

double commutator_factor(const GupModel& model, double p) {
    const double b = model.param;
    switch (model.kind) {
        case GupKind::Hup:
            return 1.0;
        case GupKind::Kmm:
            return 1.0 + b * p * p;
        case GupKind::Adv:
            return 1.0 - 2.0 * b * p + 4.0 * b * b * p * p;
        case GupKind::Pedram: {
            const double arg = b * p * p;
            if (arg >= 1.0) throw_pedram_pole(b, arg, "commutator factor");
            return 1.0 / (1.0 - arg);
        }
        case GupKind::Exp:
            return std::exp(b * p * p);
    }
    throw std::logic_error("unreachable: bad GupKind");
}

double gamma_term(const GupModel& model, const MomentumStats& stats) {
    const double m2 = stats.mean_p() * stats.mean_p();
    switch (model.kind) {
        case GupKind::Hup:
            return 0.0;
        case GupKind::Kmm:
        case GupKind::Pedram:
        case GupKind::Exp:
            return model.param * m2;
        case GupKind::Adv:
            return 4.0 * model.param * model.param * m2;
    }
    throw std::logic_error("unreachable: bad GupKind");
}

BoundContext::BoundContext(GupModel model, MomentumStats stats, double hbar,
                           bool opposite_momenta)
    : model_(model),
      stats_(stats),
      gamma_(gamma_term(model, stats)),
      hbar_(hbar),
      opposite_momenta_(opposite_momenta) {
    if (!std::isfinite(hbar) || hbar <= 0.0) {
        throw std::invalid_argument("hbar must be positive");
    }
}

double entangled_pair_rhs(const GupModel& model, double dp, double gamma,
                          double hbar) {
    return 0.25 * hbar * pair_bracket(model, dp, gamma);
}

double entangled_pair_rhs(const BoundContext& ctx) {
    double bracket =
        pair_bracket(ctx.model(), ctx.stats().dp(), ctx.gamma());
    if (ctx.model().kind == GupKind::Adv && !ctx.opposite_momenta()) {
        // co-moving means: the odd terms add up instead of cancelling
        bracket -= 2.0 * ctx.model().param * ctx.stats().mean_p();
    }
    return 0.25 * ctx.hbar() * bracket;
}

double single_particle_rhs(const GupModel& model, const MomentumStats& stats,
                           double hbar) {
    double bracket = pair_bracket(model, stats.dp(), gamma_term(model, stats));
    if (model.kind == GupKind::Adv) {
        bracket -= 2.0 * model.param * stats.mean_p();
    }
    return 0.5 * hbar * bracket;
}

std::vector<CurvePoint> bound_curve(const GupModel& model, double mean_p,
                                    double hbar, double dp_min, double dp_max,
                                    int n_points) {
    if (!(dp_min > 0.0) || !(dp_max > dp_min)) {
        throw std::invalid_argument(
            "bound_curve needs 0 < dp_min < dp_max");
    }
    if (n_points < 2) {
        throw std::invalid_argument("bound_curve needs n_points >= 2");
    }
    const double gamma =
        gamma_term(model, MomentumStats(dp_min, mean_p));  // dp-independent
    if (model.kind == GupKind::Pedram) {
        const double arg_max = model.param * dp_max * dp_max + gamma;
        if (arg_max >= 1.0) {
            std::ostringstream msg;
            msg << "bound_curve range [" << dp_min << ", " << dp_max
                << "] crosses the pedram pole; admissible spreads: (0, "
                << std::sqrt((1.0 - gamma) / model.param) << ")";
            throw std::domain_error(msg.str());
        }
    }
    std::vector<CurvePoint> points;
    points.reserve(static_cast<size_t>(n_points));
    const double step = (dp_max - dp_min) / static_cast<double>(n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        const double dp =
            (i == n_points - 1) ? dp_max : dp_min + step * static_cast<double>(i);
        points.push_back({dp, entangled_pair_rhs(model, dp, gamma, hbar) / dp});
    }
    return points;
}

}  // namespace entgup
