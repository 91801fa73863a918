#include "entgup/minimal_uncertainty.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace entgup {

namespace {

void validate(const MinimalLengthQuery& q) {
    if (!std::isfinite(q.gamma) || q.gamma < 0.0) {
        throw std::invalid_argument("gamma must be finite and >= 0");
    }
    if (!std::isfinite(q.hbar) || q.hbar <= 0.0) {
        throw std::invalid_argument("hbar must be positive");
    }
    if (q.n_particles < 1) {
        throw std::invalid_argument("n_particles must be >= 1");
    }
    if (q.entangled && q.n_particles != 2) {
        throw std::invalid_argument(
            "the entangled bound describes a two-particle system");
    }
    if (q.model.kind == GupKind::Hup) {
        throw std::domain_error(
            "no minimum exists: the hup bound hbar/(4 dP) decreases "
            "monotonically in dP");
    }
    if (q.model.param <= 0.0) {
        throw std::domain_error(
            "no minimum exists for a vanishing deformation parameter");
    }
}

// The pair bound divided by the spread; entangled minima come from this,
// separable ones are twice it at the same spread.
double dq_lower(const MinimalLengthQuery& q, double dp) {
    const double rhs = entangled_pair_rhs(q.model, dp, q.gamma, q.hbar);
    return (q.entangled ? rhs : 2.0 * rhs) / dp;
}

// Golden-section search on a bracketed unimodal minimum.
double golden_section(const std::function<double(double)>& g, double lo,
                      double hi, double rel_tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo;
    double c = hi;
    double b = c - invphi * (c - a);
    double d = a + invphi * (c - a);
    double gb = g(b);
    double gd = g(d);
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (a + c);
        if (c - a <= rel_tol * std::abs(mid)) break;
        if (gb <= gd) {
            c = d;
            d = b;
            gd = gb;
            b = c - invphi * (c - a);
            gb = g(b);
        } else {
            a = b;
            b = d;
            gb = gd;
            d = a + invphi * (c - a);
            gd = g(d);
        }
    }
    return 0.5 * (a + c);
}

}  // namespace

MinimumResult analytic_min(const MinimalLengthQuery& q) {
    validate(q);
    if (q.gamma != 0.0) {
        throw std::invalid_argument(
            "closed-form minima are implemented for gamma = 0; use "
            "numeric_min for gamma > 0");
    }
    const double b = q.model.param;
    const double hbar = q.hbar;
    double dq = 0.0;
    double dp = 0.0;
    switch (q.model.kind) {
        case GupKind::Kmm:
            dp = 1.0 / std::sqrt(b);
            dq = 0.5 * hbar * std::sqrt(b);
            break;
        case GupKind::Adv:
            dp = 1.0 / (2.0 * b);
            dq = hbar * b;
            break;
        case GupKind::Pedram:
            dp = 1.0 / std::sqrt(3.0 * b);
            dq = 0.375 * hbar * std::sqrt(3.0 * b);
            break;
        case GupKind::Exp:
            dp = 1.0 / std::sqrt(2.0 * b);
            dq = 0.5 * hbar * std::sqrt(0.5 * std::numbers::e * b);
            break;
        default:
            throw std::logic_error("unreachable: validated kind");
    }
    if (!q.entangled) dq *= 2.0;
    return {dq, dp, MinMethod::Analytic};
}

MinimumResult numeric_min(const MinimalLengthQuery& q, double rel_tol) {
    validate(q);
    if (!(rel_tol > 0.0) || rel_tol >= 1.0) {
        throw std::invalid_argument("rel_tol must be in (0, 1)");
    }
    if (q.model.kind == GupKind::Pedram && q.gamma >= 1.0) {
        throw std::domain_error(
            "pedram bound has an empty domain for gamma >= 1");
    }

    const auto g = [&](double dp) { return dq_lower(q, dp); };

    // Geometric scan. The bound diverges at both ends of the domain (as
    // hbar/dp for small dp, and through the deformation term or the Pedram
    // pole for large dp), so the coarse argmin brackets the true one.
    std::vector<double> xs;
    if (q.model.kind == GupKind::Pedram) {
        const double x_max = std::sqrt((1.0 - q.gamma) / q.model.param);
        for (double u = 1e-9; u < 0.99; u *= 2.0) xs.push_back(u * x_max);
        xs.push_back(0.99 * x_max);
        xs.push_back(0.9999 * x_max);
    } else {
        for (double x = 1e-9; x < 1.5e9; x *= 2.0) xs.push_back(x);
    }
    size_t best = 0;
    double g_best = g(xs[0]);
    for (size_t i = 1; i < xs.size(); ++i) {
        const double gi = g(xs[i]);
        if (gi < g_best) {
            g_best = gi;
            best = i;
        }
    }
    if (best == 0 || best + 1 == xs.size()) {
        std::ostringstream msg;
        msg << "failed to bracket a minimum: the bound is monotone across the "
               "scanned spread range ["
            << xs.front() << ", " << xs.back() << "]";
        throw std::domain_error(msg.str());
    }

    const double dp_star =
        golden_section(g, xs[best - 1], xs[best + 1], rel_tol);
    return {g(dp_star), dp_star, MinMethod::Numeric};
}

double effective_parameter(double param, int n_particles) {
    if (!std::isfinite(param) || param < 0.0) {
        throw std::invalid_argument("param must be finite and >= 0");
    }
    if (n_particles < 1) {
        throw std::invalid_argument("n_particles must be >= 1");
    }
    const double n = static_cast<double>(n_particles);
    return param / (n * n);
}

double minimal_length(const GupModel& single_particle_model, int n_particles,
                      double hbar) {
    const GupModel& m = single_particle_model;
    if (m.kind == GupKind::Hup) {
        throw std::domain_error("hup admits no minimal length");
    }
    if (n_particles == 1) {
        return analytic_min({m, /*entangled=*/false, 0.0, 1, hbar}).dq_min;
    }
    if (n_particles == 2) {
        const double n = 2.0;
        const double scaled = m.kind == GupKind::Adv ? m.param * n
                                                     : m.param * n * n;
        const GupModel system_model = GupModel::make(m.kind, scaled);
        return analytic_min({system_model, /*entangled=*/true, 0.0, 2, hbar})
            .dq_min;
    }
    throw std::invalid_argument(
        "minimal_length supports n_particles in {1, 2}; larger systems have "
        "no established pair-style bound");
}

}  // namespace entgup
