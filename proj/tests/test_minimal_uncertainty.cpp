// Minima of the position-uncertainty bounds. The closed forms are checked
// against hand-computed values and against an independent refining grid scan
// that knows nothing about the golden-section search used by numeric_min.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "entgup/gup_models.hpp"
#include "entgup/minimal_uncertainty.hpp"

using namespace entgup;

namespace {

// Exhaustive log-spaced scan, zoomed five times around the best sample.
// Worst-case relative bracket after the zooms is far below 1e-7.
double scan_argmin(const std::function<double(double)>& f, double lo,
                   double hi) {
    constexpr int kSamples = 257;
    for (int zoom = 0; zoom < 6; ++zoom) {
        const double llo = std::log(lo);
        const double lhi = std::log(hi);
        int best = 0;
        double best_val = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kSamples; ++i) {
            const double x =
                std::exp(llo + (lhi - llo) * i / double(kSamples - 1));
            const double v = f(x);
            if (v < best_val) {
                best_val = v;
                best = i;
            }
        }
        const double step = (lhi - llo) / double(kSamples - 1);
        lo = std::exp(llo + step * std::max(0, best - 1));
        hi = std::exp(llo + step * std::min(kSamples - 1, best + 1));
    }
    return std::sqrt(lo * hi);
}

double pair_lower(const GupModel& m, double gamma, double dp) {
    return entangled_pair_rhs(m, dp, gamma, 1.0) / dp;
}

}  // namespace

TEST_CASE("closed-form entangled minima at unit parameters") {
    const auto kmm = analytic_min({GupModel::kmm(1.0)});
    CHECK(kmm.dq_min == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(kmm.dp_star == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kmm.method == MinMethod::Analytic);

    const auto adv = analytic_min({GupModel::adv(0.5)});
    CHECK(adv.dq_min == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(adv.dp_star == doctest::Approx(1.0).epsilon(1e-12));

    const auto ped = analytic_min({GupModel::pedram(1.0)});
    CHECK(ped.dq_min == doctest::Approx(0.6495190528383290).epsilon(1e-12));
    CHECK(ped.dp_star == doctest::Approx(0.5773502691896258).epsilon(1e-12));

    const auto ex = analytic_min({GupModel::exponential(1.0)});
    // scan oracle for (1/2)sqrt(e/2); the closed form must match it
    const double star = scan_argmin(
        [](double dp) { return pair_lower(GupModel::exponential(1.0), 0.0, dp); },
        1e-3, 1e3);
    CHECK(ex.dq_min ==
          doctest::Approx(pair_lower(GupModel::exponential(1.0), 0.0, star))
              .epsilon(1e-9));
    CHECK(ex.dp_star == doctest::Approx(star).epsilon(1e-6));
    CHECK(ex.dq_min == doctest::Approx(0.582910995399281).epsilon(1e-9));
    CHECK(ex.dp_star == doctest::Approx(0.7071067811865475).epsilon(1e-9));
}

TEST_CASE("separable minima double the entangled ones at the same spread") {
    for (const GupModel& m : {GupModel::kmm(0.7), GupModel::adv(1.3),
                              GupModel::pedram(0.2), GupModel::exponential(2.5)}) {
        MinimalLengthQuery ent{m};
        MinimalLengthQuery sep{m};
        sep.entangled = false;
        sep.n_particles = 1;
        const auto e = analytic_min(ent);
        const auto s = analytic_min(sep);
        CHECK(s.dq_min == doctest::Approx(2.0 * e.dq_min).epsilon(1e-14));
        CHECK(s.dp_star == doctest::Approx(e.dp_star).epsilon(1e-14));
    }
}

TEST_CASE("undeformed and degenerate queries have no minimum") {
    CHECK_THROWS_WITH_AS(analytic_min({GupModel::hup()}),
                         doctest::Contains("no minimum"), std::domain_error);
    CHECK_THROWS_AS(analytic_min({GupModel::kmm(0.0)}), std::domain_error);
    CHECK_THROWS_AS(numeric_min({GupModel::hup()}), std::domain_error);
}

TEST_CASE("closed forms refuse nonzero mixing and point at numeric_min") {
    MinimalLengthQuery q{GupModel::kmm(1.0)};
    q.gamma = 0.1;
    CHECK_THROWS_WITH_AS(analytic_min(q), doctest::Contains("numeric_min"),
                         std::invalid_argument);
}

TEST_CASE("numeric search reproduces closed forms across parameter decades") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (GupKind kind :
         {GupKind::Kmm, GupKind::Adv, GupKind::Pedram, GupKind::Exp}) {
        for (int trial = 0; trial < 25; ++trial) {
            MinimalLengthQuery q{GupModel::make(kind, std::pow(10.0, u(rng)))};
            const auto a = analytic_min(q);
            const auto n = numeric_min(q);
            CHECK(n.method == MinMethod::Numeric);
            CHECK(std::abs(n.dq_min - a.dq_min) <= 1e-8 * a.dq_min);
            CHECK(std::abs(n.dp_star - a.dp_star) <= 1e-6 * a.dp_star);
        }
    }
}

TEST_CASE("numeric search with mixing matches the scan oracle") {
    MinimalLengthQuery q{GupModel::kmm(1.0)};
    q.gamma = 0.1;
    const auto n = numeric_min(q);
    CHECK(n.dq_min == doctest::Approx(0.5244044240850758).epsilon(1e-10));
    CHECK(n.dp_star == doctest::Approx(1.0488088481701516).epsilon(1e-8));

    MinimalLengthQuery p{GupModel::pedram(1.0)};
    p.gamma = 0.5;
    const auto np = numeric_min(p);
    const double star = scan_argmin(
        [](double dp) { return pair_lower(GupModel::pedram(1.0), 0.5, dp); },
        1e-6, 0.999 * std::sqrt(0.5));
    CHECK(np.dq_min == doctest::Approx(1.8371173070873834).epsilon(1e-10));
    CHECK(np.dp_star == doctest::Approx(star).epsilon(1e-6));
    CHECK(np.dp_star == doctest::Approx(0.4082482904638631).epsilon(1e-8));

    MinimalLengthQuery bad{GupModel::pedram(1.0)};
    bad.gamma = 1.0;
    CHECK_THROWS_AS(numeric_min(bad), std::domain_error);
}

TEST_CASE("numeric minima sit at stationary points of the lower bound") {
    std::mt19937_64 rng(1618);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (GupKind kind :
         {GupKind::Kmm, GupKind::Adv, GupKind::Pedram, GupKind::Exp}) {
        for (int trial = 0; trial < 10; ++trial) {
            MinimalLengthQuery q{GupModel::make(kind, std::pow(10.0, u(rng)))};
            if (kind != GupKind::Pedram) q.gamma = 0.25 * (u(rng) + 2.0);
            const auto n = numeric_min(q);
            const double h = 1e-5 * n.dp_star;
            const double up = pair_lower(q.model, q.gamma, n.dp_star + h);
            const double dn = pair_lower(q.model, q.gamma, n.dp_star - h);
            const double slope = (up - dn) / (2.0 * h);
            CHECK(std::abs(slope) <= 1e-5 * n.dq_min / n.dp_star);
        }
    }
}

TEST_CASE("minimum scales as the square root of the quadratic parameters") {
    for (GupKind kind : {GupKind::Kmm, GupKind::Pedram, GupKind::Exp}) {
        const double c = 3.0;
        const auto base = analytic_min({GupModel::make(kind, 0.4)});
        const auto scaled = analytic_min({GupModel::make(kind, c * c * 0.4)});
        CHECK(scaled.dq_min == doctest::Approx(c * base.dq_min).epsilon(1e-14));
        CHECK(scaled.dp_star ==
              doctest::Approx(base.dp_star / c).epsilon(1e-14));
    }
    const auto a1 = analytic_min({GupModel::adv(0.4)});
    const auto a3 = analytic_min({GupModel::adv(1.2)});
    CHECK(a3.dq_min == doctest::Approx(3.0 * a1.dq_min).epsilon(1e-14));
}

TEST_CASE("effective parameter follows the inverse-square particle count") {
    CHECK(effective_parameter(4.0, 2) == doctest::Approx(1.0));
    CHECK(effective_parameter(1.0, 1) == doctest::Approx(1.0));
    CHECK(effective_parameter(9.0, 3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(effective_parameter(1.0, 0), std::invalid_argument);
}

TEST_CASE("reachable length is unchanged by sharing the state across a pair") {
    // With the parameter rescaled for the pair, the two-particle floor lands
    // exactly on the one-particle floor, bit for bit.
    for (double beta : {1.0, 0.5, 2.0e-4, 7.3}) {
        const double one = minimal_length(GupModel::kmm(beta), 1);
        const double two = minimal_length(GupModel::kmm(beta), 2);
        CHECK(one == two);
        CHECK(two == doctest::Approx(std::sqrt(beta)).epsilon(1e-12));
    }
    const double e1 = minimal_length(GupModel::exponential(1.0), 1);
    const double e2 = minimal_length(GupModel::exponential(1.0), 2);
    CHECK(e1 == e2);
    CHECK(e2 == doctest::Approx(1.165821990798562).epsilon(1e-9));

    const double a1 = minimal_length(GupModel::adv(0.5), 1);
    const double a2 = minimal_length(GupModel::adv(0.5), 2);
    CHECK(a1 == a2);
    CHECK(a2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reachable length rejects unsupported particle counts") {
    CHECK_THROWS_AS(minimal_length(GupModel::kmm(1.0), 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(minimal_length(GupModel::kmm(1.0), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(minimal_length(GupModel::hup(), 2), std::domain_error);
}

TEST_CASE("query validation") {
    MinimalLengthQuery q{GupModel::kmm(1.0)};
    q.hbar = 0.0;
    CHECK_THROWS_AS(analytic_min(q), std::invalid_argument);
    MinimalLengthQuery r{GupModel::kmm(1.0)};
    r.gamma = -0.1;
    CHECK_THROWS_AS(analytic_min(r), std::invalid_argument);
    MinimalLengthQuery s{GupModel::kmm(1.0)};
    s.entangled = true;
    s.n_particles = 1;
    CHECK_THROWS_AS(analytic_min(s), std::invalid_argument);
}
