// Bound arithmetic for the five deformation families: frozen hand-computed
// values, the exact factor-two law between the single-particle and pair
// bounds, and the structural properties (collapse at vanishing deformation,
// positivity, monotonicity, convexity of the averaged deformations).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "entgup/gup_models.hpp"

using namespace entgup;

namespace {

bool within_ulps(double a, double b, int ulps) {
    if (a == b) return true;
    double lo = b;
    double hi = b;
    for (int i = 0; i < ulps; ++i) {
        lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
        hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    }
    return a >= lo && a <= hi;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

GupModel random_model(std::mt19937_64& rng, bool include_hup = false) {
    std::uniform_int_distribution<int> pick(include_hup ? 0 : 1, 4);
    const double param = log_uniform(rng, 1e-3, 1e3);
    switch (pick(rng)) {
        case 0: return GupModel::hup();
        case 1: return GupModel::kmm(param);
        case 2: return GupModel::adv(param);
        case 3: return GupModel::pedram(param);
        default: return GupModel::exponential(param);
    }
}

// Stats kept strictly inside the Pedram domain beta <p^2> < 1, and small
// enough that the exponential family stays finite.
MomentumStats random_stats_for(const GupModel& m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    if (m.kind == GupKind::Pedram || m.kind == GupKind::Exp) {
        const double cap =
            (m.kind == GupKind::Pedram ? 0.9 : 40.0) / m.param;
        const double dp2 = u(rng) * 0.6 * cap;
        const double mean2 = u(rng) * 0.35 * cap;
        return MomentumStats(std::sqrt(dp2), std::sqrt(mean2));
    }
    return MomentumStats(u(rng) * 3.0, (u(rng) - 0.5) * 4.0);
}

}  // namespace

TEST_CASE("commutator factors at hand-checked points") {
    CHECK(commutator_factor(GupModel::hup(), 17.0) == 1.0);
    CHECK(commutator_factor(GupModel::kmm(0.5), 2.0) == doctest::Approx(3.0));
    CHECK(commutator_factor(GupModel::adv(0.5), 1.0) == doctest::Approx(1.0));
    CHECK(commutator_factor(GupModel::adv(0.5), -1.0) == doctest::Approx(3.0));
    CHECK(commutator_factor(GupModel::pedram(0.25), 1.0) ==
          doctest::Approx(4.0 / 3.0));
    CHECK(commutator_factor(GupModel::exponential(1.0), 1.0) ==
          doctest::Approx(std::exp(1.0)));
}

TEST_CASE("pedram factor pole raises a domain error naming the pole") {
    CHECK_THROWS_AS(commutator_factor(GupModel::pedram(1.0), 1.0),
                    std::domain_error);
    CHECK_THROWS_WITH_AS(commutator_factor(GupModel::pedram(4.0), 0.5),
                         doctest::Contains("pole"), std::domain_error);
}

TEST_CASE("kind names round-trip") {
    for (GupKind k : {GupKind::Hup, GupKind::Kmm, GupKind::Adv,
                      GupKind::Pedram, GupKind::Exp}) {
        CHECK(gup_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(gup_kind_from_string("gaussian"), std::invalid_argument);
}

TEST_CASE("momentum stats keep the three moments consistent") {
    const MomentumStats s(4.0, 3.0);
    CHECK(s.mean_p_sq() == doctest::Approx(25.0));
    const MomentumStats t = MomentumStats::from_mean_and_mean_sq(3.0, 25.0);
    CHECK(t.dp() == doctest::Approx(4.0));
    CHECK_THROWS_AS(MomentumStats::from_mean_and_mean_sq(3.0, 9.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(MomentumStats(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(MomentumStats(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("gamma term at hand-checked points") {
    const MomentumStats s(1.0, 3.0);
    CHECK(gamma_term(GupModel::hup(), s) == 0.0);
    CHECK(gamma_term(GupModel::kmm(2.0), s) == doctest::Approx(18.0));
    CHECK(gamma_term(GupModel::pedram(0.1), MomentumStats(1.0, 2.0)) ==
          doctest::Approx(0.4));
    CHECK(gamma_term(GupModel::exponential(0.3), MomentumStats(1.0, -2.0)) ==
          doctest::Approx(1.2));
    CHECK(gamma_term(GupModel::adv(0.5), MomentumStats(1.0, 2.0)) ==
          doctest::Approx(4.0));
}

TEST_CASE("pair bound at hand-checked points") {
    CHECK(entangled_pair_rhs(GupModel::hup(), 3.7, 0.0, 1.0) == 0.25);
    CHECK(entangled_pair_rhs(GupModel::kmm(1.0), 1.0, 0.0, 1.0) ==
          doctest::Approx(0.5));
    CHECK(entangled_pair_rhs(GupModel::kmm(1.0), 1.0, 0.5, 1.0) ==
          doctest::Approx(0.625));
    CHECK(entangled_pair_rhs(GupModel::adv(1.0), 1.0, 0.0, 1.0) ==
          doctest::Approx(1.25));
    CHECK(entangled_pair_rhs(GupModel::pedram(0.5), 1.0, 0.0, 1.0) ==
          doctest::Approx(0.5));
    CHECK(entangled_pair_rhs(GupModel::exponential(1.0), 1.0, 0.0, 1.0) ==
          doctest::Approx(std::exp(1.0) / 4.0));
    CHECK(entangled_pair_rhs(GupModel::exponential(0.0), 1.0, 0.0, 1.0) ==
          doctest::Approx(0.25));
    // hbar scales linearly
    CHECK(entangled_pair_rhs(GupModel::kmm(1.0), 1.0, 0.0, 2.0) ==
          doctest::Approx(1.0));
}

TEST_CASE("pedram pair bound names its admissible spread range") {
    CHECK_THROWS_WITH_AS(entangled_pair_rhs(GupModel::pedram(1.0), 1.0, 0.0, 1.0),
                         doctest::Contains("admissible"), std::domain_error);
    CHECK_THROWS_AS(entangled_pair_rhs(GupModel::pedram(0.5), 1.0, 0.5, 1.0),
                    std::domain_error);
}

TEST_CASE("single-particle bound at hand-checked points") {
    CHECK(single_particle_rhs(GupModel::hup(), MomentumStats(1.0, 0.0), 1.0) ==
          0.5);
    CHECK(single_particle_rhs(GupModel::kmm(1.0), MomentumStats(1.0, 0.0),
                              1.0) == doctest::Approx(1.0));
    // adv keeps its linear term: (1 + 1 + 1 - 1)/2 at alpha 0.5, dp = mean = 1
    CHECK(single_particle_rhs(GupModel::adv(0.5), MomentumStats(1.0, 1.0),
                              1.0) == doctest::Approx(1.0));
}

TEST_CASE("single-particle bound is exactly twice the co-moving pair bound") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 300; ++trial) {
        const GupModel m = random_model(rng, /*include_hup=*/true);
        const MomentumStats stats = random_stats_for(m, rng);
        const double hbar = log_uniform(rng, 0.1, 10.0);
        const BoundContext ctx(m, stats, hbar, /*opposite_momenta=*/false);
        const double single = single_particle_rhs(m, stats, hbar);
        const double pair = entangled_pair_rhs(ctx);
        CHECK(within_ulps(single, 2.0 * pair, 4));
    }
}

TEST_CASE("opposite momenta only matter for the linear family") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const GupModel m = random_model(rng, /*include_hup=*/true);
        const MomentumStats stats = random_stats_for(m, rng);
        const BoundContext anti(m, stats, 1.0, true);
        const BoundContext co(m, stats, 1.0, false);
        const double diff = entangled_pair_rhs(co) - entangled_pair_rhs(anti);
        if (m.kind == GupKind::Adv) {
            CHECK(diff == doctest::Approx(-0.5 * m.param * stats.mean_p()));
        } else {
            CHECK(diff == 0.0);
        }
    }
}

TEST_CASE("context caches the gamma of its stats") {
    const GupModel m = GupModel::kmm(2.0);
    const MomentumStats s(1.0, 3.0);
    const BoundContext ctx(m, s);
    CHECK(ctx.gamma() == gamma_term(m, s));
    CHECK(ctx.hbar() == 1.0);
    CHECK(ctx.opposite_momenta());
    CHECK_THROWS_AS(BoundContext(m, s, 0.0), std::invalid_argument);
}

TEST_CASE("all bounds collapse to the undeformed ones as the parameter vanishes") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (GupKind kind :
         {GupKind::Kmm, GupKind::Adv, GupKind::Pedram, GupKind::Exp}) {
        for (int trial = 0; trial < 50; ++trial) {
            const GupModel m = GupModel::make(kind, 1e-16);
            const double p = u(rng);
            const MomentumStats stats(u(rng), u(rng) - 1.5);
            CHECK(std::abs(commutator_factor(m, p) - 1.0) <= 1e-14);
            CHECK(std::abs(entangled_pair_rhs(m, stats.dp(),
                                              gamma_term(m, stats), 1.0) -
                           0.25) <= 1e-14);
            CHECK(std::abs(single_particle_rhs(m, stats, 1.0) - 0.5) <= 1e-14);
        }
    }
}

TEST_CASE("the linear family factor is positive for every momentum") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> p(-1e3, 1e3);
    for (int trial = 0; trial < 2000; ++trial) {
        const double alpha = trial % 10 == 0 ? 0.0 : log_uniform(rng, 1e-6, 1e3);
        CHECK(commutator_factor(GupModel::adv(alpha), p(rng)) > 0.0);
    }
}

TEST_CASE("pair bound is nondecreasing in the spread") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const GupModel m = random_model(rng, /*include_hup=*/true);
        double cap = 10.0;  // largest spread to probe
        if (m.kind == GupKind::Pedram) cap = 0.999 / std::sqrt(m.param);
        const double a = u(rng) * cap;
        const double b = u(rng) * cap;
        const double dp_lo = std::max(1e-6, std::min(a, b));
        const double dp_hi = std::max({1e-6, a, b});
        CHECK(entangled_pair_rhs(m, dp_hi, 0.0, 1.0) >=
              entangled_pair_rhs(m, dp_lo, 0.0, 1.0));
    }
}

// Averaging the deformation over any momentum distribution can only exceed
// the deformation of the averaged moments (the convex families).
TEST_CASE("averaged pedram and exp factors dominate their moment form") {
    std::mt19937_64 rng(271828);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double beta = 0.01 + u01(rng) * 0.99;
        const int atoms = 2 + static_cast<int>(u01(rng) * 6);
        const double p_cap = 0.99 / std::sqrt(beta);
        std::vector<double> p(atoms), w(atoms);
        double wsum = 0.0;
        for (int i = 0; i < atoms; ++i) {
            p[i] = (2.0 * u01(rng) - 1.0) * p_cap;
            w[i] = 0.05 + u01(rng);
            wsum += w[i];
        }
        double mean_sq = 0.0;
        double mean_pedram = 0.0;
        double mean_exp = 0.0;
        for (int i = 0; i < atoms; ++i) {
            const double weight = w[i] / wsum;
            mean_sq += weight * p[i] * p[i];
            mean_pedram +=
                weight * commutator_factor(GupModel::pedram(beta), p[i]);
            mean_exp +=
                weight * commutator_factor(GupModel::exponential(beta), p[i]);
        }
        CHECK(mean_pedram >= (1.0 / (1.0 - beta * mean_sq)) * (1.0 - 1e-12));
        CHECK(mean_exp >= std::exp(beta * mean_sq) * (1.0 - 1e-12));
    }
}

TEST_CASE("bound curve samples endpoints and hand-checked values") {
    const auto hup = bound_curve(GupModel::hup(), 0.0, 1.0, 1.0, 2.0, 2);
    REQUIRE(hup.size() == 2);
    CHECK(hup[0].dp == 1.0);
    CHECK(hup[0].dq_lower == doctest::Approx(0.25));
    CHECK(hup[1].dp == 2.0);
    CHECK(hup[1].dq_lower == doctest::Approx(0.125));

    const auto kmm = bound_curve(GupModel::kmm(1.0), 0.0, 1.0, 1.0, 2.0, 3);
    REQUIRE(kmm.size() == 3);
    CHECK(kmm[0].dq_lower == doctest::Approx(0.5));
    CHECK(kmm[1].dp == doctest::Approx(1.5));
    CHECK(kmm[1].dq_lower == doctest::Approx(0.8125 / 1.5));
    CHECK(kmm[2].dq_lower == doctest::Approx(0.625));

    const auto ex = bound_curve(GupModel::exponential(1.0), 0.0, 1.0, 1.0, 2.0, 2);
    CHECK(ex[0].dq_lower == doctest::Approx(std::exp(1.0) / 4.0));
}

TEST_CASE("bound curve refuses ranges crossing the pedram pole") {
    CHECK_THROWS_WITH_AS(
        bound_curve(GupModel::pedram(1.0), 0.0, 1.0, 0.5, 1.5, 10),
        doctest::Contains("admissible"), std::domain_error);
    CHECK_THROWS_AS(bound_curve(GupModel::kmm(1.0), 0.0, 1.0, 2.0, 1.0, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(bound_curve(GupModel::kmm(1.0), 0.0, 1.0, 1.0, 2.0, 1),
                    std::invalid_argument);
}

TEST_CASE("model factories reject bad parameters") {
    CHECK_THROWS_AS(GupModel::kmm(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(GupModel::adv(std::nan("")), std::invalid_argument);
}
