#include "entgup/pair_state.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "entgup/util.hpp"

namespace entgup {

namespace {

constexpr double kEdgeThreshold = 1e-12;
constexpr int kEdgeCells = 4;
// Slack for the inequality flags; the checked relations are exact theorems,
// so anything beyond quadrature round-off is a real violation.
constexpr double kCheckSlack = 1e-10;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double abs2(const std::complex<double>& c) {
    return c.real() * c.real() + c.imag() * c.imag();
}

// FFTW's planner is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::complex<double>> fft2(
    const std::vector<std::complex<double>>& in, int n) {
    std::vector<std::complex<double>> out(in.size());
    // FFTW_ESTIMATE never touches the arrays, so the input stays intact and
    // the const_cast is safe.
    auto* in_ptr = reinterpret_cast<fftw_complex*>(
        const_cast<std::complex<double>*>(in.data()));
    auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_2d(n, n, in_ptr, out_ptr, FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    if (plan == nullptr) {
        throw std::runtime_error("fftw failed to create a 2d plan");
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

// Probability weights on the n x n grid, normalized to sum exactly to the
// pairwise-summed total (so downstream moments never see the raw scale).
std::vector<double> normalized_weights(
    const std::vector<std::complex<double>>& amp) {
    std::vector<double> w(amp.size());
    for (size_t i = 0; i < amp.size(); ++i) w[i] = abs2(amp[i]);
    const double total = pairwise_sum(w);
    for (auto& x : w) x /= total;
    return w;
}

// Marginal over the minor (second) index: m1[i] = sum_j w[i][j].
std::vector<double> marginal_major(const std::vector<double>& w, int n) {
    std::vector<double> m(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        m[static_cast<size_t>(i)] =
            pairwise_sum(w.data() + static_cast<size_t>(i) * n,
                         static_cast<size_t>(n));
    }
    return m;
}

// Marginal over the major (first) index: m2[j] = sum_i w[i][j].
std::vector<double> marginal_minor(const std::vector<double>& w, int n) {
    std::vector<double> col(static_cast<size_t>(n));
    std::vector<double> m(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            col[static_cast<size_t>(i)] =
                w[static_cast<size_t>(i) * n + static_cast<size_t>(j)];
        }
        m[static_cast<size_t>(j)] = pairwise_sum(col);
    }
    return m;
}

template <typename Coord>
double marginal_mean(const std::vector<double>& marg, Coord coord) {
    std::vector<double> buf(marg.size());
    for (size_t i = 0; i < marg.size(); ++i) {
        buf[i] = marg[i] * coord(static_cast<int>(i));
    }
    return pairwise_sum(buf);
}

template <typename Coord>
double marginal_var(const std::vector<double>& marg, Coord coord,
                    double mean) {
    std::vector<double> buf(marg.size());
    for (size_t i = 0; i < marg.size(); ++i) {
        const double d = coord(static_cast<int>(i)) - mean;
        buf[i] = marg[i] * d * d;
    }
    return pairwise_sum(buf);
}

// Central mixed moment <(c1 - m1)(c2 - m2)>, inner reduction along the minor
// index first. The centered form keeps product states at the round-off floor
// instead of cancelling two large numbers.
template <typename Coord>
double central_cross(const std::vector<double>& w, int n, Coord c1, double m1,
                     Coord c2, double m2) {
    std::vector<double> inner(static_cast<size_t>(n));
    std::vector<double> buf(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double* row = w.data() + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            buf[static_cast<size_t>(j)] = row[j] * (c2(j) - m2);
        }
        inner[static_cast<size_t>(i)] =
            pairwise_sum(buf) * (c1(i) - m1);
    }
    return pairwise_sum(inner);
}

struct AllMoments {
    Moments m;
    double cq;
    double cp;
};

int wrapped_freq(int m, int n) { return m < n / 2 ? m : m - n; }

AllMoments compute_all(const PairState& s) {
    const int n = s.grid().n;
    const auto xq = [&](int j) { return s.grid().x(j); };
    const double p_unit = s.hbar() * s.grid().dk();
    const auto pp = [&](int m) {
        return p_unit * static_cast<double>(wrapped_freq(m, n));
    };

    const auto wq = normalized_weights(s.amplitudes());
    const auto wq1 = marginal_major(wq, n);
    const auto wq2 = marginal_minor(wq, n);

    const auto spectrum = fft2(s.amplitudes(), n);
    const auto wp = normalized_weights(spectrum);
    const auto wp1 = marginal_major(wp, n);
    const auto wp2 = marginal_minor(wp, n);

    AllMoments out{};
    out.m.mean_q1 = marginal_mean(wq1, xq);
    out.m.mean_q2 = marginal_mean(wq2, xq);
    out.m.var_q1 = marginal_var(wq1, xq, out.m.mean_q1);
    out.m.var_q2 = marginal_var(wq2, xq, out.m.mean_q2);
    out.m.mean_p1 = marginal_mean(wp1, pp);
    out.m.mean_p2 = marginal_mean(wp2, pp);
    out.m.var_p1 = marginal_var(wp1, pp, out.m.mean_p1);
    out.m.var_p2 = marginal_var(wp2, pp, out.m.mean_p2);
    out.cq = central_cross(wq, n, xq, out.m.mean_q1, xq, out.m.mean_q2);
    out.cp = central_cross(wp, n, pp, out.m.mean_p1, pp, out.m.mean_p2);
    return out;
}

}  // namespace

GridSpec::GridSpec(double x_min_, double x_max_, int n_)
    : x_min(x_min_), x_max(x_max_), n(n_) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
        throw std::invalid_argument("grid needs finite x_min < x_max");
    }
    if (n < 64 || !is_power_of_two(n)) {
        std::ostringstream msg;
        msg << "grid size must be a power of two >= 64, got " << n;
        throw std::invalid_argument(msg.str());
    }
}

double GridSpec::dk() const {
    return 2.0 * std::numbers::pi / (static_cast<double>(n) * dx());
}

PairState::PairState(GridSpec grid, std::vector<std::complex<double>> psi,
                     double hbar)
    : grid_(grid), psi_(std::move(psi)), hbar_(hbar) {
    if (!std::isfinite(hbar_) || hbar_ <= 0.0) {
        throw std::invalid_argument("hbar must be positive");
    }
    const size_t expected =
        static_cast<size_t>(grid_.n) * static_cast<size_t>(grid_.n);
    if (psi_.size() != expected) {
        std::ostringstream msg;
        msg << "amplitude grid has " << psi_.size() << " entries, expected "
            << expected;
        throw std::invalid_argument(msg.str());
    }

    std::vector<double> sq(psi_.size());
    for (size_t i = 0; i < psi_.size(); ++i) sq[i] = abs2(psi_[i]);
    const double norm = pairwise_sum(sq) * grid_.dx() * grid_.dx();
    if (!std::isfinite(norm) || norm <= 0.0) {
        throw std::invalid_argument(
            "amplitudes are not normalizable (zero or non-finite norm)");
    }
    // Rescaling data that is already normalized to rounding error would only
    // perturb the low bits, so leave such input untouched. This keeps the
    // save/load cycle for fixtures exact.
    if (std::abs(norm - 1.0) > 1e-13) {
        const double scale = 1.0 / std::sqrt(norm);
        for (auto& a : psi_) a *= scale;
    }

    // Boundary frame must be numerically empty or the periodic transform
    // would alias momentum content.
    const int n = grid_.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const bool edge = i < kEdgeCells || i >= n - kEdgeCells ||
                              j < kEdgeCells || j >= n - kEdgeCells;
            if (!edge) continue;
            worst = std::max(worst, std::abs(at(i, j)));
        }
    }
    if (worst > kEdgeThreshold) {
        const double mid = 0.5 * (grid_.x_min + grid_.x_max);
        const double half = grid_.x_max - grid_.x_min;
        std::ostringstream msg;
        msg << "grid too small: amplitude " << worst << " within "
            << kEdgeCells << " cells of the boundary exceeds "
            << kEdgeThreshold << "; retry with a wider box, e.g. ["
            << mid - half << ", " << mid + half << "]";
        throw std::invalid_argument(msg.str());
    }
}

PairState PairState::product(const GridSpec& grid, double center1,
                             double sigma1, double k1, double center2,
                             double sigma2, double k2, double hbar) {
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) {
        throw std::invalid_argument("packet widths must be positive");
    }
    const int n = grid.n;
    std::vector<std::complex<double>> phi1(static_cast<size_t>(n));
    std::vector<std::complex<double>> phi2(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double x = grid.x(j);
        const double d1 = x - center1;
        const double d2 = x - center2;
        phi1[static_cast<size_t>(j)] =
            std::polar(std::exp(-d1 * d1 / (4.0 * sigma1 * sigma1)), k1 * x);
        phi2[static_cast<size_t>(j)] =
            std::polar(std::exp(-d2 * d2 / (4.0 * sigma2 * sigma2)), k2 * x);
    }
    std::vector<std::complex<double>> psi(static_cast<size_t>(n) *
                                          static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            psi[static_cast<size_t>(i) * n + static_cast<size_t>(j)] =
                phi1[static_cast<size_t>(i)] * phi2[static_cast<size_t>(j)];
        }
    }
    return PairState(grid, std::move(psi), hbar);
}

PairState PairState::correlated(const GridSpec& grid, double sigma_plus,
                                double sigma_minus, double k_total,
                                double hbar) {
    if (!(sigma_plus > 0.0) || !(sigma_minus > 0.0)) {
        throw std::invalid_argument("packet widths must be positive");
    }
    const int n = grid.n;
    const double cu = 1.0 / (8.0 * sigma_plus * sigma_plus);
    const double cv = 1.0 / (8.0 * sigma_minus * sigma_minus);
    std::vector<std::complex<double>> psi(static_cast<size_t>(n) *
                                          static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x1 = grid.x(i);
        for (int j = 0; j < n; ++j) {
            const double x2 = grid.x(j);
            // u^2/(4 sp^2) = (x1+x2)^2/(8 sp^2) and likewise for v; writing
            // them this way keeps the array exactly symmetric under i <-> j.
            const double sum = x1 + x2;
            const double diff = x1 - x2;
            const double env = std::exp(-cu * sum * sum - cv * diff * diff);
            psi[static_cast<size_t>(i) * n + static_cast<size_t>(j)] =
                std::polar(env, 0.5 * k_total * sum);
        }
    }
    return PairState(grid, std::move(psi), hbar);
}

PairState PairState::from_amplitudes(const GridSpec& grid,
                                     std::vector<std::complex<double>> psi,
                                     double hbar) {
    return PairState(grid, std::move(psi), hbar);
}

Moments moments(const PairState& state) { return compute_all(state).m; }

Qcf qcf(const PairState& state) {
    const AllMoments all = compute_all(state);
    return {all.cq, all.cp};
}

UncertaintyReport check_inequalities(const PairState& state) {
    const AllMoments all = compute_all(state);
    const auto slack = [](double a, double b) {
        return kCheckSlack * (1.0 + std::abs(a) + std::abs(b));
    };

    UncertaintyReport r{};
    r.dq1 = std::sqrt(all.m.var_q1);
    r.dq2 = std::sqrt(all.m.var_q2);
    r.dp1 = std::sqrt(all.m.var_p1);
    r.dp2 = std::sqrt(all.m.var_p2);
    r.cq = all.cq;
    r.cp = all.cp;

    const double sum_q = all.m.var_q1 + all.m.var_q2;
    const double sum_p = all.m.var_p1 + all.m.var_p2;
    r.schwarz_q_ok = sum_q >= 2.0 * all.cq - slack(sum_q, all.cq);
    r.schwarz_p_ok = sum_p >= 2.0 * all.cp - slack(sum_p, all.cp);

    r.lhs_pair = sum_q * sum_p;
    r.rhs_pair = 0.25 * state.hbar() * state.hbar();
    r.pair_product_ok = r.lhs_pair >= r.rhs_pair - slack(r.lhs_pair, r.rhs_pair);

    r.symmetric_applicable =
        std::abs(r.dq1 - r.dq2) <= 1e-8 && std::abs(r.dp1 - r.dp2) <= 1e-8;
    r.lhs_symmetric = r.dq1 * r.dp1;
    r.rhs_symmetric = 0.25 * state.hbar();
    r.symmetric_ok =
        !r.symmetric_applicable ||
        r.lhs_symmetric >= r.rhs_symmetric -
                               slack(r.lhs_symmetric, r.rhs_symmetric);
    return r;
}

}  // namespace entgup
