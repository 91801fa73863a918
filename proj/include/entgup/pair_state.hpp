#pragma once

#include <complex>
#include <vector>

// Discretized two-particle wavefunctions on a square grid and the covariance
// inequalities their moments must satisfy.
//
// Grid conventions
//   psi(x1, x2) lives on n x n points x_j = x_min + j dx, dx = (x_max - x_min)/n
//   (right endpoint excluded, periodic Fourier convention). Amplitudes are
//   stored row-major with the x1 index major.
//
//   Normalization is the grid quadrature sum |psi|^2 dx^2 = 1; factories
//   normalize numerically, so analytic prefactors never need to be exact.
//
//   Position moments are plain quadrature sums. Momentum moments use the
//   discrete Fourier transform per axis (forward sign e^{-i k x}); the
//   momentum carried by bin m is hbar k_m with k_m = 2 pi/(n dx) times the
//   usual wrapped frequency (m for m < n/2, m - n above). This is only
//   faithful while the state is negligible near the box edges, hence the
//   boundary-decay requirement below.
//
//   All quadrature reductions use pairwise summation in a fixed order, so
//   results do not depend on how the grid might be chunked.
//
// Validity requirements enforced at construction
//   - n is a power of two, n >= 64,
//   - |psi| <= 1e-12 everywhere within 4 cells of each boundary (otherwise the
//     box is too small for the packet and momentum moments would alias),
//   - quadrature norm within 1e-10 of 1 after normalization.

namespace entgup {

struct GridSpec {
    double x_min;
    double x_max;
    int n;

    GridSpec(double x_min, double x_max, int n);

    double dx() const { return (x_max - x_min) / static_cast<double>(n); }
    double dk() const;  // momentum-grid spacing 2 pi / (n dx)
    double x(int j) const { return x_min + dx() * static_cast<double>(j); }
};

class PairState {
public:
    // Product of two Gaussian packets, exp(-(x-c)^2/(4 sigma^2)) e^{i k x}
    // per particle, so dq_i = sigma_i, dp_i = hbar/(2 sigma_i), <p_i> = hbar k_i.
    static PairState product(const GridSpec& grid, double center1,
                             double sigma1, double k1, double center2,
                             double sigma2, double k2, double hbar = 1.0);

    // Correlated Gaussian in the rotated coordinates u = (x1+x2)/sqrt(2),
    // v = (x1-x2)/sqrt(2):
    //     psi ~ exp(-u^2/(4 sp^2) - v^2/(4 sm^2)) e^{i k_total u / sqrt(2)},
    // entangled iff sp != sm, with <P1> + <P2> = hbar k_total split evenly.
    static PairState correlated(const GridSpec& grid, double sigma_plus,
                                double sigma_minus, double k_total,
                                double hbar = 1.0);

    // Adopts raw amplitudes (row-major, size n*n), normalizes them and
    // enforces the validity requirements. Used for superpositions and by the
    // fixture loader.
    static PairState from_amplitudes(const GridSpec& grid,
                                     std::vector<std::complex<double>> psi,
                                     double hbar = 1.0);

    const GridSpec& grid() const { return grid_; }
    double hbar() const { return hbar_; }
    const std::vector<std::complex<double>>& amplitudes() const {
        return psi_;
    }
    const std::complex<double>& at(int i, int j) const {
        return psi_[static_cast<size_t>(i) * static_cast<size_t>(grid_.n) +
                    static_cast<size_t>(j)];
    }

private:
    PairState(GridSpec grid, std::vector<std::complex<double>> psi,
              double hbar);

    GridSpec grid_;
    std::vector<std::complex<double>> psi_;
    double hbar_;
};

struct Moments {
    double mean_q1, mean_q2, var_q1, var_q2;
    double mean_p1, mean_p2, var_p1, var_p2;
};

Moments moments(const PairState& state);

// Quantum correlation functions, the mixed central second moments
//   cq = <Q1 Q2> - <Q1><Q2>,   cp = <P1 P2> - <P1><P2>.
struct Qcf {
    double cq;
    double cp;
};

Qcf qcf(const PairState& state);

// Checks the covariance inequalities a valid state must satisfy. Flags are
// evaluated with absolute slack 1e-10 (scaled by the magnitudes involved);
// a genuine violation beyond that slack reports false rather than being
// absorbed.
struct UncertaintyReport {
    double dq1, dq2, dp1, dp2;
    double cq, cp;

    bool schwarz_q_ok;  // dq1^2 + dq2^2 >= 2 cq
    bool schwarz_p_ok;  // dp1^2 + dp2^2 >= 2 cp

    double lhs_pair;  // (dq1^2 + dq2^2)(dp1^2 + dp2^2)
    double rhs_pair;  // hbar^2 / 4
    bool pair_product_ok;

    // Symmetric-state bound dQ dP >= hbar/4; only meaningful when the two
    // particles share spreads (|dq1 - dq2| and |dp1 - dp2| below 1e-8).
    bool symmetric_applicable;
    double lhs_symmetric;  // dq1 * dp1
    double rhs_symmetric;  // hbar / 4
    bool symmetric_ok;     // true whenever not applicable
};

UncertaintyReport check_inequalities(const PairState& state);

}  // namespace entgup
