#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <vector>

namespace entgup {

// Pairwise (cascade) summation: deterministic for a fixed element order and
// with O(log n) error growth, independent of how callers might chunk the
// underlying grid.
inline double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

// Fixed 12-significant-digit rendering, locale-independent, identical bytes
// for identical doubles. Shared by everything that prints numbers.
inline std::string format_sig12(double value) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), value,
                             std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

}  // namespace entgup
