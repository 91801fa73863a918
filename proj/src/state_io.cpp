#include "entgup/state_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace entgup {

static_assert(std::endian::native == std::endian::little,
              "fixture format assumes a little-endian host");

namespace {

template <typename T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* what) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) {
        throw std::runtime_error(std::string("state fixture truncated while "
                                             "reading ") +
                                 what);
    }
    return v;
}

}  // namespace

void save_state(const PairState& state, std::ostream& out) {
    out.write(kStateMagic, sizeof(kStateMagic));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(state.grid().n));
    put<double>(out, state.grid().x_min);
    put<double>(out, state.grid().x_max);
    put<double>(out, state.hbar());
    for (const auto& a : state.amplitudes()) {
        put<double>(out, a.real());
        put<double>(out, a.imag());
    }
    if (!out) throw std::runtime_error("failed to write state fixture");
}

void save_state(const PairState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for write");
    save_state(state, out);
}

PairState load_state(std::istream& in) {
    char magic[sizeof(kStateMagic)] = {};
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kStateMagic, sizeof(magic)) != 0) {
        throw std::runtime_error(
            "not a pair-state fixture (bad or missing EGPAIR01 magic)");
    }
    const auto n = get<std::uint32_t>(in, "grid size");
    const double x_min = get<double>(in, "x_min");
    const double x_max = get<double>(in, "x_max");
    const double hbar = get<double>(in, "hbar");
    const GridSpec grid(x_min, x_max, static_cast<int>(n));
    std::vector<std::complex<double>> psi(static_cast<size_t>(n) *
                                          static_cast<size_t>(n));
    for (auto& a : psi) {
        const double re = get<double>(in, "amplitudes");
        const double im = get<double>(in, "amplitudes");
        a = {re, im};
    }
    return PairState::from_amplitudes(grid, std::move(psi), hbar);
}

PairState load_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return load_state(in);
}

}  // namespace entgup
