#pragma once

#include <iosfwd>
#include <string>

#include "entgup/pair_state.hpp"

namespace entgup {

// Binary pair-state fixtures, little-endian:
//
//   bytes 0..7   magic "EGPAIR01" (doubles as the format version)
//   u32          n
//   f64 x3       x_min, x_max, hbar
//   f64 x 2n^2   amplitudes, row-major (x1 index major), re then im
//
// load_state revalidates through the PairState constructor, so a tampered or
// truncated fixture fails loudly.

inline constexpr char kStateMagic[8] = {'E', 'G', 'P', 'A', 'I', 'R', '0', '1'};

void save_state(const PairState& state, std::ostream& out);
void save_state(const PairState& state, const std::string& path);

PairState load_state(std::istream& in);
PairState load_state(const std::string& path);

}  // namespace entgup
