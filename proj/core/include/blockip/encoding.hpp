#pragma once

#include <vector>

#include "blockip/matrix.hpp"

namespace blockip {

/// Binary encoding row of a nonnegative integer.
///
/// eta(x) = ceil(log2(x+1)) + 1 bits, least significant first; the top bit
/// is 0 by construction (it is the slack position the banded constraint
/// blocks need).  enc(0) = (0).
struct BitRow {
  std::vector<int> bits;  // values in {0,1}, little-endian

  Index eta() const { return static_cast<Index>(bits.size()); }
  /// Sum of bits[i] * 2^i.
  Int value() const;

  bool operator==(const BitRow& other) const { return bits == other.bits; }
};

/// Number of bits eta(x) = ceil(log2(x+1)) + 1 used by enc(x).  x >= 0.
Index enc_width(const Int& x);

/// Little-endian binary encoding with a zero top bit.  Throws for x < 0.
BitRow enc(const Int& x);

/// enc(x) reversed (most significant first).
BitRow enc_reversed(const Int& x);

/// Little-endian base-delta digits of x using exactly `width` digits, so
/// x = sum digits[i] * delta^i.  Requires 0 <= x < delta^width and delta >= 2.
std::vector<Int> digits(const Int& x, const Int& delta, Index width);

/// The banded doubling matrix E_t(delta) in Z^{(t-1) x t}: delta at (i,i),
/// -1 at (i,i+1).  Its integer kernel is generated by (1, delta, ...,
/// delta^{t-1}).  Requires t >= 2.
IntMatrix encoding_matrix(Index t, const Int& delta);

/// The reversed variant in Z^{(t-1) x t}: -1 at (i,i), 2 at (i,i+1); kernel
/// generated by (2^{t-1}, ..., 2, 1).  Requires t >= 2.
IntMatrix encoding_matrix_reversed(Index t);

}  // namespace blockip
