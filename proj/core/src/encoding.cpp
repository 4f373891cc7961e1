#include "blockip/encoding.hpp"

#include <algorithm>
#include <stdexcept>

namespace blockip {

Int BitRow::value() const {
  Int v = 0;
  for (std::size_t i = bits.size(); i-- > 0;) v = 2 * v + bits[i];
  return v;
}

Index enc_width(const Int& x) {
  if (x < 0) throw std::invalid_argument("enc_width: negative value");
  if (x == 0) return 1;
  // ceil(log2(x+1)) equals the bit length of x for x >= 1.
  return static_cast<Index>(mpz_sizeinbase(x.get_mpz_t(), 2)) + 1;
}

BitRow enc(const Int& x) {
  if (x < 0) throw std::invalid_argument("enc: negative value");
  const Index width = enc_width(x);
  BitRow row;
  row.bits.reserve(static_cast<std::size_t>(width));
  for (Index i = 0; i < width; ++i)
    row.bits.push_back(
        mpz_tstbit(x.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) ? 1 : 0);
  return row;
}

BitRow enc_reversed(const Int& x) {
  BitRow row = enc(x);
  std::reverse(row.bits.begin(), row.bits.end());
  return row;
}

std::vector<Int> digits(const Int& x, const Int& delta, Index width) {
  if (delta < 2) throw std::invalid_argument("digits: delta must be >= 2");
  if (width < 0) throw std::invalid_argument("digits: negative width");
  if (x < 0) throw std::invalid_argument("digits: negative value");
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(width));
  Int rest = x;
  for (Index i = 0; i < width; ++i) {
    out.push_back(rest % delta);
    rest /= delta;
  }
  if (rest != 0)
    throw std::invalid_argument("digits: value does not fit in width digits");
  return out;
}

IntMatrix encoding_matrix(Index t, const Int& delta) {
  if (t < 2) throw std::invalid_argument("encoding_matrix: t must be >= 2");
  IntMatrix e(t - 1, t);
  for (Index i = 1; i <= t - 1; ++i) {
    e.set(i, i, delta);
    e.set(i, i + 1, -1);
  }
  return e;
}

IntMatrix encoding_matrix_reversed(Index t) {
  if (t < 2)
    throw std::invalid_argument("encoding_matrix_reversed: t must be >= 2");
  IntMatrix e(t - 1, t);
  for (Index i = 1; i <= t - 1; ++i) {
    e.set(i, i, -1);
    e.set(i, i + 1, 2);
  }
  return e;
}

}  // namespace blockip
