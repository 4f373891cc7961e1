#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace blockip {

/// Exact integer scalar.  All matrix entries, right-hand sides and bounds in
/// this library are arbitrary precision; nothing in the public contract
/// assumes machine-word magnitudes.
using Int = mpz_class;

using Index = std::int64_t;

/// Sparse exact-integer matrix with 1-based row/column indices.
///
/// Indices are 1-based throughout the library and in all serialized formats,
/// matching the conventions of the constructions implemented here.  Entries
/// are kept in a row-major ordered map, so iteration (and therefore
/// serialization) is deterministic.  Storing a zero erases the entry.
class IntMatrix {
public:
  using EntryMap = std::map<std::pair<Index, Index>, Int>;

  IntMatrix() = default;
  IntMatrix(Index rows, Index cols);

  /// Dense construction helper, mostly for tests and small fixtures:
  /// row-major list of rows, all of equal length.
  static IntMatrix from_rows(
      std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  /// Entry accessor; returns 0 for absent entries.  Throws std::out_of_range
  /// for indices outside [1,rows] x [1,cols].
  const Int& at(Index i, Index j) const;

  /// Sets entry (i,j); a zero value erases the entry.
  void set(Index i, Index j, Int value);

  bool empty() const { return entries_.empty(); }
  std::size_t entry_count() const { return entries_.size(); }

  /// Largest absolute entry value; 0 for a matrix without entries.
  Int max_norm() const;

  IntMatrix transpose() const;

  const EntryMap& entries() const { return entries_; }

  bool operator==(const IntMatrix& other) const;
  bool operator!=(const IntMatrix& other) const { return !(*this == other); }

  /// Multiplies by an integer vector of length cols().
  std::vector<Int> apply(const std::vector<Int>& x) const;

  std::string to_string() const;

private:
  void check_range(Index i, Index j) const;

  Index rows_ = 0;
  Index cols_ = 0;
  EntryMap entries_;
};

/// A 1-based permutation of {1,...,n}.
class Permutation {
public:
  Permutation() = default;
  /// Identity permutation on n elements.
  explicit Permutation(Index n);
  /// image[i-1] is the new position of element i.  Must be a bijection.
  static Permutation from_image(std::vector<Index> image);

  Index size() const { return static_cast<Index>(image_.size()); }
  Index operator()(Index i) const;
  Permutation inverse() const;

  const std::vector<Index>& image() const { return image_; }

  bool operator==(const Permutation& other) const {
    return image_ == other.image_;
  }

private:
  std::vector<Index> image_;
};

/// Row/column permutation certificate attached to restructuring results.
struct PermutationPair {
  Permutation row_perm;
  Permutation col_perm;
};

/// Returns the matrix B with B(row_perm(i), col_perm(j)) = A(i, j).
/// Permutation sizes must match the matrix dimensions.
IntMatrix apply_permutation(const IntMatrix& a, const PermutationPair& perm);

/// Returns A padded with the given numbers of zero rows (top/bottom) and zero
/// columns (left/right).  Entry values are preserved, positions shift.
IntMatrix pad_zero(const IntMatrix& a, Index top, Index bottom, Index left,
                   Index right);

}  // namespace blockip
