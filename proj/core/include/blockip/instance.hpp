#pragma once

#include <optional>
#include <vector>

#include "blockip/matrix.hpp"
#include "blockip/structure.hpp"

namespace blockip {

/// Variable bound; std::nullopt encodes an infinite (absent) bound.
using Bound = std::optional<Int>;

/// An integer program  A x = rhs,  lower <= x <= upper,  min objective^T x.
///
/// Every generated instance in this library has a zero objective; feasibility
/// is the question of interest.  An optional BlockProfile records the
/// structure the instance was built to have.
struct IPInstance {
  IntMatrix a;
  std::vector<Int> rhs;            // length a.rows()
  std::vector<Bound> lower;        // length a.cols()
  std::vector<Bound> upper;        // length a.cols()
  std::vector<Int> objective;      // length a.cols()
  std::optional<BlockProfile> profile;

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
};

/// Checks dimensional consistency, lower <= upper wherever both are finite,
/// and — when a profile is present — that the structural validator accepts
/// the matrix.  Throws std::invalid_argument on violation.
void check_instance(const IPInstance& inst);

/// True iff x matches the variable count, satisfies all bounds and all
/// equality rows.
bool is_feasible_point(const IPInstance& inst, const std::vector<Int>& x);

/// Convenience: instance with zero objective and [0, u] bounds everywhere.
IPInstance make_instance(IntMatrix a, std::vector<Int> rhs, const Int& upper);

}  // namespace blockip
