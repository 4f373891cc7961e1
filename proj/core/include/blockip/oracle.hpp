#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "blockip/instance.hpp"
#include "blockip/matrix.hpp"
#include "blockip/reduce.hpp"

namespace blockip {

/// Thrown when an enumeration would exceed its work budget.
class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<std::vector<Int>> witness;
};

/// Reachability DP for Subset Sum with 0/1 choices; returns the
/// lexicographically smallest witness (by choice vector) when feasible.
/// Requires b small enough for a DP table (throws BudgetExceeded otherwise).
FeasibilityResult subsetsum_dp(const SubsetSumInstance& inst);

/// Exact feasibility of an integer program by lexicographic enumeration over
/// the bound box with early pruning: each equality row is checked as soon as
/// its last variable is assigned.  All bounds must be finite.  The budget
/// caps the number of value assignments explored (BudgetExceeded beyond);
/// workers > 1 shards the outermost variable's range, splitting the budget
/// evenly, with a deterministic, schedule-independent result.  The witness
/// is the lexicographically first feasible point.
FeasibilityResult feasible_enum(const IPInstance& inst,
                                long long budget = 10'000'000,
                                int workers = 1);

}  // namespace blockip
