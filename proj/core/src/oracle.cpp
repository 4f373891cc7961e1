#include "blockip/oracle.hpp"

#include <algorithm>
#include <string>
#include <thread>
#include <utility>

namespace blockip {

namespace {

enum class Outcome { Infeasible, Feasible, OutOfBudget };

template <typename Scalar>
Scalar to_scalar(const Int& v);

template <>
Int to_scalar<Int>(const Int& v) {
  return v;
}

template <>
long long to_scalar<long long>(const Int& v) {
  return static_cast<long long>(v.get_si());
}

Int to_int(const Int& v) { return v; }
Int to_int(long long v) { return Int(static_cast<long>(v)); }

/// Lexicographic depth-first enumeration over the bound box.  Each equality
/// row is tested as soon as its last variable is assigned.  `used` counts
/// every value assignment explored.
template <typename Scalar>
struct EnumCore {
  Index n = 0;
  // Per variable: (row, coefficient) pairs, and the rows completed by it.
  std::vector<std::vector<std::pair<Index, Scalar>>> col_entries;
  std::vector<std::vector<Index>> rows_ending_at;
  std::vector<Scalar> rhs;
  std::vector<Scalar> lo, hi;

  long long budget = 0;
  long long used = 0;
  std::vector<Scalar> partial;
  std::vector<Scalar> x;
  std::vector<Int> witness;

  Outcome run(Scalar first_lo, Scalar first_hi) {
    partial.assign(rhs.size(), Scalar(0));
    x.assign(static_cast<std::size_t>(n), Scalar(0));
    if (n == 0) {
      for (std::size_t r = 0; r < rhs.size(); ++r)
        if (rhs[r] != 0) return Outcome::Infeasible;
      witness.clear();
      return Outcome::Feasible;
    }
    return dfs(1, first_lo, first_hi);
  }

  Outcome dfs(Index j, const Scalar& lo_j, const Scalar& hi_j) {
    const auto& entries = col_entries[static_cast<std::size_t>(j - 1)];
    const auto& closing = rows_ending_at[static_cast<std::size_t>(j - 1)];
    for (Scalar v = lo_j; v <= hi_j; ++v) {
      if (++used > budget) return Outcome::OutOfBudget;
      x[static_cast<std::size_t>(j - 1)] = v;
      for (const auto& [row, coeff] : entries)
        partial[static_cast<std::size_t>(row - 1)] += coeff * v;
      bool ok = true;
      for (Index row : closing) {
        if (partial[static_cast<std::size_t>(row - 1)] !=
            rhs[static_cast<std::size_t>(row - 1)]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        Outcome rec;
        if (j == n) {
          witness.clear();
          witness.reserve(x.size());
          for (const Scalar& xi : x) witness.push_back(to_int(xi));
          rec = Outcome::Feasible;
        } else {
          rec = dfs(j + 1, lo[static_cast<std::size_t>(j)],
                    hi[static_cast<std::size_t>(j)]);
        }
        if (rec != Outcome::Infeasible) return rec;
      }
      for (const auto& [row, coeff] : entries)
        partial[static_cast<std::size_t>(row - 1)] -= coeff * v;
    }
    return Outcome::Infeasible;
  }
};

struct ShardResult {
  Outcome outcome = Outcome::Infeasible;
  std::vector<Int> witness;
};

template <typename Scalar>
FeasibilityResult enumerate(const IPInstance& inst, long long budget,
                            int workers) {
  const Index n = inst.cols();
  const Index m = inst.rows();

  EnumCore<Scalar> proto;
  proto.n = n;
  proto.col_entries.resize(static_cast<std::size_t>(n));
  proto.rows_ending_at.resize(static_cast<std::size_t>(n));
  std::vector<Index> last_col(static_cast<std::size_t>(m), 0);
  for (const auto& [pos, v] : inst.a.entries()) {
    proto.col_entries[static_cast<std::size_t>(pos.second - 1)].emplace_back(
        pos.first, to_scalar<Scalar>(v));
    last_col[static_cast<std::size_t>(pos.first - 1)] =
        std::max(last_col[static_cast<std::size_t>(pos.first - 1)], pos.second);
  }
  for (Index r = 1; r <= m; ++r) {
    // Rows without entries have no completing variable; they must already
    // match the right-hand side.
    if (last_col[static_cast<std::size_t>(r - 1)] == 0) {
      if (inst.rhs[static_cast<std::size_t>(r - 1)] != 0)
        return {false, std::nullopt};
    } else {
      proto.rows_ending_at[static_cast<std::size_t>(
                               last_col[static_cast<std::size_t>(r - 1)] - 1)]
          .push_back(r);
    }
  }
  proto.rhs.reserve(static_cast<std::size_t>(m));
  for (const Int& b : inst.rhs) proto.rhs.push_back(to_scalar<Scalar>(b));
  proto.lo.reserve(static_cast<std::size_t>(n));
  proto.hi.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    proto.lo.push_back(to_scalar<Scalar>(*inst.lower[static_cast<std::size_t>(j)]));
    proto.hi.push_back(to_scalar<Scalar>(*inst.upper[static_cast<std::size_t>(j)]));
  }

  if (n == 0 || workers <= 1) {
    proto.budget = budget;
    const Outcome outcome =
        proto.run(n == 0 ? Scalar(0) : proto.lo[0], n == 0 ? Scalar(0) : proto.hi[0]);
    if (outcome == Outcome::OutOfBudget)
      throw BudgetExceeded("feasible_enum: budget of " +
                           std::to_string(budget) + " assignments exhausted");
    if (outcome == Outcome::Feasible) return {true, proto.witness};
    return {false, std::nullopt};
  }

  // Shard the outermost variable's range into `workers` contiguous chunks,
  // each with an equal share of the budget.  The reduction scans shards in
  // range order, so the result is independent of thread scheduling.
  const Scalar range_lo = proto.lo[0];
  const Scalar range_hi = proto.hi[0];
  std::vector<std::pair<Scalar, Scalar>> chunks;
  if (range_lo <= range_hi) {
    Scalar width = range_hi - range_lo + 1;
    Scalar base = width / workers;
    Scalar extra = width % workers;
    Scalar next = range_lo;
    for (int c = 0; c < workers; ++c) {
      Scalar size = base + (Scalar(c) < extra ? 1 : 0);
      if (size <= 0) break;
      chunks.emplace_back(next, next + size - 1);
      next += size;
    }
  }
  const long long shard_budget = std::max<long long>(1, budget / workers);

  std::vector<ShardResult> results(chunks.size());
  std::vector<std::thread> threads;
  threads.reserve(chunks.size());
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    threads.emplace_back([&, c]() {
      EnumCore<Scalar> core = proto;
      core.budget = shard_budget;
      const Outcome outcome = core.run(chunks[c].first, chunks[c].second);
      results[c].outcome = outcome;
      if (outcome == Outcome::Feasible) results[c].witness = std::move(core.witness);
    });
  }
  for (auto& t : threads) t.join();

  for (const ShardResult& shard : results) {
    if (shard.outcome == Outcome::Infeasible) continue;
    if (shard.outcome == Outcome::OutOfBudget)
      throw BudgetExceeded("feasible_enum: shard budget of " +
                           std::to_string(shard_budget) +
                           " assignments exhausted");
    return {true, shard.witness};
  }
  return {false, std::nullopt};
}

/// True when every bound, right-hand side and row activity fits comfortably
/// in 64 bits, allowing the machine-word enumeration path.
bool fits_int64(const IPInstance& inst) {
  const Int limit = (Int(1) << 62) - 1;
  std::vector<Int> row_activity(static_cast<std::size_t>(inst.rows()), Int(0));
  for (Index j = 0; j < inst.cols(); ++j) {
    const Int& lo = *inst.lower[static_cast<std::size_t>(j)];
    const Int& hi = *inst.upper[static_cast<std::size_t>(j)];
    if (abs(lo) > limit || abs(hi) > limit) return false;
  }
  for (const auto& [pos, v] : inst.a.entries()) {
    const Int& lo = *inst.lower[static_cast<std::size_t>(pos.second - 1)];
    const Int& hi = *inst.upper[static_cast<std::size_t>(pos.second - 1)];
    Int mag = abs(v) * std::max(abs(lo), abs(hi));
    row_activity[static_cast<std::size_t>(pos.first - 1)] += mag;
  }
  for (const Int& act : row_activity)
    if (act > limit) return false;
  for (const Int& b : inst.rhs)
    if (abs(b) > limit) return false;
  return true;
}

}  // namespace

FeasibilityResult subsetsum_dp(const SubsetSumInstance& inst) {
  if (inst.b < 0)
    throw std::invalid_argument("subsetsum_dp: negative target");
  for (const Int& ai : inst.a) {
    if (ai < 0) throw std::invalid_argument("subsetsum_dp: negative item");
  }
  if (!inst.b.fits_slong_p())
    throw BudgetExceeded("subsetsum_dp: target too large for a table");
  const long long b = inst.b.get_si();
  const std::size_t n = inst.a.size();
  if (static_cast<long long>(n + 1) * (b + 1) > 50'000'000)
    throw BudgetExceeded("subsetsum_dp: table would exceed the work budget");

  // Items larger than the target can never be used; clamp them to a sentinel
  // just past the table so the reachability scan skips them.
  std::vector<long long> items;
  items.reserve(n);
  for (const Int& ai : inst.a) items.push_back(ai > inst.b ? b + 1 : ai.get_si());

  // reach[i][s]: some subset of items i..n-1 sums to s.
  std::vector<std::vector<char>> reach(
      n + 1, std::vector<char>(static_cast<std::size_t>(b + 1), 0));
  reach[n][0] = 1;
  for (std::size_t i = n; i-- > 0;) {
    for (long long s = 0; s <= b; ++s) {
      reach[i][static_cast<std::size_t>(s)] =
          reach[i + 1][static_cast<std::size_t>(s)] ||
          (items[i] <= s &&
           reach[i + 1][static_cast<std::size_t>(s - items[i])]);
    }
  }
  if (!reach[0][static_cast<std::size_t>(b)]) return {false, std::nullopt};

  // Walk forward preferring 0, which yields the lexicographically smallest
  // choice vector.
  std::vector<Int> x(n, Int(0));
  long long s = b;
  for (std::size_t i = 0; i < n; ++i) {
    if (reach[i + 1][static_cast<std::size_t>(s)]) continue;
    x[i] = 1;
    s -= items[i];
  }
  return {true, x};
}

FeasibilityResult feasible_enum(const IPInstance& inst, long long budget,
                                int workers) {
  if (budget <= 0)
    throw std::invalid_argument("feasible_enum: budget must be positive");
  if (workers < 1)
    throw std::invalid_argument("feasible_enum: workers must be >= 1");
  if (static_cast<Index>(inst.rhs.size()) != inst.rows() ||
      static_cast<Index>(inst.lower.size()) != inst.cols() ||
      static_cast<Index>(inst.upper.size()) != inst.cols())
    throw std::invalid_argument("feasible_enum: inconsistent dimensions");
  for (Index j = 0; j < inst.cols(); ++j) {
    if (!inst.lower[static_cast<std::size_t>(j)] ||
        !inst.upper[static_cast<std::size_t>(j)])
      throw std::invalid_argument(
          "feasible_enum: all variable bounds must be finite");
  }
  if (fits_int64(inst)) return enumerate<long long>(inst, budget, workers);
  return enumerate<Int>(inst, budget, workers);
}

}  // namespace blockip
