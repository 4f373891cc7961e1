#include "blockip/instance.hpp"

#include <stdexcept>
#include <string>

namespace blockip {

void check_instance(const IPInstance& inst) {
  const Index m = inst.a.rows();
  const Index n = inst.a.cols();
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("check_instance: " + msg);
  };
  if (static_cast<Index>(inst.rhs.size()) != m)
    fail("rhs length " + std::to_string(inst.rhs.size()) +
         " does not match row count " + std::to_string(m));
  if (static_cast<Index>(inst.lower.size()) != n)
    fail("lower-bound length does not match column count");
  if (static_cast<Index>(inst.upper.size()) != n)
    fail("upper-bound length does not match column count");
  if (static_cast<Index>(inst.objective.size()) != n)
    fail("objective length does not match column count");
  for (Index j = 0; j < n; ++j) {
    const auto& lo = inst.lower[static_cast<std::size_t>(j)];
    const auto& hi = inst.upper[static_cast<std::size_t>(j)];
    if (lo && hi && *lo > *hi)
      fail("empty bound interval on variable " + std::to_string(j + 1));
  }
  if (inst.profile && !validate_profile(inst.a, *inst.profile))
    fail("matrix does not satisfy its declared block profile");
}

bool is_feasible_point(const IPInstance& inst, const std::vector<Int>& x) {
  if (static_cast<Index>(x.size()) != inst.cols()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (inst.lower[j] && x[j] < *inst.lower[j]) return false;
    if (inst.upper[j] && x[j] > *inst.upper[j]) return false;
  }
  return inst.a.apply(x) == inst.rhs;
}

IPInstance make_instance(IntMatrix a, std::vector<Int> rhs, const Int& upper) {
  IPInstance inst;
  const Index n = a.cols();
  inst.a = std::move(a);
  inst.rhs = std::move(rhs);
  inst.lower.assign(static_cast<std::size_t>(n), Int(0));
  inst.upper.assign(static_cast<std::size_t>(n), upper);
  inst.objective.assign(static_cast<std::size_t>(n), Int(0));
  return inst;
}

}  // namespace blockip
