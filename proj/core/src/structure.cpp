#include "blockip/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace blockip {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

/// Validates the column set of one block against the tail profile
/// (sigma[level-1], ..., sigma[tau-1]).  `cols` is ascending.
bool validate_block(const IntMatrix& a, const std::vector<Index>& cols,
                    const std::vector<Index>& sigma, std::size_t level) {
  const std::size_t tau = sigma.size();
  if (level == tau) {
    // Last level: a block may have at most sigma_tau columns.
    return static_cast<Index>(cols.size()) <= sigma[tau - 1];
  }
  const std::size_t drop = std::min<std::size_t>(
      static_cast<std::size_t>(sigma[level - 1]), cols.size());
  const std::vector<Index> rest(cols.begin() + static_cast<std::ptrdiff_t>(drop),
                                cols.end());
  const auto blocks =
      detail::diagonal_blocks(detail::connected_components(a, rest));
  for (const auto& block : blocks) {
    if (!validate_block(a, block.cols, sigma, level + 1)) return false;
  }
  return true;
}

}  // namespace

BlockProfile::BlockProfile(StructureKind kind_, std::vector<Index> sigma_)
    : kind(kind_), tau(static_cast<Index>(sigma_.size())), sigma(std::move(sigma_)) {
  if (sigma.empty()) throw std::invalid_argument("BlockProfile: empty sigma");
  for (Index s : sigma) {
    if (s < 1) throw std::invalid_argument("BlockProfile: sigma entries must be >= 1");
  }
}

Index BlockProfile::sigma_sum() const {
  Index sum = 0;
  for (Index s : sigma) sum += s;
  return sum;
}

Int BlockProfile::stage_product() const {
  Int p = 1;
  for (Index s : sigma) p *= Int(s) + 1;
  return p;
}

bool band_check(const IntMatrix& a, Band band) {
  const Index width = band == Band::Bi ? 1 : 2;
  for (const auto& [pos, v] : a.entries()) {
    (void)v;
    const Index i = pos.first, j = pos.second;
    if (i < j || i > j + width) return false;
  }
  return true;
}

bool validate_multistage(const IntMatrix& a, const BlockProfile& profile) {
  if (profile.kind != StructureKind::MultiStage)
    throw std::invalid_argument("validate_multistage: profile kind mismatch");
  if (profile.tau != static_cast<Index>(profile.sigma.size()))
    throw std::invalid_argument("validate_multistage: tau/sigma mismatch");
  if (profile.tau < 1)
    throw std::invalid_argument("validate_multistage: tau must be >= 1");
  if (profile.tau == 1) return true;
  if (profile.sigma[0] > a.cols())
    throw std::invalid_argument(
        "validate_multistage: sigma_1 exceeds column count");
  std::vector<Index> rest;
  for (Index j = profile.sigma[0] + 1; j <= a.cols(); ++j) rest.push_back(j);
  const auto blocks =
      detail::diagonal_blocks(detail::connected_components(a, rest));
  for (const auto& block : blocks) {
    if (!validate_block(a, block.cols, profile.sigma, 2)) return false;
  }
  return true;
}

bool validate_treefold(const IntMatrix& a, const BlockProfile& profile) {
  if (profile.kind != StructureKind::TreeFold)
    throw std::invalid_argument("validate_treefold: profile kind mismatch");
  BlockProfile dual(StructureKind::MultiStage, profile.sigma);
  return validate_multistage(a.transpose(), dual);
}

bool validate_profile(const IntMatrix& a, const BlockProfile& profile) {
  return profile.kind == StructureKind::MultiStage
             ? validate_multistage(a, profile)
             : validate_treefold(a, profile);
}

namespace detail {

std::vector<ComponentView> connected_components(const IntMatrix& a,
                                                const std::vector<Index>& cols) {
  // Nonzero rows of each candidate column.
  std::map<Index, std::vector<Index>> col_rows;
  for (Index j : cols) col_rows[j] = {};
  for (const auto& [pos, v] : a.entries()) {
    (void)v;
    auto it = col_rows.find(pos.second);
    if (it != col_rows.end()) it->second.push_back(pos.first);
  }

  // Keep only nonzero columns, in ascending order.
  std::vector<Index> live;
  for (const auto& [j, rows] : col_rows) {
    if (!rows.empty()) live.push_back(j);
  }

  // Union columns sharing a row.
  UnionFind uf(live.size());
  std::map<Index, std::size_t> first_col_in_row;
  for (std::size_t idx = 0; idx < live.size(); ++idx) {
    for (Index i : col_rows[live[idx]]) {
      auto [it, inserted] = first_col_in_row.try_emplace(i, idx);
      if (!inserted) uf.unite(idx, it->second);
    }
  }

  // Gather components; `live` is ascending, so each component's columns come
  // out ascending and the component order by representative's first touch is
  // by smallest column.
  std::map<std::size_t, ComponentView> by_root;
  std::vector<std::size_t> root_order;
  for (std::size_t idx = 0; idx < live.size(); ++idx) {
    const std::size_t root = uf.find(idx);
    auto [it, inserted] = by_root.try_emplace(root);
    if (inserted) root_order.push_back(root);
    it->second.cols.push_back(live[idx]);
  }
  std::vector<ComponentView> out;
  out.reserve(root_order.size());
  for (std::size_t root : root_order) {
    ComponentView comp = std::move(by_root[root]);
    std::set<Index> rows;
    for (Index j : comp.cols) rows.insert(col_rows[j].begin(), col_rows[j].end());
    comp.rows.assign(rows.begin(), rows.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool consistently_ordered(const std::vector<ComponentView>& comps) {
  for (std::size_t k = 0; k + 1 < comps.size(); ++k) {
    if (comps[k].cols.back() >= comps[k + 1].cols.front()) return false;
    if (comps[k].rows.back() >= comps[k + 1].rows.front()) return false;
  }
  return true;
}

std::vector<ComponentView> diagonal_blocks(std::vector<ComponentView> comps) {
  std::vector<ComponentView> stack;
  auto ordered = [](const ComponentView& p, const ComponentView& q) {
    return p.cols.back() < q.cols.front() && p.rows.back() < q.rows.front();
  };
  auto merge_sorted = [](std::vector<Index>& dst, const std::vector<Index>& src) {
    std::vector<Index> merged;
    merged.reserve(dst.size() + src.size());
    std::merge(dst.begin(), dst.end(), src.begin(), src.end(),
               std::back_inserter(merged));
    dst = std::move(merged);
  };
  for (auto& comp : comps) {
    stack.push_back(std::move(comp));
    while (stack.size() >= 2 &&
           !ordered(stack[stack.size() - 2], stack.back())) {
      ComponentView top = std::move(stack.back());
      stack.pop_back();
      merge_sorted(stack.back().cols, top.cols);
      merge_sorted(stack.back().rows, top.rows);
    }
  }
  return stack;
}

}  // namespace detail

}  // namespace blockip
