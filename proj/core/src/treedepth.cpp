#include "blockip/treedepth.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockip {

void Graph::add_edge(Index u, Index v) {
  if (u < 1 || u > n || v < 1 || v > n)
    throw std::out_of_range("Graph::add_edge: vertex out of range");
  if (u == v)
    throw std::invalid_argument("Graph::add_edge: self-loops not allowed");
  edges.insert({std::min(u, v), std::max(u, v)});
}

bool Graph::has_edge(Index u, Index v) const {
  return edges.count({std::min(u, v), std::max(u, v)}) > 0;
}

Graph primal_graph(const IntMatrix& a) {
  Graph g;
  g.n = a.cols();
  // Entries are sorted by (row, col): walk each row's nonzero column run.
  auto it = a.entries().begin();
  while (it != a.entries().end()) {
    const Index row = it->first.first;
    std::vector<Index> cols;
    for (; it != a.entries().end() && it->first.first == row; ++it)
      cols.push_back(it->first.second);
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = i + 1; j < cols.size(); ++j)
        g.add_edge(cols[i], cols[j]);
  }
  return g;
}

Graph dual_graph(const IntMatrix& a) { return primal_graph(a.transpose()); }

Index TdDecomposition::depth(Index v) const {
  const Index n = size();
  if (v < 1 || v > n)
    throw std::out_of_range("TdDecomposition::depth: vertex out of range");
  Index d = 0;
  Index cur = v;
  while (cur != 0) {
    ++d;
    if (d > n)
      throw std::logic_error("TdDecomposition::depth: parent map is cyclic");
    cur = parent[static_cast<std::size_t>(cur - 1)];
  }
  return d;
}

Index TdDecomposition::height() const {
  Index h = 0;
  for (Index v = 1; v <= size(); ++v) h = std::max(h, depth(v));
  return h;
}

namespace {

/// Chains `take` leading columns under `attach`, then splits the remainder
/// into the validator's block partition and recurses with the tail sizes.
void build_block(const IntMatrix& m, const std::vector<Index>& sigma,
                 std::vector<Index>& parent, const std::vector<Index>& cols,
                 std::size_t level, Index attach) {
  std::size_t take = cols.size();
  if (level < sigma.size())
    take = std::min<std::size_t>(
        static_cast<std::size_t>(sigma[level - 1]), cols.size());
  Index prev = attach;
  for (std::size_t i = 0; i < take; ++i) {
    parent[static_cast<std::size_t>(cols[i] - 1)] = prev;
    prev = cols[i];
  }
  if (level >= sigma.size()) return;
  const std::vector<Index> rest(cols.begin() + static_cast<std::ptrdiff_t>(take),
                                cols.end());
  const auto blocks =
      detail::diagonal_blocks(detail::connected_components(m, rest));
  for (const auto& block : blocks)
    build_block(m, sigma, parent, block.cols, level + 1, prev);
}

}  // namespace

TdDecomposition td_decomposition_from_profile(const IntMatrix& a,
                                              const BlockProfile& profile) {
  if (!validate_profile(a, profile))
    throw std::invalid_argument(
        "td_decomposition_from_profile: matrix does not validate against "
        "the profile");
  // Tree-fold structure lives on the rows: decompose the dual graph by
  // running the same construction on the transpose.
  const IntMatrix work =
      profile.kind == StructureKind::TreeFold ? a.transpose() : a;
  const Index n = work.cols();

  TdDecomposition td;
  td.parent.assign(static_cast<std::size_t>(n), 0);
  std::vector<Index> all;
  for (Index j = 1; j <= n; ++j) all.push_back(j);

  if (profile.tau == 1) {
    // Degenerate single stage: one path through every column.
    Index prev = 0;
    for (Index j : all) {
      td.parent[static_cast<std::size_t>(j - 1)] = prev;
      prev = j;
    }
    return td;
  }

  // Path through the first sigma_1 columns; every block hangs under its
  // end.  Columns in no block (zero columns) stay roots.
  const std::size_t head = static_cast<std::size_t>(profile.sigma[0]);
  Index prev = 0;
  for (std::size_t i = 0; i < head; ++i) {
    td.parent[static_cast<std::size_t>(all[i] - 1)] = prev;
    prev = all[i];
  }
  const std::vector<Index> rest(all.begin() + static_cast<std::ptrdiff_t>(head),
                                all.end());
  const auto blocks =
      detail::diagonal_blocks(detail::connected_components(work, rest));
  for (const auto& block : blocks)
    build_block(work, profile.sigma, td.parent, block.cols, 2, prev);
  return td;
}

bool validate_td(const Graph& g, const TdDecomposition& td) {
  const Index n = td.size();
  if (n != g.n)
    throw std::invalid_argument("validate_td: vertex sets differ");
  for (Index v = 1; v <= n; ++v) {
    const Index p = td.parent[static_cast<std::size_t>(v - 1)];
    if (p < 0 || p > n || p == v) return false;
  }
  // Acyclicity: every vertex must reach a root within n steps.
  for (Index v = 1; v <= n; ++v) {
    Index steps = 0;
    Index cur = v;
    while (cur != 0) {
      if (++steps > n) return false;
      cur = td.parent[static_cast<std::size_t>(cur - 1)];
    }
  }
  auto is_ancestor = [&](Index anc, Index v) {
    for (Index cur = v; cur != 0;
         cur = td.parent[static_cast<std::size_t>(cur - 1)]) {
      if (cur == anc) return true;
    }
    return false;
  };
  for (const auto& [u, v] : g.edges) {
    if (!is_ancestor(u, v) && !is_ancestor(v, u)) return false;
  }
  return true;
}

namespace {

using Mask = std::uint32_t;

/// Connected components of the induced subgraph `mask`.
std::vector<Mask> mask_components(const std::vector<Mask>& adj, Mask mask) {
  std::vector<Mask> comps;
  Mask left = mask;
  while (left != 0) {
    const int v = __builtin_ctz(left);
    Mask comp = Mask(1) << v;
    Mask frontier = comp;
    while (frontier != 0) {
      const int u = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      const Mask nbrs = adj[static_cast<std::size_t>(u)] & mask & ~comp;
      comp |= nbrs;
      frontier |= nbrs;
    }
    comps.push_back(comp);
    left &= ~comp;
  }
  return comps;
}

Index solve_mask(const std::vector<Mask>& adj, Mask mask,
                 std::map<Mask, Index>& memo);

Index solve_connected(const std::vector<Mask>& adj, Mask mask,
                      std::map<Mask, Index>& memo) {
  if ((mask & (mask - 1)) == 0) return 1;  // single vertex
  const auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  Index best = 0;
  for (Mask rem = mask; rem != 0; rem &= rem - 1) {
    const int v = __builtin_ctz(rem);
    const Index cand =
        1 + solve_mask(adj, mask & ~(Mask(1) << v), memo);
    if (best == 0 || cand < best) best = cand;
  }
  memo.emplace(mask, best);
  return best;
}

Index solve_mask(const std::vector<Mask>& adj, Mask mask,
                 std::map<Mask, Index>& memo) {
  Index best = 0;
  for (Mask comp : mask_components(adj, mask))
    best = std::max(best, solve_connected(adj, comp, memo));
  return best;
}

}  // namespace

Index exact_treedepth(const Graph& g) {
  if (g.n > 10)
    throw std::invalid_argument("exact_treedepth: limited to 10 vertices, got " +
                                std::to_string(g.n));
  if (g.n == 0) return 0;
  std::vector<Mask> adj(static_cast<std::size_t>(g.n), 0);
  for (const auto& [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u - 1)] |= Mask(1) << (v - 1);
    adj[static_cast<std::size_t>(v - 1)] |= Mask(1) << (u - 1);
  }
  const Mask full = g.n == 32 ? ~Mask(0) : (Mask(1) << g.n) - 1;
  std::map<Mask, Index> memo;
  return solve_mask(adj, full, memo);
}

}  // namespace blockip
