#pragma once

#include <set>
#include <utility>
#include <vector>

#include "blockip/matrix.hpp"
#include "blockip/structure.hpp"

namespace blockip {

/// Simple undirected graph on vertices 1..n.
struct Graph {
  Index n = 0;
  std::set<std::pair<Index, Index>> edges;  // stored with first < second

  void add_edge(Index u, Index v);
  bool has_edge(Index u, Index v) const;
};

/// Column intersection graph: vertices are columns, edge {a,b} iff columns
/// a and b share a row with nonzeros in both.
Graph primal_graph(const IntMatrix& a);

/// Row intersection graph (primal graph of the transpose).
Graph dual_graph(const IntMatrix& a);

/// Rooted forest on the graph's vertices; parent[v-1] = 0 marks a root.
/// Valid for G when every edge of G connects an ancestor-descendant pair.
struct TdDecomposition {
  std::vector<Index> parent;

  Index size() const { return static_cast<Index>(parent.size()); }
  /// Maximum number of vertices on a root-to-leaf path.
  Index height() const;
  /// Depth (vertices on the root path) of a single vertex.
  Index depth(Index v) const;
};

/// Builds a treedepth decomposition from a validated block profile: a path
/// through the first sigma_1 columns, recursing per block with the
/// remaining stage sizes and appending each block's decomposition under the
/// path's last vertex; columns outside every block become separate roots.
/// The height is at most sum(sigma_i).  For tree-fold profiles the same
/// construction runs on the transpose and decomposes the dual graph.
/// Throws if the profile does not validate.
TdDecomposition td_decomposition_from_profile(const IntMatrix& a,
                                              const BlockProfile& profile);

/// Checks that the forest is acyclic, covers exactly the graph's vertex set
/// and that every edge connects an ancestor-descendant pair.  Throws on a
/// vertex-set mismatch.
bool validate_td(const Graph& g, const TdDecomposition& td);

/// Exact treedepth by recursive vertex removal with memoization on connected
/// subgraphs.  Limited to n <= 10 vertices (throws beyond).
Index exact_treedepth(const Graph& g);

}  // namespace blockip
