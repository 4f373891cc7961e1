#pragma once

#include <vector>

#include "blockip/matrix.hpp"

namespace blockip {

/// Band patterns used by the restructuring scheme.  Both conditions are
/// column-indexed: the nonzeros of column j may occupy rows j..j+1 (Bi) or
/// rows j..j+2 (Tri).
enum class Band { Bi, Tri };

/// Recursive block structure kinds.
///
/// A matrix is *tree-fold* with level sizes (sigma_1,...,sigma_tau) if
/// deleting its first sigma_1 rows leaves a block-diagonal matrix whose
/// blocks are recursively tree-fold with (sigma_2,...,sigma_tau); at the last
/// level a block may have at most sigma_tau rows.  A matrix is *multi-stage*
/// with those stage sizes if its transpose is tree-fold, i.e. the same
/// condition with columns in place of rows.
enum class StructureKind { MultiStage, TreeFold };

struct BlockProfile {
  StructureKind kind = StructureKind::MultiStage;
  Index tau = 1;
  std::vector<Index> sigma;  // length tau, entries >= 1

  BlockProfile() = default;
  BlockProfile(StructureKind kind, std::vector<Index> sigma);

  Index sigma_sum() const;
  /// Product of (sigma_i + 1) over all levels.
  Int stage_product() const;

  bool operator==(const BlockProfile& other) const {
    return kind == other.kind && tau == other.tau && sigma == other.sigma;
  }
};

/// True iff every stored nonzero (i,j) satisfies i in {j, j+1} (Bi) or
/// i in {j, j+1, j+2} (Tri).
bool band_check(const IntMatrix& a, Band band);

/// Structural validator for the multi-stage property with the profile's
/// stage sizes (profile.kind must be MultiStage).
///
/// tau = 1 always passes.  For tau >= 2 the first sigma_1 columns are
/// removed and the finest literal block-diagonal partition of the remaining
/// nonzero columns is computed: row-connected components in column order,
/// greedily merged while neighbours overlap or disagree in row/column order
/// (the block-diagonal shape is a property of the finest partition that can
/// be laid out along the diagonal).  Every block must recursively satisfy
/// the tail profile — at inner levels the first min(sigma_i, #cols) block
/// columns are removed, and at the last level a block may keep at most
/// sigma_tau columns.  Zero rows/columns belong to no block and never cause
/// failure.  Throws if sigma_1 exceeds the column count.
bool validate_multistage(const IntMatrix& a, const BlockProfile& profile);

/// Transpose-dual validator: A is tree-fold iff A^T is multi-stage with the
/// same sizes (profile.kind must be TreeFold).
bool validate_treefold(const IntMatrix& a, const BlockProfile& profile);

/// Dispatches on profile.kind.
bool validate_profile(const IntMatrix& a, const BlockProfile& profile);

namespace detail {

/// One block of the finest decomposition: ascending global row and column
/// indices of a row-connected component.
struct ComponentView {
  std::vector<Index> rows;
  std::vector<Index> cols;
};

/// Finest row-connected components of A restricted to the given columns
/// (rows restricted to those with a nonzero in the given columns), sorted by
/// smallest column index.
std::vector<ComponentView> connected_components(const IntMatrix& a,
                                                const std::vector<Index>& cols);

/// True if the components' row and column supports are pairwise
/// non-interleaving and appear in the same order.
bool consistently_ordered(const std::vector<ComponentView>& comps);

/// Greedily merges consecutive components that overlap or disagree in
/// row/column order, yielding the finest partition that can be laid out
/// block-diagonally.  This is the partition the validators recurse on.
std::vector<ComponentView> diagonal_blocks(std::vector<ComponentView> comps);

}  // namespace detail

}  // namespace blockip
