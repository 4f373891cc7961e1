#pragma once

#include <vector>

#include "blockip/matrix.hpp"
#include "blockip/structure.hpp"

namespace blockip {

/// Result of a restructuring call: the permuted matrix, the permutation that
/// produced it (apply_permutation(input, permutation) == matrix), and the
/// profile the output is guaranteed to validate against.
struct RestructureResult {
  IntMatrix matrix;
  PermutationPair permutation;
  BlockProfile profile;
};

/// The outermost set of fronted column indices for a banded matrix with the
/// given level sizes, in increasing order.
///
/// With S' = prod_{i>=2}(sigma_i + 1):  Bi selects {j*S' : j = 1..sigma_1};
/// Tri selects {2j*S' - 1, 2j*S' : j = 1..sigma_1}.  tau = 1 selects nothing.
/// The indices depend only on (sigma, band), never on matrix entries.
std::vector<Index> selection_indices(const std::vector<Index>& sigma,
                                     Band band);

/// Column permutation that turns a banded matrix of exact scheme dimensions
/// (S x (S-1) for Bi, 2S x (2S-2) for Tri, S = prod(sigma_i + 1)) into a
/// multi-stage matrix: recursively fronts the selection indices of every
/// level.  Returns the full column order (new position -> built left to
/// right); pure function of (sigma, band).
std::vector<Index> scheme_column_order(const std::vector<Index>& sigma,
                                       Band band);

/// Restructures a banded matrix into multi-stage form by column permutation.
///
/// Pre: band_check(a, band) holds and a has the exact scheme dimensions for
/// sigma.  The result validates as multi-stage with stage sizes sigma (Bi)
/// or 2*sigma (Tri); the row permutation is the identity.
RestructureResult to_multistage(const IntMatrix& a,
                                const std::vector<Index>& sigma, Band band);

/// Transpose-dual restructuring: requires band_check(a^T, band); permutes
/// rows only and yields a tree-fold matrix with level sizes sigma (Bi) or
/// 2*sigma (Tri).
RestructureResult to_treefold(const IntMatrix& a,
                              const std::vector<Index>& sigma, Band band);

/// Pads a matrix with zero rows at the bottom and zero columns at the right
/// up to the exact dimensions to_multistage (MultiStage) or to_treefold
/// (TreeFold) requires for sigma.  Throws if the matrix is already larger.
IntMatrix pad_to_scheme_dims(const IntMatrix& a,
                             const std::vector<Index>& sigma, Band band,
                             StructureKind target);

}  // namespace blockip
