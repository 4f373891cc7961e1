#pragma once

#include <vector>

#include "blockip/instance.hpp"
#include "blockip/matrix.hpp"
#include "blockip/structure.hpp"

namespace blockip {

/// Basis of the integer kernel lattice ker(A) ∩ Z^n, returned as the columns
/// of an n x k matrix in a Hermite-style canonical form (unimodular column
/// operations only, pivots positive, entries reduced).  k = n - rank(A).
IntMatrix kernel_lattice_basis(const IntMatrix& a);

/// A finite set of kernel vectors closed under negation; one representative
/// per +/- pair is stored, normalized so its first nonzero entry is
/// positive, in lexicographic order.  `truncated` reports that elements
/// beyond the requested norm cap were dropped.
struct GraverSet {
  std::vector<std::vector<Int>> elements;  // canonical representatives
  bool truncated = false;

  std::size_t size() const { return elements.size(); }
};

/// The Graver basis of A: all indecomposable elements of ker(A) ∩ Z^n (no
/// splitting z = x + y into nonzero kernel vectors with x_i y_i >= 0).
/// Computed by a completion over the kernel lattice basis with conformal
/// (sign-compatible) reduction; rank-1 kernels short-circuit to the
/// primitive generator.  Elements with max-norm beyond norm_cap are dropped
/// from the result and the set is flagged truncated — the returned elements
/// are still exactly the Graver elements within the cap.
GraverSet graver_basis(const IntMatrix& a, const Int& norm_cap);

struct GraverNorms {
  Int max_norm;  // largest l_inf norm over the basis
  Int one_norm;  // largest l_1 norm over the basis
};

/// Exact norm maxima of a Graver set.  Refuses truncated sets and empty
/// sets (no kernel).
GraverNorms graver_norms(const GraverSet& gs);

/// A structured matrix together with the profile it validates against and
/// its extremal Graver norm, used as a lower-bound witness family.
struct WitnessResult {
  IntMatrix matrix;
  BlockProfile profile;
  Int norm;  // max_norm for multi-stage witnesses, one_norm for tree-fold
};

/// Multi-stage witness for stage sizes sigma (S = prod(sigma_i + 1) >= 3):
/// the doubling matrix E_{S-1}(delta), padded by one zero row at the top and
/// one at the bottom (which makes it banded of the exact scheme dimensions),
/// column-permuted into multi-stage form.  Its Graver basis is +/- the
/// kernel generator, with max-norm delta^{S-2}.
WitnessResult witness_multistage(const std::vector<Index>& sigma,
                                 const Int& delta);

/// Tree-fold witness for level sizes sigma (S = prod(sigma_i + 1) >= 2):
/// E_S(delta) row-permuted into tree-fold form; Graver one-norm
/// (delta^S - 1) / (delta - 1).
WitnessResult witness_treefold(const std::vector<Index>& sigma,
                               const Int& delta);

}  // namespace blockip
