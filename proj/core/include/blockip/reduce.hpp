#pragma once

#include <string>
#include <vector>

#include "blockip/instance.hpp"
#include "blockip/matrix.hpp"
#include "blockip/structure.hpp"

namespace blockip {

/// Subset Sum: does a 0/1 combination of the a_i reach b?
/// Normalized form: 0 <= a_i < b for all i.
struct SubsetSumInstance {
  std::vector<Int> a;
  Int b;
};

void check_subsetsum(const SubsetSumInstance& inst);

/// Base and bit-width for the digit encoding of a Subset Sum target.
struct SubsetSumParams {
  Int delta;
  Index t;
};

/// Picks the encoding base for a given number of digit rows sigma1:
/// the minimal delta >= 2 with delta^sigma1 >= b; the choice must also
/// satisfy b > delta^(sigma1-1), otherwise no feasible base exists and the
/// call throws.  sigma1 = 1 uses delta = max(b, 2).  t = max(ceil(log2
/// delta), 2).  Pre: 1 <= sigma1 <= max(ceil(log2 b), 1).
SubsetSumParams choose_subsetsum_params(const Int& b, Index sigma1);

/// The digit-carry system (C | D) (x ; y) = (b, 0, ..., 0)^T:
/// column i of C holds digits(a_i, delta, sigma1); column j of D holds
/// delta at row j and -1 at row j+1.  Row weights (1, delta, delta^2, ...)
/// recover a^T x = b.
struct CdSystem {
  IntMatrix c;             // sigma1 x n
  IntMatrix d;             // sigma1 x (sigma1 - 1)
  std::vector<Int> rhs;    // (b, 0, ..., 0)
};

CdSystem build_cd_system(const SubsetSumInstance& inst, const Int& delta,
                         Index sigma1);

/// A 2-stage block carrying three nonnegative values.  The block's bit width
/// t is determined by the values: enc_width(q) + enc_width(x) + enc_width(y)
/// = t + 1.
struct TwoStageBlock {
  Int q, x, y;
  Index t;

  TwoStageBlock(Int q, Int x, Int y);
};

/// Feasibility-preserving map between a source problem and a generated
/// instance.  The certificate stores the source data and derived parameters;
/// the produced instance can be rebuilt deterministically from it, which is
/// how project_solution validates its input.
struct ReductionCertificate {
  enum class Kind { SubsetSumToNfold, TwoStageToMultistage };

  Kind kind;

  // SubsetSumToNfold
  SubsetSumInstance subset_sum;
  SubsetSumParams params;
  Index sigma1 = 0;

  // TwoStageToMultistage
  std::vector<TwoStageBlock> blocks;
  Index tau = 0;
  Index s = 0;
  Int z_upper;

  /// Human-readable forward/backward map descriptions for provenance.
  std::string forward_map() const;
  std::string backward_map() const;
};

struct NfoldResult {
  IPInstance instance;
  ReductionCertificate certificate;
};

/// Builds the n-fold feasibility instance equivalent to a Subset Sum
/// instance: top stripe (C_1 ... C_n D_1 ... D_{sigma1-1}) of bit matrices
/// with t columns per group, one diagonal E_t(2) block per group, rhs
/// (b, 0, ..., 0), zero objective.  Choice groups are bounded by [0, 2^t-1]
/// (so each is 0 or the kernel generator), carry group j by
/// [0, Y_j * 2^(t-1)] where Y_j = sum_i (a_i div delta^j) is the largest
/// possible carry.  The result validates as tree-fold with levels
/// (sigma1, t-1).
NfoldResult build_nfold(const SubsetSumInstance& inst, Index sigma1);

/// Level sizes for deepening a bit-group of width t into tau levels.
/// s is the unique integer with (s+1)^(tau-1) >= t > s^(tau-1); ell the
/// unique shift with (s+1)^(tau-1-ell) s^ell >= t > (s+1)^(tau-2-ell)
/// s^(ell+1).  sigma_tail has tau-1-ell entries s followed by ell entries
/// s-1, and prod(sigma_i + 1) < 2t.  Pre: 2 <= tau-1 <= ceil(log2 t).
struct TreefoldLevels {
  Index s = 0;
  Index ell = 0;
  std::vector<Index> sigma_tail;
};

TreefoldLevels choose_treefold_levels(Index t, Index tau);

struct LiftResult {
  IPInstance instance;
  PermutationPair permutation;
};

/// Deepens an n-fold produced by build_nfold into a tree-fold with tau
/// levels (sigma1, sigma_tail...): every diagonal E_t(2) block is padded
/// with zero rows/columns to the scheme dimensions and row-permuted by
/// to_treefold; padding columns get bounds [0,0], so feasibility is
/// unchanged.  The returned permutation maps the padded-but-unpermuted
/// assembly to the result.
LiftResult lift_nfold_to_treefold(const IPInstance& nfold, Index tau);

/// Normalized single 2-stage block: dense coefficient row c (the
/// concatenation enc(q), enc_reversed(x), enc(y), t+1 entries) over a banded
/// constraint matrix B in Z^{t x (t+1)} stacking the doubling block for the
/// q segment, a zero row, the reversed doubling block for the x segment, the
/// link row (0..0 | 0..01 | 10..0) and the doubling block for the y segment.
/// B is zero outside {j-1, j} in every column j; link_row is the 1-based
/// index of the link row within B (the row whose right-hand side is 1).
struct NormalizedBlock {
  std::vector<Int> c;
  IntMatrix b;
  Index link_row = 0;
};

NormalizedBlock normalize_block(const TwoStageBlock& block);

/// Splits the dense row c (length t+1) into the banded system S in
/// Z^{(t+2) x (2t+2)} over interleaved variables (p_1, z_1, ..., p_{t+1},
/// z_{t+1}):  S(i, 2i-1) = 1, S(i, 2i-2) = -c_{i-1}, S(i, 2i-3) = -1.
/// For every r, the solutions of  e_1 r + S (p,z) = 0  are exactly the
/// (p, z) with p_1 = -r, p_{i+1} - p_i = c_i z_i and sum c_i z_i = r.
IntMatrix split_dense_row(const std::vector<Int>& c);

/// Spreads B onto the interleaved variable order: Bexp in
/// Z^{(t+1) x (2t+2)} with Bexp(i, j) = B(i-1, j/2) for even j and i >= 2,
/// zero elsewhere (row 1 is empty).
IntMatrix expand_B(const IntMatrix& b);

/// Interleaves the split system and the expanded block row-wise:
/// odd rows from S, even rows from Bexp.  The result is tri-diagonal.
IntMatrix interleave_to_tridiagonal(const IntMatrix& s_split,
                                    const IntMatrix& b_expanded);

struct MultistageResult {
  IPInstance instance;
  ReductionCertificate certificate;
};

/// The canonical 2-stage system for a list of blocks sharing the same t:
/// one global column r with -1 in each block's coefficient row, the stacked
/// (c ; B) per block, right-hand side 1 at each block's link row.  Block
/// variables z lie in [0, z_upper], r in [-R, R] with R = (t+1) * max|c_i| *
/// z_upper.  This is the source problem build_multistage is measured
/// against.
IPInstance two_stage_instance(const std::vector<TwoStageBlock>& blocks,
                              const Int& z_upper);

/// Flattens the 2-stage system into a multi-stage instance with stage sizes
/// (1, 2s, ..., 2s) and tau_target stages: per block, the dense row is
/// split, the banded part expanded and interleaved into a tri-diagonal
/// T in Z^{(2t+3) x (2t+2)}, padded to the scheme dimensions and
/// column-permuted by to_multistage; the global column carries -1 at each
/// block's split row.  s is the unique integer with (s+1)^(tau_target-1) >=
/// t+2 > (s+1)^(tau_target-2) (throws if tau_target is out of range for t).
/// Certificate maps source (r, z) to target (-r, p, z) with p the prefix
/// sums; feasibility is preserved exactly.
MultistageResult build_multistage(const std::vector<TwoStageBlock>& blocks,
                                  Index tau_target, const Int& z_upper);

/// Extends a source witness to a solution of the generated instance
/// (Subset Sum: 0/1 vector x -> group solution; 2-stage: (r, z) -> (r', p,
/// z, padding)).  Throws if the witness is not feasible for the source.
std::vector<Int> extend_witness(const ReductionCertificate& cert,
                                const std::vector<Int>& source_witness);

/// Projects a feasible solution of the generated instance back to a source
/// witness.  Throws if the vector is not feasible for the generated
/// instance.  project_solution(extend_witness(w)) == w.
std::vector<Int> project_solution(const ReductionCertificate& cert,
                                  const std::vector<Int>& target_solution);

/// Rebuilds the generated instance a certificate refers to.
IPInstance rebuild_instance(const ReductionCertificate& cert);

}  // namespace blockip
