#include "blockip/reduce.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "blockip/encoding.hpp"
#include "blockip/restructure.hpp"

namespace blockip {

namespace {

Int pow_int(const Int& base, Index exp) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
  return out;
}

/// ceil(log2(v)) for v >= 1.
Index ceil_log2(const Int& v) {
  if (v < 1) throw std::invalid_argument("ceil_log2: value must be >= 1");
  const Index bits = static_cast<Index>(mpz_sizeinbase(v.get_mpz_t(), 2));
  const bool power_of_two = mpz_popcount(v.get_mpz_t()) == 1;
  return power_of_two ? bits - 1 : bits;
}

Index checked_index(const Int& v, const char* what) {
  if (!v.fits_slong_p())
    throw std::invalid_argument(std::string(what) + ": size overflows");
  return static_cast<Index>(v.get_si());
}

/// Coefficient row of length t over a doubling chain (1, 2, ..., 2^{t-1})
/// representing the value v: binary digits for 0 <= v < 2^t, the single
/// entry 2 in the top position for v = 2^t, and -1 in the head position for
/// v = -1.
std::vector<Int> bitrow(const Int& v, Index t) {
  std::vector<Int> row(static_cast<std::size_t>(t), Int(0));
  if (v == -1) {
    row[0] = -1;
    return row;
  }
  if (v < 0) throw std::invalid_argument("bitrow: unsupported value");
  if (v == (Int(1) << static_cast<unsigned long>(t))) {
    row[static_cast<std::size_t>(t - 1)] = 2;
    return row;
  }
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > static_cast<std::size_t>(t) && v != 0)
    throw std::invalid_argument("bitrow: value too wide");
  for (Index i = 0; i < t; ++i)
    row[static_cast<std::size_t>(i)] =
        mpz_tstbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(i)) ? 1 : 0;
  return row;
}

void require_same_t(const std::vector<TwoStageBlock>& blocks) {
  if (blocks.empty())
    throw std::invalid_argument("reduce: block list must be non-empty");
  for (const TwoStageBlock& blk : blocks) {
    if (blk.t != blocks.front().t)
      throw std::invalid_argument("reduce: blocks must share the same t");
  }
}

/// Largest |c_i| over the normalized coefficient rows of all blocks.
Int max_coefficient(const std::vector<TwoStageBlock>& blocks) {
  Int best = 0;
  for (const TwoStageBlock& blk : blocks) {
    for (const Int& ci : normalize_block(blk).c) {
      const Int mag = abs(ci);
      if (mag > best) best = mag;
    }
  }
  return best;
}

struct MultistageLayout {
  Index s = 0;
  Index big_s = 0;              // S = (s+1)^(tau-1)
  std::vector<Index> sigma_vec; // tau-1 entries, all s
  Permutation col_perm;         // block-local column permutation
};

MultistageLayout multistage_layout(Index t, Index tau_target) {
  if (tau_target < 2)
    throw std::invalid_argument("build_multistage: tau_target must be >= 2");
  const Index stages = tau_target - 1;
  Index s = 1;
  while (pow_int(Int(s) + 1, stages) < t + 2) ++s;
  if (stages >= 2 && !(Int(t) + 2 > pow_int(Int(s) + 1, stages - 1)))
    throw std::invalid_argument(
        "build_multistage: tau_target out of range for this block size");
  MultistageLayout layout;
  layout.s = s;
  layout.big_s = checked_index(pow_int(Int(s) + 1, stages), "build_multistage");
  layout.sigma_vec.assign(static_cast<std::size_t>(stages), s);
  const std::vector<Index> order = scheme_column_order(layout.sigma_vec, Band::Tri);
  std::vector<Index> image(order.size());
  for (std::size_t p = 0; p < order.size(); ++p)
    image[static_cast<std::size_t>(order[p] - 1)] = static_cast<Index>(p) + 1;
  layout.col_perm = Permutation::from_image(std::move(image));
  return layout;
}

}  // namespace

void check_subsetsum(const SubsetSumInstance& inst) {
  if (inst.b < 0)
    throw std::invalid_argument("check_subsetsum: negative target");
  for (const Int& ai : inst.a) {
    if (ai < 0 || ai >= inst.b)
      throw std::invalid_argument(
          "check_subsetsum: items must satisfy 0 <= a_i < b");
  }
}

SubsetSumParams choose_subsetsum_params(const Int& b, Index sigma1) {
  if (b < 0)
    throw std::invalid_argument("choose_subsetsum_params: negative target");
  if (sigma1 < 1)
    throw std::invalid_argument("choose_subsetsum_params: sigma1 must be >= 1");
  const Index cap = b >= 2 ? ceil_log2(b) : 1;
  if (sigma1 > cap)
    throw std::invalid_argument(
        "choose_subsetsum_params: sigma1 exceeds ceil(log2 b)");

  SubsetSumParams params;
  if (sigma1 == 1) {
    params.delta = b < 2 ? Int(2) : b;
  } else {
    // Minimal delta >= 2 with delta^sigma1 >= b; the sandwich additionally
    // needs b > delta^(sigma1-1).
    Int root;
    mpz_root(root.get_mpz_t(), b.get_mpz_t(),
             static_cast<unsigned long>(sigma1));
    Int delta = pow_int(root, sigma1) >= b ? root : root + 1;
    if (delta < 2) delta = 2;
    if (!(b > pow_int(delta, sigma1 - 1)))
      throw std::invalid_argument(
          "choose_subsetsum_params: no feasible base for this sigma1");
    params.delta = delta;
  }
  params.t = std::max<Index>(ceil_log2(params.delta), 2);
  return params;
}

CdSystem build_cd_system(const SubsetSumInstance& inst, const Int& delta,
                         Index sigma1) {
  check_subsetsum(inst);
  if (sigma1 < 1)
    throw std::invalid_argument("build_cd_system: sigma1 must be >= 1");
  const Index n = static_cast<Index>(inst.a.size());
  CdSystem sys;
  sys.c = IntMatrix(sigma1, n);
  for (Index i = 1; i <= n; ++i) {
    const std::vector<Int> col =
        digits(inst.a[static_cast<std::size_t>(i - 1)], delta, sigma1);
    for (Index j = 1; j <= sigma1; ++j)
      sys.c.set(j, i, col[static_cast<std::size_t>(j - 1)]);
  }
  sys.d = IntMatrix(sigma1, sigma1 - 1);
  for (Index j = 1; j <= sigma1 - 1; ++j) {
    sys.d.set(j, j, delta);
    sys.d.set(j + 1, j, -1);
  }
  sys.rhs.assign(static_cast<std::size_t>(sigma1), Int(0));
  sys.rhs[0] = inst.b;
  return sys;
}

TwoStageBlock::TwoStageBlock(Int q_, Int x_, Int y_)
    : q(std::move(q_)), x(std::move(x_)), y(std::move(y_)) {
  t = enc_width(q) + enc_width(x) + enc_width(y) - 1;
}

std::string ReductionCertificate::forward_map() const {
  if (kind == Kind::SubsetSumToNfold) {
    return "choice x_i in {0,1} maps to group i along the doubling chain "
           "x_i*(1,2,...,2^(t-1)); carry group j carries "
           "sum_i (a_i div delta^j) x_i along the same chain";
  }
  return "source (r, z) maps to (-r, interleaved prefix sums p and z per "
         "block, zero padding), with block columns in restructured order";
}

std::string ReductionCertificate::backward_map() const {
  if (kind == Kind::SubsetSumToNfold) {
    return "x_i is the first coordinate of choice group i";
  }
  return "r is the negated global coordinate; z_i is read from the "
         "restructured position of interleaved column 2i of its block";
}

NfoldResult build_nfold(const SubsetSumInstance& inst, Index sigma1) {
  check_subsetsum(inst);
  const SubsetSumParams params = choose_subsetsum_params(inst.b, sigma1);
  const Index n = static_cast<Index>(inst.a.size());
  const Index t = params.t;
  const Index groups = n + sigma1 - 1;
  const CdSystem sys = build_cd_system(inst, params.delta, sigma1);

  IPInstance ip;
  ip.a = IntMatrix(sigma1 + groups * (t - 1), groups * t);

  // Top stripe: each source column of (C | D) becomes a width-t bit row
  // against the group's doubling chain.
  for (Index g = 1; g <= groups; ++g) {
    for (Index j = 1; j <= sigma1; ++j) {
      const Int v = g <= n ? sys.c.at(j, g) : sys.d.at(j, g - n);
      if (v == 0) continue;
      const std::vector<Int> row = bitrow(v, t);
      for (Index i = 1; i <= t; ++i)
        ip.a.set(j, (g - 1) * t + i, row[static_cast<std::size_t>(i - 1)]);
    }
  }
  // One doubling block per group.
  for (Index g = 1; g <= groups; ++g) {
    const Index row0 = sigma1 + (g - 1) * (t - 1);
    const Index col0 = (g - 1) * t;
    for (Index i = 1; i <= t - 1; ++i) {
      ip.a.set(row0 + i, col0 + i, 2);
      ip.a.set(row0 + i, col0 + i + 1, -1);
    }
  }

  ip.rhs.assign(static_cast<std::size_t>(ip.a.rows()), Int(0));
  for (Index j = 1; j <= sigma1; ++j)
    ip.rhs[static_cast<std::size_t>(j - 1)] = sys.rhs[static_cast<std::size_t>(j - 1)];

  // Choice groups stay within one doubling chain (head 0 or 1); carry group
  // j must fit the largest possible carry sum_i (a_i div delta^j).
  const Int chain_top = (Int(1) << static_cast<unsigned long>(t)) - 1;
  ip.lower.assign(static_cast<std::size_t>(ip.a.cols()), Int(0));
  ip.upper.assign(static_cast<std::size_t>(ip.a.cols()), Int(0));
  for (Index g = 1; g <= groups; ++g) {
    Int top;
    if (g <= n) {
      top = chain_top;
    } else {
      Int carry_max = 0;
      const Int power = pow_int(params.delta, g - n);
      for (const Int& ai : inst.a) carry_max += ai / power;
      top = carry_max * (Int(1) << static_cast<unsigned long>(t - 1));
    }
    for (Index i = 1; i <= t; ++i)
      ip.upper[static_cast<std::size_t>((g - 1) * t + i - 1)] = top;
  }
  ip.objective.assign(static_cast<std::size_t>(ip.a.cols()), Int(0));
  ip.profile = BlockProfile(StructureKind::TreeFold, {sigma1, t - 1});

  NfoldResult result;
  result.instance = std::move(ip);
  result.certificate.kind = ReductionCertificate::Kind::SubsetSumToNfold;
  result.certificate.subset_sum = inst;
  result.certificate.params = params;
  result.certificate.sigma1 = sigma1;
  return result;
}

TreefoldLevels choose_treefold_levels(Index t, Index tau) {
  if (t < 2) throw std::invalid_argument("choose_treefold_levels: t must be >= 2");
  if (tau - 1 < 2 || tau - 1 > ceil_log2(Int(t)))
    throw std::invalid_argument(
        "choose_treefold_levels: tau out of admissible range for t");
  const Index stages = tau - 1;
  TreefoldLevels levels;
  levels.s = 1;
  while (pow_int(Int(levels.s) + 1, stages) < t) ++levels.s;
  levels.ell = 0;
  while (pow_int(Int(levels.s) + 1, stages - (levels.ell + 1)) *
             pow_int(Int(levels.s), levels.ell + 1) >=
         t)
    ++levels.ell;
  levels.sigma_tail.assign(static_cast<std::size_t>(stages - levels.ell),
                           levels.s);
  levels.sigma_tail.insert(levels.sigma_tail.end(),
                           static_cast<std::size_t>(levels.ell), levels.s - 1);
  return levels;
}

LiftResult lift_nfold_to_treefold(const IPInstance& nfold, Index tau) {
  if (!nfold.profile || nfold.profile->kind != StructureKind::TreeFold ||
      nfold.profile->tau != 2)
    throw std::invalid_argument(
        "lift_nfold_to_treefold: input is not an n-fold from build_nfold");
  const Index sigma1 = nfold.profile->sigma[0];
  const Index t = nfold.profile->sigma[1] + 1;
  if (nfold.cols() % t != 0)
    throw std::invalid_argument(
        "lift_nfold_to_treefold: column count does not split into groups");
  const Index groups = nfold.cols() / t;
  if (nfold.rows() != sigma1 + groups * (t - 1))
    throw std::invalid_argument(
        "lift_nfold_to_treefold: row count does not match the n-fold shape");

  const TreefoldLevels levels = choose_treefold_levels(t, tau);
  Index padded_cols = 1;
  for (Index s : levels.sigma_tail) padded_cols *= s + 1;
  const Index p = padded_cols;  // each block becomes (p-1) x p

  IPInstance out;
  out.a = IntMatrix(sigma1 + groups * (p - 1), groups * p);
  std::vector<Index> row_image(static_cast<std::size_t>(out.a.rows()));
  for (Index j = 1; j <= sigma1; ++j)
    row_image[static_cast<std::size_t>(j - 1)] = j;

  for (Index g = 1; g <= groups; ++g) {
    IntMatrix block(t - 1, t);
    const Index row0 = sigma1 + (g - 1) * (t - 1);
    const Index col0 = (g - 1) * t;
    for (Index i = 1; i <= t - 1; ++i) {
      for (Index j = 1; j <= t; ++j) {
        const Int& v = nfold.a.at(row0 + i, col0 + j);
        if (v != 0) block.set(i, j, v);
      }
    }
    const IntMatrix padded =
        pad_to_scheme_dims(block, levels.sigma_tail, Band::Bi,
                           StructureKind::TreeFold);
    const RestructureResult res =
        to_treefold(padded, levels.sigma_tail, Band::Bi);
    const Index new_row0 = sigma1 + (g - 1) * (p - 1);
    const Index new_col0 = (g - 1) * p;
    for (const auto& [pos, v] : res.matrix.entries())
      out.a.set(new_row0 + pos.first, new_col0 + pos.second, v);
    for (Index i = 1; i <= p - 1; ++i)
      row_image[static_cast<std::size_t>(new_row0 + i - 1)] =
          new_row0 + res.permutation.row_perm(i);
  }

  // Top stripe moves with the widened groups; original columns keep their
  // in-group positions.
  for (const auto& [pos, v] : nfold.a.entries()) {
    if (pos.first > sigma1) continue;
    const Index g = (pos.second - 1) / t + 1;
    const Index j = (pos.second - 1) % t + 1;
    out.a.set(pos.first, (g - 1) * p + j, v);
  }

  out.rhs.assign(static_cast<std::size_t>(out.a.rows()), Int(0));
  for (Index j = 1; j <= sigma1; ++j)
    out.rhs[static_cast<std::size_t>(j - 1)] =
        nfold.rhs[static_cast<std::size_t>(j - 1)];

  out.lower.assign(static_cast<std::size_t>(out.a.cols()), Int(0));
  out.upper.assign(static_cast<std::size_t>(out.a.cols()), Int(0));
  for (Index g = 1; g <= groups; ++g) {
    for (Index j = 1; j <= t; ++j) {
      out.lower[static_cast<std::size_t>((g - 1) * p + j - 1)] =
          nfold.lower[static_cast<std::size_t>((g - 1) * t + j - 1)];
      out.upper[static_cast<std::size_t>((g - 1) * p + j - 1)] =
          nfold.upper[static_cast<std::size_t>((g - 1) * t + j - 1)];
    }
  }
  out.objective.assign(static_cast<std::size_t>(out.a.cols()), Int(0));

  std::vector<Index> sigma{sigma1};
  sigma.insert(sigma.end(), levels.sigma_tail.begin(), levels.sigma_tail.end());
  out.profile = BlockProfile(StructureKind::TreeFold, std::move(sigma));

  LiftResult result;
  result.instance = std::move(out);
  result.permutation.row_perm = Permutation::from_image(std::move(row_image));
  result.permutation.col_perm = Permutation(groups * p);
  return result;
}

NormalizedBlock normalize_block(const TwoStageBlock& block) {
  const Index eta_q = enc_width(block.q);
  const Index eta_x = enc_width(block.x);
  const Index eta_y = enc_width(block.y);
  const Index t = eta_q + eta_x + eta_y - 1;
  if (t != block.t)
    throw std::invalid_argument("normalize_block: stored t does not match "
                                "the encoding widths");

  NormalizedBlock nb;
  for (int bit : enc(block.q).bits) nb.c.emplace_back(bit);
  for (int bit : enc_reversed(block.x).bits) nb.c.emplace_back(bit);
  for (int bit : enc(block.y).bits) nb.c.emplace_back(bit);

  nb.b = IntMatrix(t, t + 1);
  // Doubling chain down the q segment.
  for (Index i = 1; i <= eta_q - 1; ++i) {
    nb.b.set(i, i, 2);
    nb.b.set(i, i + 1, -1);
  }
  // Row eta_q stays zero.  Reversed chain down the x segment.
  for (Index i = 1; i <= eta_x - 1; ++i) {
    nb.b.set(eta_q + i, eta_q + i, -1);
    nb.b.set(eta_q + i, eta_q + i + 1, 2);
  }
  nb.link_row = eta_q + eta_x;
  nb.b.set(nb.link_row, eta_q + eta_x, 1);
  nb.b.set(nb.link_row, eta_q + eta_x + 1, 1);
  // Doubling chain down the y segment.
  for (Index i = 1; i <= eta_y - 1; ++i) {
    nb.b.set(nb.link_row + i, nb.link_row + i, 2);
    nb.b.set(nb.link_row + i, nb.link_row + i + 1, -1);
  }
  return nb;
}

IntMatrix split_dense_row(const std::vector<Int>& c) {
  const Index width = static_cast<Index>(c.size());
  if (width < 1)
    throw std::invalid_argument("split_dense_row: empty coefficient row");
  IntMatrix s(width + 1, 2 * width);
  for (Index i = 1; i <= width + 1; ++i) {
    if (2 * i - 1 <= 2 * width) s.set(i, 2 * i - 1, 1);
    if (i >= 2) {
      s.set(i, 2 * i - 2, -c[static_cast<std::size_t>(i - 2)]);
      s.set(i, 2 * i - 3, -1);
    }
  }
  return s;
}

IntMatrix expand_B(const IntMatrix& b) {
  if (b.cols() != b.rows() + 1)
    throw std::invalid_argument("expand_B: expected a t x (t+1) block");
  const Index t = b.rows();
  IntMatrix expanded(t + 1, 2 * t + 2);
  for (const auto& [pos, v] : b.entries())
    expanded.set(pos.first + 1, 2 * pos.second, v);
  return expanded;
}

IntMatrix interleave_to_tridiagonal(const IntMatrix& s_split,
                                    const IntMatrix& b_expanded) {
  if (s_split.cols() != b_expanded.cols() ||
      s_split.rows() != b_expanded.rows() + 1)
    throw std::invalid_argument(
        "interleave_to_tridiagonal: incompatible dimensions");
  IntMatrix t(s_split.rows() + b_expanded.rows(), s_split.cols());
  for (const auto& [pos, v] : s_split.entries())
    t.set(2 * pos.first - 1, pos.second, v);
  for (const auto& [pos, v] : b_expanded.entries())
    t.set(2 * pos.first, pos.second, v);
  return t;
}

IPInstance two_stage_instance(const std::vector<TwoStageBlock>& blocks,
                              const Int& z_upper) {
  require_same_t(blocks);
  if (z_upper < 0)
    throw std::invalid_argument("two_stage_instance: negative z bound");
  const Index t = blocks.front().t;
  const Index k = static_cast<Index>(blocks.size());
  const Int r_bound = (Int(t) + 1) * max_coefficient(blocks) * z_upper;

  IPInstance ip;
  ip.a = IntMatrix(k * (t + 1), 1 + k * (t + 1));
  ip.rhs.assign(static_cast<std::size_t>(ip.a.rows()), Int(0));
  for (Index bi = 1; bi <= k; ++bi) {
    const NormalizedBlock nb =
        normalize_block(blocks[static_cast<std::size_t>(bi - 1)]);
    const Index row0 = (bi - 1) * (t + 1);
    const Index col0 = 1 + (bi - 1) * (t + 1);
    ip.a.set(row0 + 1, 1, -1);
    for (Index j = 1; j <= t + 1; ++j) {
      const Int& cj = nb.c[static_cast<std::size_t>(j - 1)];
      if (cj != 0) ip.a.set(row0 + 1, col0 + j, cj);
    }
    for (const auto& [pos, v] : nb.b.entries())
      ip.a.set(row0 + 1 + pos.first, col0 + pos.second, v);
    ip.rhs[static_cast<std::size_t>(row0 + 1 + nb.link_row - 1)] = 1;
  }

  ip.lower.assign(static_cast<std::size_t>(ip.a.cols()), Int(0));
  ip.upper.assign(static_cast<std::size_t>(ip.a.cols()), z_upper);
  ip.lower[0] = -r_bound;
  ip.upper[0] = r_bound;
  ip.objective.assign(static_cast<std::size_t>(ip.a.cols()), Int(0));
  ip.profile = BlockProfile(StructureKind::MultiStage, {1, t + 1});
  return ip;
}

MultistageResult build_multistage(const std::vector<TwoStageBlock>& blocks,
                                  Index tau_target, const Int& z_upper) {
  require_same_t(blocks);
  if (z_upper < 0)
    throw std::invalid_argument("build_multistage: negative z bound");
  const Index t = blocks.front().t;
  const Index k = static_cast<Index>(blocks.size());
  const MultistageLayout layout = multistage_layout(t, tau_target);
  const Index rows_per_block = 2 * layout.big_s;
  const Index cols_per_block = 2 * layout.big_s - 2;
  const Int r_bound = (Int(t) + 1) * max_coefficient(blocks) * z_upper;

  IPInstance ip;
  ip.a = IntMatrix(k * rows_per_block, 1 + k * cols_per_block);
  ip.rhs.assign(static_cast<std::size_t>(ip.a.rows()), Int(0));
  ip.lower.assign(static_cast<std::size_t>(ip.a.cols()), Int(0));
  ip.upper.assign(static_cast<std::size_t>(ip.a.cols()), Int(0));
  ip.lower[0] = -r_bound;
  ip.upper[0] = r_bound;

  for (Index bi = 1; bi <= k; ++bi) {
    const NormalizedBlock nb =
        normalize_block(blocks[static_cast<std::size_t>(bi - 1)]);
    const IntMatrix tri = interleave_to_tridiagonal(split_dense_row(nb.c),
                                                    expand_B(nb.b));
    const IntMatrix padded = pad_to_scheme_dims(
        tri, layout.sigma_vec, Band::Tri, StructureKind::MultiStage);
    const RestructureResult res =
        to_multistage(padded, layout.sigma_vec, Band::Tri);

    const Index row0 = (bi - 1) * rows_per_block;
    const Index col0 = 1 + (bi - 1) * cols_per_block;
    ip.a.set(row0 + 1, 1, -1);
    for (const auto& [pos, v] : res.matrix.entries())
      ip.a.set(row0 + pos.first, col0 + pos.second, v);
    // The link row's unit right-hand side: block row 2*(link_row+1) of the
    // interleaved system, unmoved by bottom padding and column permutation.
    ip.rhs[static_cast<std::size_t>(row0 + 2 * (nb.link_row + 1) - 1)] = 1;

    for (Index j = 1; j <= 2 * t + 2; ++j) {
      const Index pos = res.permutation.col_perm(j);
      if (j % 2 == 1) {
        // Prefix-sum variable: symmetric box.
        ip.lower[static_cast<std::size_t>(col0 + pos - 1)] = -r_bound;
        ip.upper[static_cast<std::size_t>(col0 + pos - 1)] = r_bound;
      } else {
        ip.upper[static_cast<std::size_t>(col0 + pos - 1)] = z_upper;
      }
    }
  }
  ip.objective.assign(static_cast<std::size_t>(ip.a.cols()), Int(0));

  std::vector<Index> sigma{1};
  sigma.insert(sigma.end(), static_cast<std::size_t>(tau_target - 1),
               2 * layout.s);
  ip.profile = BlockProfile(StructureKind::MultiStage, std::move(sigma));

  MultistageResult result;
  result.instance = std::move(ip);
  result.certificate.kind = ReductionCertificate::Kind::TwoStageToMultistage;
  result.certificate.blocks = blocks;
  result.certificate.tau = tau_target;
  result.certificate.s = layout.s;
  result.certificate.z_upper = z_upper;
  return result;
}

std::vector<Int> extend_witness(const ReductionCertificate& cert,
                                const std::vector<Int>& source_witness) {
  if (cert.kind == ReductionCertificate::Kind::SubsetSumToNfold) {
    const std::vector<Int>& a = cert.subset_sum.a;
    const Index n = static_cast<Index>(a.size());
    if (static_cast<Index>(source_witness.size()) != n)
      throw std::invalid_argument("extend_witness: wrong witness length");
    Int total = 0;
    for (Index i = 0; i < n; ++i) {
      const Int& xi = source_witness[static_cast<std::size_t>(i)];
      if (xi != 0 && xi != 1)
        throw std::invalid_argument("extend_witness: witness must be 0/1");
      total += xi * a[static_cast<std::size_t>(i)];
    }
    if (total != cert.subset_sum.b)
      throw std::invalid_argument(
          "extend_witness: witness is not feasible for the source");

    const Index t = cert.params.t;
    const Index groups = n + cert.sigma1 - 1;
    std::vector<Int> out(static_cast<std::size_t>(groups * t), Int(0));
    for (Index g = 1; g <= groups; ++g) {
      Int head;
      if (g <= n) {
        head = source_witness[static_cast<std::size_t>(g - 1)];
      } else {
        head = 0;
        const Int power = pow_int(cert.params.delta, g - n);
        for (Index i = 0; i < n; ++i)
          head += (a[static_cast<std::size_t>(i)] / power) *
                  source_witness[static_cast<std::size_t>(i)];
      }
      Int value = head;
      for (Index i = 1; i <= t; ++i) {
        out[static_cast<std::size_t>((g - 1) * t + i - 1)] = value;
        value *= 2;
      }
    }
    return out;
  }

  // TwoStageToMultistage
  const IPInstance source = two_stage_instance(cert.blocks, cert.z_upper);
  if (!is_feasible_point(source, source_witness))
    throw std::invalid_argument(
        "extend_witness: witness is not feasible for the source");
  const Index t = cert.blocks.front().t;
  const Index k = static_cast<Index>(cert.blocks.size());
  const MultistageLayout layout = multistage_layout(t, cert.tau);
  const Index cols_per_block = 2 * layout.big_s - 2;

  std::vector<Int> out(static_cast<std::size_t>(1 + k * cols_per_block),
                       Int(0));
  const Int& r = source_witness[0];
  out[0] = -r;
  for (Index bi = 1; bi <= k; ++bi) {
    const NormalizedBlock nb =
        normalize_block(cert.blocks[static_cast<std::size_t>(bi - 1)]);
    const Index src0 = 1 + (bi - 1) * (t + 1);
    const Index dst0 = 1 + (bi - 1) * cols_per_block;
    Int prefix = -r;
    for (Index i = 1; i <= t + 1; ++i) {
      const Int& zi = source_witness[static_cast<std::size_t>(src0 + i - 1)];
      out[static_cast<std::size_t>(dst0 + layout.col_perm(2 * i - 1) - 1)] =
          prefix;
      out[static_cast<std::size_t>(dst0 + layout.col_perm(2 * i) - 1)] = zi;
      prefix += nb.c[static_cast<std::size_t>(i - 1)] * zi;
    }
  }
  return out;
}

std::vector<Int> project_solution(const ReductionCertificate& cert,
                                  const std::vector<Int>& target_solution) {
  const IPInstance rebuilt = rebuild_instance(cert);
  if (!is_feasible_point(rebuilt, target_solution))
    throw std::invalid_argument(
        "project_solution: vector is not feasible for the generated instance");

  if (cert.kind == ReductionCertificate::Kind::SubsetSumToNfold) {
    const Index n = static_cast<Index>(cert.subset_sum.a.size());
    const Index t = cert.params.t;
    std::vector<Int> x;
    x.reserve(static_cast<std::size_t>(n));
    for (Index i = 1; i <= n; ++i)
      x.push_back(target_solution[static_cast<std::size_t>((i - 1) * t)]);
    return x;
  }

  const Index t = cert.blocks.front().t;
  const Index k = static_cast<Index>(cert.blocks.size());
  const MultistageLayout layout = multistage_layout(t, cert.tau);
  const Index cols_per_block = 2 * layout.big_s - 2;
  std::vector<Int> witness;
  witness.reserve(static_cast<std::size_t>(1 + k * (t + 1)));
  witness.push_back(-target_solution[0]);
  for (Index bi = 1; bi <= k; ++bi) {
    const Index dst0 = 1 + (bi - 1) * cols_per_block;
    for (Index i = 1; i <= t + 1; ++i)
      witness.push_back(target_solution[static_cast<std::size_t>(
          dst0 + layout.col_perm(2 * i) - 1)]);
  }
  return witness;
}

IPInstance rebuild_instance(const ReductionCertificate& cert) {
  if (cert.kind == ReductionCertificate::Kind::SubsetSumToNfold)
    return build_nfold(cert.subset_sum, cert.sigma1).instance;
  return build_multistage(cert.blocks, cert.tau, cert.z_upper).instance;
}

}  // namespace blockip
