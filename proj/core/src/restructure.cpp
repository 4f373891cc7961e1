#include "blockip/restructure.hpp"

#include <stdexcept>
#include <string>

namespace blockip {

namespace {

void check_sigma(const std::vector<Index>& sigma) {
  if (sigma.empty())
    throw std::invalid_argument("restructure: sigma must be non-empty");
  for (Index s : sigma) {
    if (s < 1)
      throw std::invalid_argument("restructure: sigma entries must be >= 1");
  }
}

/// prod_{i >= from} (sigma_i + 1), guarded against Index overflow.  Anything
/// larger could never index a representable matrix anyway.
Index tail_product(const std::vector<Index>& sigma, std::size_t from) {
  Int p = 1;
  for (std::size_t i = from; i < sigma.size(); ++i) p *= Int(sigma[i]) + 1;
  if (!p.fits_slong_p())
    throw std::invalid_argument("restructure: sigma product overflows");
  return static_cast<Index>(p.get_si());
}

/// Emits the recursive column order of one banded block of exact scheme
/// dimensions, whose columns occupy offset+1 .. offset+width globally.
void emit_order(const std::vector<Index>& sigma, std::size_t level, Band band,
                Index offset, std::vector<Index>& out) {
  const Index s1 = sigma[level];
  if (level + 1 == sigma.size()) {
    const Index width = band == Band::Bi ? s1 : 2 * s1;
    for (Index j = 1; j <= width; ++j) out.push_back(offset + j);
    return;
  }
  const Index sp = tail_product(sigma, level + 1);
  if (band == Band::Bi) {
    for (Index j = 1; j <= s1; ++j) out.push_back(offset + j * sp);
    for (Index k = 0; k <= s1; ++k)
      emit_order(sigma, level + 1, band, offset + k * sp, out);
  } else {
    for (Index j = 1; j <= s1; ++j) {
      out.push_back(offset + 2 * j * sp - 1);
      out.push_back(offset + 2 * j * sp);
    }
    for (Index k = 0; k <= s1; ++k)
      emit_order(sigma, level + 1, band, offset + 2 * k * sp, out);
  }
}

struct SchemeDims {
  Index rows;
  Index cols;
};

SchemeDims multistage_dims(const std::vector<Index>& sigma, Band band) {
  const Index s = tail_product(sigma, 0);
  if (band == Band::Bi) return {s, s - 1};
  if (s > (static_cast<Index>(1) << 62) - 1)
    throw std::invalid_argument("restructure: sigma product overflows");
  return {2 * s, 2 * s - 2};
}

std::vector<Index> scheme_stage_sizes(const std::vector<Index>& sigma,
                                      Band band) {
  if (band == Band::Bi) return sigma;
  std::vector<Index> doubled;
  doubled.reserve(sigma.size());
  for (Index s : sigma) doubled.push_back(2 * s);
  return doubled;
}

}  // namespace

std::vector<Index> selection_indices(const std::vector<Index>& sigma,
                                     Band band) {
  check_sigma(sigma);
  std::vector<Index> out;
  if (sigma.size() == 1) return out;
  const Index sp = tail_product(sigma, 1);
  for (Index j = 1; j <= sigma[0]; ++j) {
    if (band == Band::Bi) {
      out.push_back(j * sp);
    } else {
      out.push_back(2 * j * sp - 1);
      out.push_back(2 * j * sp);
    }
  }
  return out;
}

std::vector<Index> scheme_column_order(const std::vector<Index>& sigma,
                                       Band band) {
  check_sigma(sigma);
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(multistage_dims(sigma, band).cols));
  emit_order(sigma, 0, band, 0, out);
  return out;
}

RestructureResult to_multistage(const IntMatrix& a,
                                const std::vector<Index>& sigma, Band band) {
  check_sigma(sigma);
  if (!band_check(a, band))
    throw std::invalid_argument("to_multistage: input violates band pattern");
  const SchemeDims dims = multistage_dims(sigma, band);
  if (a.rows() != dims.rows || a.cols() != dims.cols)
    throw std::invalid_argument(
        "to_multistage: expected dimensions " + std::to_string(dims.rows) +
        "x" + std::to_string(dims.cols) + ", got " + std::to_string(a.rows()) +
        "x" + std::to_string(a.cols()));

  const std::vector<Index> order = scheme_column_order(sigma, band);
  std::vector<Index> image(order.size());
  for (std::size_t p = 0; p < order.size(); ++p)
    image[static_cast<std::size_t>(order[p] - 1)] = static_cast<Index>(p) + 1;

  RestructureResult result;
  result.permutation.row_perm = Permutation(a.rows());
  result.permutation.col_perm = Permutation::from_image(std::move(image));
  result.matrix = apply_permutation(a, result.permutation);
  result.profile =
      BlockProfile(StructureKind::MultiStage, scheme_stage_sizes(sigma, band));
  if (!validate_multistage(result.matrix, result.profile))
    throw std::logic_error("to_multistage: restructured matrix failed validation");
  return result;
}

RestructureResult to_treefold(const IntMatrix& a,
                              const std::vector<Index>& sigma, Band band) {
  check_sigma(sigma);
  if (!band_check(a.transpose(), band))
    throw std::invalid_argument(
        "to_treefold: transposed input violates band pattern");
  const SchemeDims dims = multistage_dims(sigma, band);
  if (a.rows() != dims.cols || a.cols() != dims.rows)
    throw std::invalid_argument(
        "to_treefold: expected dimensions " + std::to_string(dims.cols) + "x" +
        std::to_string(dims.rows) + ", got " + std::to_string(a.rows()) + "x" +
        std::to_string(a.cols()));

  const std::vector<Index> order = scheme_column_order(sigma, band);
  std::vector<Index> image(order.size());
  for (std::size_t p = 0; p < order.size(); ++p)
    image[static_cast<std::size_t>(order[p] - 1)] = static_cast<Index>(p) + 1;

  RestructureResult result;
  result.permutation.row_perm = Permutation::from_image(std::move(image));
  result.permutation.col_perm = Permutation(a.cols());
  result.matrix = apply_permutation(a, result.permutation);
  result.profile =
      BlockProfile(StructureKind::TreeFold, scheme_stage_sizes(sigma, band));
  if (!validate_treefold(result.matrix, result.profile))
    throw std::logic_error("to_treefold: restructured matrix failed validation");
  return result;
}

IntMatrix pad_to_scheme_dims(const IntMatrix& a,
                             const std::vector<Index>& sigma, Band band,
                             StructureKind target) {
  check_sigma(sigma);
  SchemeDims dims = multistage_dims(sigma, band);
  if (target == StructureKind::TreeFold) std::swap(dims.rows, dims.cols);
  if (a.rows() > dims.rows || a.cols() > dims.cols)
    throw std::invalid_argument(
        "pad_to_scheme_dims: matrix exceeds target dimensions");
  return pad_zero(a, 0, dims.rows - a.rows(), 0, dims.cols - a.cols());
}

}  // namespace blockip
