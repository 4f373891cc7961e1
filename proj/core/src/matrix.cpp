#include "blockip/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace blockip {

namespace {
const Int kZero = 0;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}
}  // namespace

IntMatrix::IntMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {
  require(rows >= 0 && cols >= 0, "IntMatrix: negative dimension");
}

IntMatrix IntMatrix::from_rows(
    std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Int>> conv;
  conv.reserve(rows.size());
  for (const auto& r : rows) conv.emplace_back(r.begin(), r.end());
  return from_rows(conv);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  const Index m = static_cast<Index>(rows.size());
  const Index n = m == 0 ? 0 : static_cast<Index>(rows.front().size());
  IntMatrix a(m, n);
  for (Index i = 1; i <= m; ++i) {
    require(static_cast<Index>(rows[i - 1].size()) == n,
            "IntMatrix::from_rows: ragged rows");
    for (Index j = 1; j <= n; ++j) {
      if (rows[i - 1][j - 1] != 0) a.set(i, j, rows[i - 1][j - 1]);
    }
  }
  return a;
}

void IntMatrix::check_range(Index i, Index j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_)
    throw std::out_of_range("IntMatrix: index (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside " +
                            std::to_string(rows_) + "x" +
                            std::to_string(cols_));
}

const Int& IntMatrix::at(Index i, Index j) const {
  check_range(i, j);
  auto it = entries_.find({i, j});
  return it == entries_.end() ? kZero : it->second;
}

void IntMatrix::set(Index i, Index j, Int value) {
  check_range(i, j);
  if (value == 0)
    entries_.erase({i, j});
  else
    entries_[{i, j}] = std::move(value);
}

Int IntMatrix::max_norm() const {
  Int best = 0;
  for (const auto& [pos, v] : entries_) {
    Int a = abs(v);
    if (a > best) best = a;
  }
  return best;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (const auto& [pos, v] : entries_) t.entries_[{pos.second, pos.first}] = v;
  return t;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         entries_ == other.entries_;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
  require(static_cast<Index>(x.size()) == cols_,
          "IntMatrix::apply: size mismatch");
  std::vector<Int> y(static_cast<std::size_t>(rows_), Int(0));
  for (const auto& [pos, v] : entries_)
    y[static_cast<std::size_t>(pos.first - 1)] +=
        v * x[static_cast<std::size_t>(pos.second - 1)];
  return y;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (Index i = 1; i <= rows_; ++i) {
    for (Index j = 1; j <= cols_; ++j) {
      if (j > 1) os << ' ';
      os << at(i, j).get_str();
    }
    os << '\n';
  }
  return os.str();
}

Permutation::Permutation(Index n) {
  require(n >= 0, "Permutation: negative size");
  image_.resize(static_cast<std::size_t>(n));
  for (Index i = 1; i <= n; ++i) image_[static_cast<std::size_t>(i - 1)] = i;
}

Permutation Permutation::from_image(std::vector<Index> image) {
  const Index n = static_cast<Index>(image.size());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index v : image) {
    require(v >= 1 && v <= n, "Permutation: image out of range");
    require(!seen[static_cast<std::size_t>(v - 1)],
            "Permutation: image not a bijection");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  Permutation p;
  p.image_ = std::move(image);
  return p;
}

Index Permutation::operator()(Index i) const {
  if (i < 1 || i > size()) throw std::out_of_range("Permutation: bad index");
  return image_[static_cast<std::size_t>(i - 1)];
}

Permutation Permutation::inverse() const {
  std::vector<Index> inv(image_.size());
  for (Index i = 1; i <= size(); ++i)
    inv[static_cast<std::size_t>((*this)(i)-1)] = i;
  return from_image(std::move(inv));
}

IntMatrix apply_permutation(const IntMatrix& a, const PermutationPair& perm) {
  if (perm.row_perm.size() != a.rows() || perm.col_perm.size() != a.cols())
    throw std::invalid_argument("apply_permutation: size mismatch");
  IntMatrix out(a.rows(), a.cols());
  for (const auto& [pos, v] : a.entries())
    out.set(perm.row_perm(pos.first), perm.col_perm(pos.second), v);
  return out;
}

IntMatrix pad_zero(const IntMatrix& a, Index top, Index bottom, Index left,
                   Index right) {
  if (top < 0 || bottom < 0 || left < 0 || right < 0)
    throw std::invalid_argument("pad_zero: negative padding");
  IntMatrix out(a.rows() + top + bottom, a.cols() + left + right);
  for (const auto& [pos, v] : a.entries())
    out.set(pos.first + top, pos.second + left, v);
  return out;
}

}  // namespace blockip
