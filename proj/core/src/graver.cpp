#include "blockip/graver.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "blockip/encoding.hpp"
#include "blockip/restructure.hpp"

namespace blockip {

namespace {

using Vec = std::vector<Int>;

/// All-integer elimination on the stacked rows (column i of A | e_i): rows
/// whose left part vanishes carry integer kernel vectors of A on the right.
std::vector<Vec> raw_kernel_basis(const IntMatrix& a) {
  const Index m = a.rows();
  const Index n = a.cols();
  std::vector<Vec> rows(static_cast<std::size_t>(n),
                        Vec(static_cast<std::size_t>(m + n), Int(0)));
  for (Index i = 1; i <= n; ++i) {
    for (Index r = 1; r <= m; ++r)
      rows[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(r - 1)] =
          a.at(r, i);
    rows[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(m + i - 1)] =
        1;
  }

  std::size_t pivot = 0;
  for (Index c = 0; c < m && pivot < rows.size(); ++c) {
    const auto col = static_cast<std::size_t>(c);
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() ||
            mpz_cmpabs(rows[r][col].get_mpz_t(), rows[best][col].get_mpz_t()) <
                0)
          best = r;
      }
      if (best == rows.size()) break;  // column already clear
      bool others = false;
      for (std::size_t r = pivot; r < rows.size(); ++r) {
        if (r == best || rows[r][col] == 0) continue;
        const Int q = rows[r][col] / rows[best][col];  // truncated quotient
        for (std::size_t k = 0; k < rows[r].size(); ++k)
          rows[r][k] -= q * rows[best][k];
        if (rows[r][col] != 0) others = true;
      }
      if (!others) {
        std::swap(rows[pivot], rows[best]);
        if (rows[pivot][col] < 0)
          for (Int& v : rows[pivot]) v = -v;
        ++pivot;
        break;
      }
    }
  }

  std::vector<Vec> kernel;
  for (std::size_t r = pivot; r < rows.size(); ++r) {
    Vec v(rows[r].begin() + m, rows[r].end());
    kernel.push_back(std::move(v));
  }
  return kernel;
}

/// Hermite-style canonicalization by unimodular column operations: pivots
/// positive with increasing pivot rows, entries left of a pivot reduced into
/// [0, pivot).
void column_hnf(std::vector<Vec>& cols, Index n) {
  std::size_t pivot_col = 0;
  for (Index r = 0; r < n && pivot_col < cols.size(); ++r) {
    const auto row = static_cast<std::size_t>(r);
    std::size_t best = cols.size();
    while (true) {
      best = cols.size();
      for (std::size_t c = pivot_col; c < cols.size(); ++c) {
        if (cols[c][row] == 0) continue;
        if (best == cols.size() ||
            mpz_cmpabs(cols[c][row].get_mpz_t(), cols[best][row].get_mpz_t()) <
                0)
          best = c;
      }
      if (best == cols.size()) break;
      bool others = false;
      for (std::size_t c = pivot_col; c < cols.size(); ++c) {
        if (c == best || cols[c][row] == 0) continue;
        const Int q = cols[c][row] / cols[best][row];
        for (std::size_t k = 0; k < cols[c].size(); ++k)
          cols[c][k] -= q * cols[best][k];
        if (cols[c][row] != 0) others = true;
      }
      if (!others) break;
    }
    if (best == cols.size()) continue;
    std::swap(cols[pivot_col], cols[best]);
    if (cols[pivot_col][row] < 0)
      for (Int& v : cols[pivot_col]) v = -v;
    const Int& p = cols[pivot_col][row];
    for (std::size_t c = 0; c < pivot_col; ++c) {
      if (cols[c][row] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), cols[c][row].get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k < cols[c].size(); ++k)
        cols[c][k] -= q * cols[pivot_col][k];
    }
    ++pivot_col;
  }
}

/// Sign-compatible domination: g_i s_i >= 0 and |g_i| <= |s_i| everywhere.
bool conforms(const Vec& g, const Vec& s) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (sgn(g[i]) * sgn(s[i]) < 0) return false;
    if (mpz_cmpabs(g[i].get_mpz_t(), s[i].get_mpz_t()) > 0) return false;
  }
  return true;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

void negate(Vec& v) {
  for (Int& x : v) x = -x;
}

/// Canonical representative of {v, -v}: first nonzero entry positive.
void orient(Vec& v) {
  for (const Int& x : v) {
    if (x == 0) continue;
    if (x < 0) negate(v);
    return;
  }
}

/// Reduces s by sign-compatible subtraction of set elements (and their
/// negations) until irreducible; may reach zero.
void normal_form(Vec& s, const std::vector<Vec>& set) {
  bool progress = true;
  while (progress && !is_zero(s)) {
    progress = false;
    for (const Vec& h : set) {
      if (conforms(h, s)) {
        for (std::size_t i = 0; i < s.size(); ++i) s[i] -= h[i];
        progress = true;
        break;
      }
      bool neg_conforms = true;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (sgn(h[i]) * sgn(s[i]) > 0 ||
            mpz_cmpabs(h[i].get_mpz_t(), s[i].get_mpz_t()) > 0) {
          neg_conforms = false;
          break;
        }
      }
      if (neg_conforms) {
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += h[i];
        progress = true;
        break;
      }
    }
  }
}

}  // namespace

IntMatrix kernel_lattice_basis(const IntMatrix& a) {
  std::vector<Vec> kernel = raw_kernel_basis(a);
  column_hnf(kernel, a.cols());
  IntMatrix basis(a.cols(), static_cast<Index>(kernel.size()));
  for (std::size_t c = 0; c < kernel.size(); ++c) {
    for (Index r = 1; r <= a.cols(); ++r) {
      const Int& v = kernel[c][static_cast<std::size_t>(r - 1)];
      if (v != 0) basis.set(r, static_cast<Index>(c) + 1, v);
    }
  }
  return basis;
}

GraverSet graver_basis(const IntMatrix& a, const Int& norm_cap) {
  if (norm_cap < 1)
    throw std::invalid_argument("graver_basis: norm cap must be >= 1");
  const IntMatrix basis = kernel_lattice_basis(a);
  const Index n = a.cols();
  const Index rank = basis.cols();

  GraverSet gs;
  std::vector<Vec> elems;
  if (rank == 1) {
    // Rank-1 kernel lattice: the basis vector is primitive, and every kernel
    // vector is an integer multiple of it, so the Graver basis is just the
    // +/- pair.
    Vec v(static_cast<std::size_t>(n), Int(0));
    for (Index r = 1; r <= n; ++r) v[static_cast<std::size_t>(r - 1)] = basis.at(r, 1);
    elems.push_back(std::move(v));
  } else if (rank > 1) {
    std::set<Vec> seen;
    std::deque<std::pair<std::size_t, std::size_t>> queue;
    auto add = [&](Vec v) {
      orient(v);
      if (!seen.insert(v).second) return;
      elems.push_back(std::move(v));
      const std::size_t idx = elems.size() - 1;
      for (std::size_t j = 0; j <= idx; ++j) queue.emplace_back(idx, j);
    };
    for (Index c = 1; c <= rank; ++c) {
      Vec v(static_cast<std::size_t>(n), Int(0));
      for (Index r = 1; r <= n; ++r)
        v[static_cast<std::size_t>(r - 1)] = basis.at(r, c);
      add(std::move(v));
    }
    while (!queue.empty()) {
      const auto [i, j] = queue.front();
      queue.pop_front();
      for (int sign = 0; sign < 2; ++sign) {
        Vec s = elems[i];
        for (std::size_t k = 0; k < s.size(); ++k) {
          if (sign == 0)
            s[k] += elems[j][k];
          else
            s[k] -= elems[j][k];
        }
        normal_form(s, elems);
        if (!is_zero(s)) add(std::move(s));
      }
    }
    // Keep only the minimal elements: anything dominated by a different
    // element splits into two sign-compatible kernel vectors.
    std::vector<Vec> minimal;
    for (const Vec& g : elems) {
      bool reducible = false;
      for (const Vec& h : elems) {
        if (&h == &g) continue;
        if (h == g) continue;
        Vec neg = h;
        negate(neg);
        if (conforms(h, g) || conforms(neg, g)) {
          reducible = true;
          break;
        }
      }
      if (!reducible) minimal.push_back(g);
    }
    elems = std::move(minimal);
  }

  std::sort(elems.begin(), elems.end());
  for (Vec& v : elems) {
    bool within = true;
    for (const Int& x : v) {
      if (mpz_cmpabs(x.get_mpz_t(), norm_cap.get_mpz_t()) > 0) {
        within = false;
        break;
      }
    }
    if (within)
      gs.elements.push_back(std::move(v));
    else
      gs.truncated = true;
  }
  return gs;
}

GraverNorms graver_norms(const GraverSet& gs) {
  if (gs.truncated)
    throw std::invalid_argument("graver_norms: set is truncated");
  if (gs.elements.empty())
    throw std::invalid_argument("graver_norms: empty set has no norms");
  GraverNorms norms{Int(0), Int(0)};
  for (const Vec& v : gs.elements) {
    Int one = 0;
    for (const Int& x : v) {
      const Int mag = abs(x);
      if (mag > norms.max_norm) norms.max_norm = mag;
      one += mag;
    }
    if (one > norms.one_norm) norms.one_norm = one;
  }
  return norms;
}

WitnessResult witness_multistage(const std::vector<Index>& sigma,
                                 const Int& delta) {
  if (delta < 2)
    throw std::invalid_argument("witness_multistage: delta must be >= 2");
  Int product = 1;
  for (Index s : sigma) {
    if (s < 1)
      throw std::invalid_argument("witness_multistage: sigma entries must be >= 1");
    product *= Int(s) + 1;
  }
  if (product < 3 || !product.fits_slong_p())
    throw std::invalid_argument("witness_multistage: need 3 <= prod(sigma_i+1)");
  const Index big_s = static_cast<Index>(product.get_si());

  const IntMatrix base = encoding_matrix(big_s - 1, delta);
  const IntMatrix padded = pad_zero(base, 1, 1, 0, 0);
  RestructureResult res = to_multistage(padded, sigma, Band::Bi);

  WitnessResult out;
  out.matrix = std::move(res.matrix);
  out.profile = std::move(res.profile);
  out.norm = 1;
  mpz_pow_ui(out.norm.get_mpz_t(), delta.get_mpz_t(),
             static_cast<unsigned long>(big_s - 2));
  return out;
}

WitnessResult witness_treefold(const std::vector<Index>& sigma,
                               const Int& delta) {
  if (delta < 2)
    throw std::invalid_argument("witness_treefold: delta must be >= 2");
  Int product = 1;
  for (Index s : sigma) {
    if (s < 1)
      throw std::invalid_argument("witness_treefold: sigma entries must be >= 1");
    product *= Int(s) + 1;
  }
  if (product < 2 || !product.fits_slong_p())
    throw std::invalid_argument("witness_treefold: need 2 <= prod(sigma_i+1)");
  const Index big_s = static_cast<Index>(product.get_si());

  const IntMatrix base = encoding_matrix(big_s, delta);
  RestructureResult res = to_treefold(base, sigma, Band::Bi);

  WitnessResult out;
  out.matrix = std::move(res.matrix);
  out.profile = std::move(res.profile);
  Int power;
  mpz_pow_ui(power.get_mpz_t(), delta.get_mpz_t(),
             static_cast<unsigned long>(big_s));
  out.norm = (power - 1) / (delta - 1);
  return out;
}

}  // namespace blockip
