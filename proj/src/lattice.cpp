#include "apcl/lattice.hpp"

#include <algorithm>

namespace apcl {
namespace {

// In-place row HNF on `a` (n x m).  When `u` is non-null it starts as the
// identity and tracks the row operations, so u * a_in = a_out throughout.
void hnf_in_place(IntMat& a, IntMat* u) {
  const std::size_t n = a.size();
  if (n == 0) return;
  const std::size_t m = a[0].size();
  if (u) {
    u->assign(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) (*u)[i][i] = 1;
  }
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    if (u) std::swap((*u)[i], (*u)[j]);
  };
  // row_i -= q * row_j
  auto submul = [&](std::size_t i, std::size_t j, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < m; ++k) a[i][k] -= q * a[j][k];
    if (u)
      for (std::size_t k = 0; k < n; ++k) (*u)[i][k] -= q * (*u)[j][k];
  };
  auto negate_row = [&](std::size_t i) {
    for (auto& x : a[i]) x = -x;
    if (u)
      for (auto& x : (*u)[i]) x = -x;
  };

  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    // Euclidean elimination below `row` in this column.
    while (true) {
      std::size_t best = n;  // row with the smallest nonzero |entry|
      for (std::size_t i = row; i < n; ++i) {
        if (a[i][col] == 0) continue;
        if (best == n || cmp(abs(a[i][col]), abs(a[best][col])) < 0) best = i;
      }
      if (best == n) break;  // column clear below
      swap_rows(row, best);
      bool done = true;
      for (std::size_t i = row + 1; i < n; ++i) {
        if (a[i][col] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(),
                   a[row][col].get_mpz_t());
        submul(i, row, q);
        if (a[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (a[row][col] == 0) continue;  // no pivot in this column
    if (a[row][col] < 0) negate_row(row);
    // Reduce entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < row; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[row][col].get_mpz_t());
      submul(i, row, q);
    }
    ++row;
  }
}

BigInt content(const IntMat& rows) {
  BigInt g = 0;
  for (const auto& r : rows)
    for (const auto& x : r) g = gcd(g, x);
  return g;
}

}  // namespace

IntMat hnf(IntMat rows) {
  hnf_in_place(rows, nullptr);
  while (!rows.empty()) {
    bool zero = std::all_of(rows.back().begin(), rows.back().end(),
                            [](const BigInt& x) { return x == 0; });
    if (!zero) break;
    rows.pop_back();
  }
  return rows;
}

HnfTransform hnf_with_transform(IntMat rows) {
  HnfTransform t;
  hnf_in_place(rows, &t.u);
  t.h_full = std::move(rows);
  return t;
}

IntMat left_kernel(const IntMat& rows, std::size_t cols) {
  (void)cols;
  HnfTransform t = hnf_with_transform(rows);
  IntMat out;
  for (std::size_t i = 0; i < t.h_full.size(); ++i) {
    bool zero = std::all_of(t.h_full[i].begin(), t.h_full[i].end(),
                            [](const BigInt& x) { return x == 0; });
    if (zero) out.push_back(t.u[i]);
  }
  return out;
}

Frequency FreqGroup::generator(int i) const {
  const auto& r = rows.at(static_cast<std::size_t>(i));
  std::vector<Rational> coords;
  coords.reserve(r.size());
  for (const auto& x : r) coords.push_back(rat(x, denom));
  return Frequency(base, dims, std::move(coords));
}

std::vector<Frequency> FreqGroup::generators() const {
  std::vector<Frequency> out;
  out.reserve(rows.size());
  for (int i = 0; i < rank(); ++i) out.push_back(generator(i));
  return out;
}

FreqGroup group_generated(std::span<const Frequency> gens) {
  if (gens.empty()) throw ConfigError("group_generated: need at least one frequency");
  FreqGroup g;
  g.base = gens[0].base();
  g.dims = gens[0].dims();
  for (const auto& f : gens) {
    require_same_base(*g.base, *f.base(), "group_generated");
    if (f.dims() != g.dims)
      throw ConfigError("group_generated: mixed ambient dimensions");
  }
  // Common denominator, then integer HNF.
  std::vector<Rational> all;
  for (const auto& f : gens)
    all.insert(all.end(), f.coords().begin(), f.coords().end());
  g.denom = common_denominator(all);
  IntMat rows;
  rows.reserve(gens.size());
  const std::size_t w = static_cast<std::size_t>(g.dims) * g.base->dim();
  for (const auto& f : gens) {
    std::vector<BigInt> r(w);
    for (std::size_t k = 0; k < w; ++k) {
      Rational scaled = f.coords()[k] * g.denom;
      r[k] = scaled.get_num();  // exact by construction of denom
    }
    rows.push_back(std::move(r));
  }
  g.rows = hnf(std::move(rows));
  // Canonical scale: gcd(denom, content) = 1 makes equal groups bit-equal.
  BigInt c = content(g.rows);
  if (c != 0) {
    BigInt d = gcd(c, g.denom);
    if (d > 1) {
      g.denom /= d;
      for (auto& r : g.rows)
        for (auto& x : r) x /= d;
    }
  } else {
    g.denom = 1;  // zero group
  }
  return g;
}

FreqGroup spectrum_group(const TrigPoly& p) {
  std::vector<Frequency> sp = p.spectrum();
  if (sp.empty()) sp.push_back(Frequency::zero(p.base(), p.dims()));
  return group_generated(sp);
}

MemberCert member(const FreqGroup& g, const Frequency& lambda) {
  require_same_base(*g.base, *lambda.base(), "member");
  if (lambda.dims() != g.dims) throw ConfigError("member: dims mismatch");
  const std::size_t w = static_cast<std::size_t>(g.dims) * g.base->dim();
  // Target in the integer lattice: lambda * denom must be integral.
  std::vector<BigInt> c(w);
  for (std::size_t k = 0; k < w; ++k) {
    Rational scaled = lambda.coords()[k] * g.denom;
    if (scaled.get_den() != 1) return {};
    c[k] = scaled.get_num();
  }
  // Forward substitution against the HNF rows.
  std::vector<BigInt> coeffs(g.rows.size(), 0);
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    std::size_t p = 0;
    while (p < w && g.rows[i][p] == 0) ++p;
    if (p == w) continue;
    if (!mpz_divisible_p(c[p].get_mpz_t(), g.rows[i][p].get_mpz_t())) return {};
    BigInt q;
    mpz_divexact(q.get_mpz_t(), c[p].get_mpz_t(), g.rows[i][p].get_mpz_t());
    coeffs[i] = q;
    for (std::size_t k = 0; k < w; ++k) c[k] -= q * g.rows[i][k];
  }
  for (const auto& x : c)
    if (x != 0) return {};
  return {true, std::move(coeffs)};
}

bool QBasis::extend(const Frequency& lambda) {
  require_same_base(*base_, *lambda.base(), "qbasis extend");
  if (lambda.dims() != dims_) throw ConfigError("qbasis: dims mismatch");
  if (lambda.is_zero()) return false;
  if (try_coords(lambda)) return false;
  vecs_.push_back(lambda);
  return true;
}

std::optional<std::vector<Rational>> QBasis::try_coords(
    const Frequency& lambda) const {
  require_same_base(*base_, *lambda.base(), "qbasis coords");
  if (lambda.dims() != dims_) throw ConfigError("qbasis: dims mismatch");
  const std::size_t w = static_cast<std::size_t>(dims_) * base_->dim();
  const std::size_t k = vecs_.size();
  if (k == 0) {
    if (lambda.is_zero()) return std::vector<Rational>{};
    return std::nullopt;
  }
  // Solve sum_j y_j vecs_[j] = lambda by Gaussian elimination on the w x (k+1)
  // augmented system (columns are basis vectors).
  std::vector<std::vector<Rational>> m(w, std::vector<Rational>(k + 1, Rational(0)));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t r = 0; r < w; ++r) m[r][j] = vecs_[j].coords()[r];
  for (std::size_t r = 0; r < w; ++r) m[r][k] = lambda.coords()[r];

  std::vector<std::size_t> pivot_col_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < w; ++col) {
    std::size_t pr = w;
    for (std::size_t i = row; i < w; ++i)
      if (m[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr == w) continue;
    std::swap(m[row], m[pr]);
    Rational inv = m[row][col];
    for (std::size_t cc = col; cc <= k; ++cc) m[row][cc] /= inv;
    for (std::size_t i = 0; i < w; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t cc = col; cc <= k; ++cc) m[i][cc] -= f * m[row][cc];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  // Inconsistent rows mean lambda is outside the span.
  for (std::size_t i = row; i < w; ++i)
    if (m[i][k] != 0) return std::nullopt;
  std::vector<Rational> y(k, Rational(0));
  for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
    y[pivot_col_of_row[i]] = m[i][k];
  return y;
}

std::vector<Rational> QBasis::coords(const Frequency& lambda) const {
  auto y = try_coords(lambda);
  if (!y) throw SpanError("frequency outside the rational span of the basis");
  return *y;
}

QBasis qlinear_basis(std::span<const Frequency> freqs) {
  if (freqs.empty()) throw ConfigError("qlinear_basis: empty input");
  QBasis b(freqs[0].base(), freqs[0].dims());
  for (const auto& f : freqs) b.extend(f);
  return b;
}

}  // namespace apcl
