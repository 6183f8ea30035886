#include "apcl/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "apcl/errors.hpp"

namespace apcl {

int PolyD::degree() const {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (c[static_cast<std::size_t>(k)] != 0.0) return k;
  return -1;
}

double PolyD::eval(double x) const {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

PolyD PolyD::deriv() const {
  PolyD d;
  if (c.size() <= 1) return d;
  d.c.resize(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k)
    d.c[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

std::vector<double> real_roots(const PolyD& p, double lo, double hi) {
  int deg = p.degree();
  std::vector<double> out;
  if (deg <= 0) return out;  // constant: no isolated roots worth reporting

  const double span = hi - lo;
  auto push = [&](double r) {
    if (r < lo - 1e-9 * (1.0 + span) || r > hi + 1e-9 * (1.0 + span)) return;
    r = std::clamp(r, lo, hi);
    for (double s : out)
      if (std::abs(s - r) <= 1e-9 * (1.0 + std::abs(r))) return;
    out.push_back(r);
  };

  if (deg == 1) {
    push(-p.c[0] / p.c[1]);
  } else if (deg == 2) {
    double a = p.c[2], b = p.c[1], cc = p.c[0];
    double disc = b * b - 4.0 * a * cc;
    if (disc >= 0.0) {
      double sq = std::sqrt(disc);
      // Numerically stable pair.
      double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
      push(q / a);
      if (q != 0.0) push(cc / q);
      if (disc == 0.0) push(-b / (2.0 * a));
    }
  } else {
    // Durand-Kerner on the monic version.
    std::vector<std::complex<double>> a(static_cast<std::size_t>(deg) + 1);
    for (int k = 0; k <= deg; ++k)
      a[static_cast<std::size_t>(k)] =
          p.c[static_cast<std::size_t>(k)] / p.c[static_cast<std::size_t>(deg)];
    std::vector<std::complex<double>> z(static_cast<std::size_t>(deg));
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> w(1.0, 0.0);
    for (auto& zi : z) {
      w *= seed;
      zi = w;
    }
    auto evalc = [&](std::complex<double> x) {
      std::complex<double> s = 0.0;
      for (std::size_t k = a.size(); k-- > 0;) s = s * x + a[k];
      return s;
    };
    for (int it = 0; it < 400; ++it) {
      double move = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        std::complex<double> d = 1.0;
        for (std::size_t j = 0; j < z.size(); ++j)
          if (j != i) d *= (z[i] - z[j]);
        if (d == std::complex<double>(0.0, 0.0)) d = 1e-30;
        std::complex<double> step = evalc(z[i]) / d;
        z[i] -= step;
        move = std::max(move, std::abs(step));
      }
      if (move < 1e-14) break;
    }
    for (auto& zi : z)
      if (std::abs(zi.imag()) < 1e-7 * (1.0 + std::abs(zi.real())))
        push(zi.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int PiecewisePolyD::piece_index(double u) const {
  if (u < lo() || u > hi())
    throw DomainError("piecewise poly: argument outside domain");
  auto it = std::upper_bound(bp.begin(), bp.end(), u);
  int k = static_cast<int>(it - bp.begin()) - 1;
  return std::min(std::max(k, 0), pieces() - 1);
}

double PiecewisePolyD::eval(double u) const {
  return polys[static_cast<std::size_t>(piece_index(u))].eval(u);
}

PiecewisePolyD PiecewisePolyD::deriv() const {
  PiecewisePolyD d;
  d.bp = bp;
  d.polys.reserve(polys.size());
  for (const auto& p : polys) d.polys.push_back(p.deriv());
  return d;
}

IntervalMaxTable IntervalMaxTable::build(const PiecewisePolyD& f) {
  IntervalMaxTable t;
  t.f_ = f;
  t.crit_.resize(f.polys.size());
  for (std::size_t k = 0; k < f.polys.size(); ++k) {
    PolyD df = f.polys[k].deriv();
    t.crit_[k] = real_roots(df, f.bp[k], f.bp[k + 1]);
  }
  return t;
}

double IntervalMaxTable::max_abs(double lo, double hi) const {
  lo = std::max(lo, f_.lo());
  hi = std::min(hi, f_.hi());
  if (!(lo <= hi)) throw GridError("max_abs: empty interval");
  double m = 0.0;
  int k0 = f_.piece_index(lo), k1 = f_.piece_index(hi);
  for (int k = k0; k <= k1; ++k) {
    const auto& p = f_.polys[static_cast<std::size_t>(k)];
    double a = std::max(lo, f_.bp[static_cast<std::size_t>(k)]);
    double b = std::min(hi, f_.bp[static_cast<std::size_t>(k) + 1]);
    m = std::max(m, std::abs(p.eval(a)));
    m = std::max(m, std::abs(p.eval(b)));
    for (double r : crit_[static_cast<std::size_t>(k)])
      if (r >= a && r <= b) m = std::max(m, std::abs(p.eval(r)));
  }
  return m;
}

int PolyQ::degree() const {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (c[static_cast<std::size_t>(k)] != 0) return k;
  return -1;
}

Rational PolyQ::eval(const Rational& x) const {
  Rational s = 0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

PolyQ PolyQ::deriv() const {
  PolyQ d;
  if (c.size() <= 1) return d;
  d.c.resize(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k)
    d.c[k - 1] = static_cast<long>(k) * c[k];
  return d;
}

PolyD PolyQ::to_double() const {
  PolyD p;
  p.c.reserve(c.size());
  for (const auto& q : c) p.c.push_back(apcl::to_double(q));
  return p;
}

bool PolyQ::is_affine() const { return degree() <= 1; }

}  // namespace apcl
