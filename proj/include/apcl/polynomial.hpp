#pragma once

#include <vector>

#include "apcl/rational.hpp"

namespace apcl {

// Dense univariate polynomial, ascending coefficients.
struct PolyD {
  std::vector<double> c;

  int degree() const;  // -1 for the zero polynomial
  double eval(double x) const;
  PolyD deriv() const;
};

// Real roots in [lo, hi] (simultaneous-iteration root finder plus filtering),
// ascending, deduplicated.  Meant for low-degree flux pieces.
std::vector<double> real_roots(const PolyD& p, double lo, double hi);

// Continuous piecewise polynomial on [bp.front(), bp.back()].
struct PiecewisePolyD {
  std::vector<double> bp;        // K+1 strictly increasing breakpoints
  std::vector<PolyD> polys;      // K pieces

  int pieces() const { return static_cast<int>(polys.size()); }
  double lo() const { return bp.front(); }
  double hi() const { return bp.back(); }
  // Piece containing u; [bp_k, bp_{k+1}) convention, last piece right-closed.
  int piece_index(double u) const;
  double eval(double u) const;
  PiecewisePolyD deriv() const;  // piecewise derivative (may jump at breakpoints)
};

// Answers max |f| over subintervals of a piecewise polynomial's domain using
// per-piece critical point tables (roots of f' inside each piece).
class IntervalMaxTable {
 public:
  static IntervalMaxTable build(const PiecewisePolyD& f);
  // max |f| over [lo, hi] (clamped to the domain; throws GridError if empty).
  double max_abs(double lo, double hi) const;

 private:
  PiecewisePolyD f_;
  std::vector<std::vector<double>> crit_;  // per piece, interior extrema of f
};

// Rational polynomial (exact), ascending coefficients.
struct PolyQ {
  std::vector<Rational> c;

  int degree() const;  // -1 for zero
  Rational eval(const Rational& x) const;
  PolyQ deriv() const;
  PolyD to_double() const;
  // True when degree <= 1.
  bool is_affine() const;
};

}  // namespace apcl
