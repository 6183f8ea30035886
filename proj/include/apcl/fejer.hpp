#pragma once

#include "apcl/lattice.hpp"

namespace apcl {

// Summation plan of order r over a rational frequency basis lambda_1..m: the
// kernel prod_j K_{(r+1)!}(lambda_j . x / r!) with classical Fejer factors,
// equivalently coefficient weights prod_j (1 - |k_j| / (r+1)!) on the
// frequencies sum_j (k_j / r!) lambda_j.
struct FejerPlan {
  QBasis basis;
  int order = 1;
  long stage_fact = 1;  // r!
  long next_fact = 2;   // (r+1)!

  int active() const { return static_cast<int>(basis.size()); }

  // r in [1, 7]; factorials stay well inside long range.
  static FejerPlan make(const FreqGroup& g, int r);
  static FejerPlan for_poly(const TrigPoly& p, int r);
};

struct FejerWeight {
  bool in_span = false;        // lambda in the rational span of the basis
  bool representable = false;  // k_j integral with |k_j| < (r+1)!
  std::vector<BigInt> index;   // the k_j when representable
  Rational weight = Rational(0);
};

FejerWeight fejer_weight(const FejerPlan& plan, const Frequency& lambda);

// Kernel value at a point of R^n; nonnegative by construction.  Singular
// factors (sin(pi y) below 1e-9 in absolute value) use the Taylor limit.
double kernel_eval(const FejerPlan& plan, std::span<const double> x);

// Coefficient-wise smoothing: terms scaled by their Fejer weight, zero-weight
// terms dropped.
TrigPoly bochner_fejer(const TrigPoly& p, const FejerPlan& plan);

// The kernel itself as a trig poly.  Guarded to a single-frequency basis with
// r <= 2; larger plans blow up combinatorially and are refused.
TrigPoly kernel_poly(const FejerPlan& plan);

}  // namespace apcl
