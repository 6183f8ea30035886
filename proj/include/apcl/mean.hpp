#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "apcl/polynomial.hpp"
#include "apcl/trig_poly.hpp"

namespace apcl {

// Result of averaging over a growing family of cubes C_R = [-R/2, R/2]^n.
// `residual` is the max pairwise spread over the reported tail (up to the
// last three radii); it should shrink as the schedule grows.
struct MeanEstimate {
  double value = 0.0;
  double radius = 0.0;
  double residual = 0.0;
  std::vector<std::pair<double, double>> history;  // (R, value)
};

using ScalarField = std::function<double(std::span<const double>)>;

// Cube averages of f over C_R for each R in `radii` (positive, increasing),
// composite Gauss-Legendre with panels short enough for the oscillation
// scales we use.  `panel` is the panel length per dimension.
MeanEstimate numeric_mean(const ScalarField& f, int dims,
                          std::span<const double> radii, double panel = 0.5);

MeanEstimate numeric_mean(const TrigPoly& p, std::span<const double> radii,
                          double panel = 0.5);

// Tensor-product polynomial bump g(y) = prod g_i(y_i), each factor compactly
// supported and piecewise polynomial.
struct Bump {
  std::vector<PiecewisePolyD> factors;

  int dims() const { return static_cast<int>(factors.size()); }
  double integral() const;  // prod of factor integrals
  // Hat profile (1 - |y|)+ in every dimension.
  static Bump triangle(int dims);
  // Indicator of [-1/2, 1/2]^n.
  static Bump box(int dims);
};

// R^{-n} integral of p(x) g(x/R) dx, via the exact closed form
// sum_lambda a_lambda prod_i ghat_i(2 pi R lambda_i); no sampling involved.
std::complex<double> scaled_average(const TrigPoly& p, const Bump& g, double R);

// Exact integral of poly(y) e^{i w y} over [a, b] (closed form, with a Taylor
// branch near w = 0).  Exposed for tests.
std::complex<double> poly_oscillatory_integral(const PolyD& poly, double a,
                                               double b, double w);

}  // namespace apcl
