#pragma once

#include <optional>

#include "apcl/lattice.hpp"
#include "apcl/polynomial.hpp"

namespace apcl {

// Continuous piecewise-polynomial flux vector phi: [u_0, u_K] -> R^n with
// exact rational coefficients.  pieces[k][c] is component c on
// [breakpoints[k], breakpoints[k+1]].
class PiecewiseFlux {
 public:
  static PiecewiseFlux make(int dims, std::vector<Rational> breakpoints,
                            std::vector<std::vector<PolyQ>> pieces);
  // Single piece covering [lo, hi].
  static PiecewiseFlux single(int dims, Rational lo, Rational hi,
                              std::vector<PolyQ> components);

  int dims() const { return dims_; }
  int piece_count() const { return static_cast<int>(pieces_.size()); }
  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const Rational& lo() const { return breakpoints_.front(); }
  const Rational& hi() const { return breakpoints_.back(); }
  const PolyQ& piece(int k, int comp) const {
    return pieces_.at(static_cast<std::size_t>(k)).at(
        static_cast<std::size_t>(comp));
  }

  Rational eval_exact(int comp, const Rational& u) const;
  // Component as a double-coefficient piecewise polynomial.
  PiecewisePolyD component_d(int comp) const;

 private:
  PiecewiseFlux() = default;
  int dims_ = 1;
  std::vector<Rational> breakpoints_;
  std::vector<std::vector<PolyQ>> pieces_;
};

// Per-component Lipschitz constants max |phi_c'| on [a, b] (exact derivative
// extrema bracketing: endpoints, breakpoints, critical points).
std::vector<double> lipschitz_constant(const PiecewiseFlux& phi, double a,
                                       double b);

// Witness that xi . phi is affine on a piece interval: the certificate for ND
// failure.  slope/intercept live in the Q-span of the real base.
struct AffineWitness {
  Frequency xi;
  std::vector<BigInt> gen_coeffs;  // xi over the group's generators
  int piece = 0;
  Rational piece_lo = 0, piece_hi = 0;     // affine interval (clipped to [a,b])
  std::vector<Rational> slope_coords;      // over the real base
  std::vector<Rational> intercept_coords;  // over the real base

  double slope() const;
  double intercept() const;
};

struct NDReport {
  bool holds = true;
  std::optional<AffineWitness> witness;
};

// Exact decision of the non-degeneracy condition over [a, b]: ND fails iff
// some nonzero xi in G makes xi . phi affine on a piece subinterval.  The
// witness is the shortest kernel generator (infinity norm, ties lexicographic,
// then lowest piece index).
NDReport nd_check(const PiecewiseFlux& phi, const FreqGroup& g,
                  const Rational& a, const Rational& b);

// Exact traveling-wave solution u(t,x) = W(xi . x - alpha t) built from an ND
// witness; the closed-form certificate that decay fails.
struct TravelingWave {
  TrigPoly profile;  // W: 1-D over the unit base, real
  TrigPoly initial;  // W(xi . x) over the ambient base
  AffineWitness witness;
  double speed = 0.0;  // alpha = affine slope
  double mean = 0.0;   // C = mean of W
  bool synthesized_profile = false;

  double profile_at(double s) const;
  double value(double t, std::span<const double> x) const;
  // D(t) = mean over one period of |W(s - alpha t) - C|, by quadrature.
  double descriptor(double t, int samples = 1 << 17) const;
};

// Builds the wave from a failing report.  When `profile` is null a sine
// profile strictly inside the witness interval is synthesized.  RangeError
// when a supplied profile cannot be certified inside the interval.
TravelingWave make_counterexample(const PiecewiseFlux& phi,
                                  const NDReport& report,
                                  const TrigPoly* profile = nullptr);

// Max |entropy residual| of the wave over a phase/level sample grid, skipping
// near-contact levels |W - k| < 1e-9 where sign flips; smooth-region check.
double traveling_residual_max(const TravelingWave& wave,
                              const PiecewiseFlux& phi, int phase_samples,
                              int level_samples);

}  // namespace apcl
