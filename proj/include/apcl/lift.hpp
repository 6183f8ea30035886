#pragma once

#include <optional>

#include "apcl/lattice.hpp"

namespace apcl {

// Torus lift: a Q-linearly independent frequency basis lambda_1..lambda_m.
// An almost periodic function with spectrum in the generated lattice becomes
// a function on the m-torus via theta_j = lambda_j . x (mod 1).
class LiftSpec {
 public:
  static LiftSpec from_group(const FreqGroup& g);
  static LiftSpec from_poly(const TrigPoly& p);  // group of the spectrum
  // Explicit basis; rejects rationally dependent lists.
  static LiftSpec from_basis(std::vector<Frequency> basis);

  int m() const { return static_cast<int>(basis_.size()); }
  int ambient_dims() const { return dims_; }
  const RealBase::Ptr& base() const { return base_; }
  const std::vector<Frequency>& basis() const { return basis_; }

  // Integer lattice coordinates of lambda; LatticeError when lambda is not in
  // the Z-span of the basis.
  std::vector<long> coords(const Frequency& lambda) const;
  std::optional<std::vector<long>> try_coords(const Frequency& lambda) const;

  // theta(x) = (lambda_j . x mod 1)_j in [0, 1)^m.
  std::vector<double> theta_of(std::span<const double> x) const;

 private:
  LiftSpec(RealBase::Ptr base, int dims, std::vector<Frequency> basis);

  RealBase::Ptr base_;
  int dims_ = 1;
  std::vector<Frequency> basis_;
  QBasis qb_;
};

// A trig poly compiled onto a lift: integer wave vectors plus coefficients.
class LiftedPoly {
 public:
  static LiftedPoly compile(const TrigPoly& p, const LiftSpec& lift);

  int m() const { return m_; }
  std::size_t term_count() const { return amps_.size(); }
  bool is_real() const { return real_; }
  double mean() const { return mean_; }

  std::complex<double> eval(std::span<const double> theta) const;
  // Folded evaluation (requires a real source poly).
  double eval_real(std::span<const double> theta) const;

  const std::vector<long>& waves() const { return waves_; }  // m per term
  const std::vector<std::complex<double>>& amps() const { return amps_; }

 private:
  int m_ = 0;
  bool real_ = false;
  double mean_ = 0.0;
  std::vector<long> waves_;
  std::vector<std::complex<double>> amps_;
};

struct QuadratureOpts {
  int points_per_dim = 4096;
  int threads = 0;  // 0: use the global worker count
  static constexpr std::size_t kMaxTotal = std::size_t(1) << 24;

  std::size_t total_points(int m) const;
};

// Torus-integral realizations of the mean quantities: for a trig poly with
// spectrum inside the lift lattice these equal the cube-average limits.

// N1(p) = torus mean of |P|.
double besicovitch_norm(const TrigPoly& p, const LiftSpec& lift,
                        const QuadratureOpts& opts = {});
// Torus mean of |p - q| (both compiled on the same lift).
double besicovitch_distance(const TrigPoly& p, const TrigPoly& q,
                            const LiftSpec& lift,
                            const QuadratureOpts& opts = {});
// Torus mean of (|P| - level)_+ .
double excess_mean(const TrigPoly& p, double level, const LiftSpec& lift,
                   const QuadratureOpts& opts = {});
// sup |P|: grid scan + level bisection to 1e-10, then a local coordinate-wise
// polish of the argmax against the analytic evaluator.
double ess_sup(const TrigPoly& p, const LiftSpec& lift,
               const QuadratureOpts& opts = {});

}  // namespace apcl
