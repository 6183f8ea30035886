#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "apcl/frequency.hpp"

namespace apcl {

// Finite trigonometric sum  p(x) = sum_lambda a_lambda e^{2 pi i lambda . x}
// keyed by exact frequencies.  Coefficients are complex doubles; a poly is
// "real" when its terms come in conjugate pairs, which is checked exactly.
class TrigPoly {
 public:
  using Coeff = std::complex<double>;
  using TermMap = std::map<Frequency, Coeff>;

  // Empty poly over the unit base (so aggregates can default-construct).
  TrigPoly();
  TrigPoly(RealBase::Ptr base, int dims);

  static TrigPoly constant(RealBase::Ptr base, int dims, Coeff c);

  int dims() const { return dims_; }
  const RealBase::Ptr& base() const { return base_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Frequency& lambda, Coeff a);
  // amp * cos(2 pi lambda . x) resp. amp * sin(...), added as a conjugate pair.
  void add_cos(const Frequency& lambda, double amp);
  void add_sin(const Frequency& lambda, double amp);

  // Drop terms with exactly zero coefficient.
  void prune();

  bool is_real() const;

  Coeff eval(std::span<const double> x) const;
  // Conjugate-pair folded evaluation; throws ConfigError unless is_real().
  double eval_real(std::span<const double> x) const;
  // d/dx_i of the folded evaluation.
  double eval_real_deriv(int i, std::span<const double> x) const;

  // a_lambda, or 0 when lambda is not in the spectrum.
  Coeff bohr_fourier(const Frequency& lambda) const;
  Coeff mean_value() const;

  // Frequencies with nonzero coefficient, in map order.
  std::vector<Frequency> spectrum() const;

  // sum |a_lambda|; a cheap uniform bound on |p|.
  double coeff_l1() const;

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly scaled(Coeff s) const;

 private:
  RealBase::Ptr base_;
  int dims_;
  TermMap terms_;
};

// W(xi . x) as a poly over xi's base/dims, where `profile` is 1-D over the
// unit base with integer frequencies j: each term j maps to j * xi.
TrigPoly compose_direction(const TrigPoly& profile, const Frequency& xi);

}  // namespace apcl
