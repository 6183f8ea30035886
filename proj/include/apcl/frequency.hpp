#pragma once

#include <span>
#include <vector>

#include "apcl/rational.hpp"
#include "apcl/real_base.hpp"

namespace apcl {

// A spatial frequency lambda in R^n with exact rational coordinates over a
// real base: lambda_i = sum_k coord(i,k) * beta_k.  Equality and ordering are
// exact (coordinate-wise), so frequencies can key maps without any float
// tolerance.
class Frequency {
 public:
  // Zero frequency over the unit base; exists so aggregates holding a
  // Frequency can be default-constructed.
  Frequency();
  // coords is row-major, dims * base_dim entries.
  Frequency(RealBase::Ptr base, int dims, std::vector<Rational> coords);

  static Frequency zero(RealBase::Ptr base, int dims);
  // 1-D convenience: lambda = q * beta_k.
  static Frequency axis(RealBase::Ptr base, int dims, int i, std::size_t k,
                        const Rational& q);

  int dims() const { return dims_; }
  std::size_t base_dim() const { return base_->dim(); }
  const RealBase::Ptr& base() const { return base_; }

  const Rational& coord(int i, std::size_t k) const {
    return coords_[static_cast<std::size_t>(i) * base_->dim() + k];
  }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;

  // lambda_i as floats.
  double component(int i) const;
  long double component_ld(int i) const;
  std::vector<double> components() const;

  // lambda . x
  double dot(std::span<const double> x) const;

  Frequency operator-() const;
  Frequency operator+(const Frequency& o) const;
  Frequency operator-(const Frequency& o) const;
  Frequency scaled(const Rational& q) const;

  bool operator==(const Frequency& o) const;
  bool operator!=(const Frequency& o) const { return !(*this == o); }
  // Lexicographic on coordinates; strict total order within one base.
  bool operator<(const Frequency& o) const;

  // True when the first nonzero coordinate is positive; exactly one of
  // lambda, -lambda satisfies this for nonzero lambda.  Used to fold
  // conjugate term pairs.
  bool positive_leading() const;

 private:
  RealBase::Ptr base_;
  int dims_;
  std::vector<Rational> coords_;
};

}  // namespace apcl
