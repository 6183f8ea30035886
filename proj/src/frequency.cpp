#include "apcl/frequency.hpp"

namespace apcl {

Frequency::Frequency() : Frequency(RealBase::unit(), 1, {Rational(0)}) {}

Frequency::Frequency(RealBase::Ptr base, int dims, std::vector<Rational> coords)
    : base_(std::move(base)), dims_(dims), coords_(std::move(coords)) {
  if (dims_ < 1) throw ConfigError("frequency: dims must be >= 1");
  if (coords_.size() != static_cast<std::size_t>(dims_) * base_->dim())
    throw ConfigError("frequency: coordinate count does not match dims * |base|");
}

Frequency Frequency::zero(RealBase::Ptr base, int dims) {
  std::size_t n = static_cast<std::size_t>(dims) * base->dim();
  return Frequency(std::move(base), dims, std::vector<Rational>(n, Rational(0)));
}

Frequency Frequency::axis(RealBase::Ptr base, int dims, int i, std::size_t k,
                          const Rational& q) {
  Frequency f = zero(std::move(base), dims);
  f.coords_[static_cast<std::size_t>(i) * f.base_->dim() + k] = q;
  return f;
}

bool Frequency::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

double Frequency::component(int i) const {
  return static_cast<double>(component_ld(i));
}

long double Frequency::component_ld(int i) const {
  long double v = 0.0L;
  for (std::size_t k = 0; k < base_->dim(); ++k) {
    const Rational& c = coord(i, k);
    if (c != 0) v += to_long_double(c) * base_->value_ld(k);
  }
  return v;
}

std::vector<double> Frequency::components() const {
  std::vector<double> out(static_cast<std::size_t>(dims_));
  for (int i = 0; i < dims_; ++i) out[static_cast<std::size_t>(i)] = component(i);
  return out;
}

double Frequency::dot(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dims_))
    throw ConfigError("frequency dot: point dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < dims_; ++i) s += component(i) * x[static_cast<std::size_t>(i)];
  return s;
}

Frequency Frequency::operator-() const {
  Frequency f = *this;
  for (auto& c : f.coords_) c = -c;
  return f;
}

Frequency Frequency::operator+(const Frequency& o) const {
  require_same_base(*base_, *o.base_, "frequency +");
  if (dims_ != o.dims_) throw ConfigError("frequency +: dims mismatch");
  Frequency f = *this;
  for (std::size_t j = 0; j < coords_.size(); ++j) f.coords_[j] += o.coords_[j];
  return f;
}

Frequency Frequency::operator-(const Frequency& o) const { return *this + (-o); }

Frequency Frequency::scaled(const Rational& q) const {
  Frequency f = *this;
  for (auto& c : f.coords_) c *= q;
  return f;
}

bool Frequency::operator==(const Frequency& o) const {
  require_same_base(*base_, *o.base_, "frequency ==");
  return dims_ == o.dims_ && coords_ == o.coords_;
}

bool Frequency::operator<(const Frequency& o) const {
  require_same_base(*base_, *o.base_, "frequency <");
  if (dims_ != o.dims_) throw ConfigError("frequency <: dims mismatch");
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    int c = cmp(coords_[j], o.coords_[j]);
    if (c != 0) return c < 0;
  }
  return false;
}

bool Frequency::positive_leading() const {
  for (const auto& c : coords_) {
    if (c != 0) return c > 0;
  }
  return false;
}

}  // namespace apcl
