#include "apcl/trig_poly.hpp"

#include <cmath>
#include <numbers>

namespace apcl {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i phase} with the phase folded to [-1/2, 1/2] first, so integer
// phases land exactly on 1.
inline std::complex<double> cis2pi(double phase) {
  double r = std::remainder(phase, 1.0);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

}  // namespace

TrigPoly::TrigPoly() : TrigPoly(RealBase::unit(), 1) {}

TrigPoly::TrigPoly(RealBase::Ptr base, int dims)
    : base_(std::move(base)), dims_(dims) {
  if (dims_ < 1) throw ConfigError("trig poly: dims must be >= 1");
}

TrigPoly TrigPoly::constant(RealBase::Ptr base, int dims, Coeff c) {
  TrigPoly p(std::move(base), dims);
  p.add_term(Frequency::zero(p.base_, dims), c);
  return p;
}

void TrigPoly::add_term(const Frequency& lambda, Coeff a) {
  require_same_base(*base_, *lambda.base(), "trig poly add_term");
  if (lambda.dims() != dims_)
    throw ConfigError("trig poly add_term: frequency dims mismatch");
  auto [it, fresh] = terms_.emplace(lambda, a);
  if (!fresh) it->second += a;
}

void TrigPoly::add_cos(const Frequency& lambda, double amp) {
  add_term(lambda, {amp / 2.0, 0.0});
  add_term(-lambda, {amp / 2.0, 0.0});
}

void TrigPoly::add_sin(const Frequency& lambda, double amp) {
  add_term(lambda, {0.0, -amp / 2.0});
  add_term(-lambda, {0.0, amp / 2.0});
}

void TrigPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == Coeff{0.0, 0.0})
      it = terms_.erase(it);
    else
      ++it;
  }
}

bool TrigPoly::is_real() const {
  for (const auto& [lambda, a] : terms_) {
    if (lambda.is_zero()) {
      if (a.imag() != 0.0) return false;
      continue;
    }
    auto it = terms_.find(-lambda);
    if (it == terms_.end()) {
      if (a != Coeff{0.0, 0.0}) return false;
      continue;
    }
    if (it->second != std::conj(a)) return false;
  }
  return true;
}

TrigPoly::Coeff TrigPoly::eval(std::span<const double> x) const {
  Coeff s{0.0, 0.0};
  for (const auto& [lambda, a] : terms_) s += a * cis2pi(lambda.dot(x));
  return s;
}

double TrigPoly::eval_real(std::span<const double> x) const {
  if (!is_real()) throw ConfigError("eval_real on a non-real trig poly");
  double s = 0.0;
  for (const auto& [lambda, a] : terms_) {
    if (lambda.is_zero()) {
      s += a.real();
    } else if (lambda.positive_leading()) {
      double th = kTwoPi * std::remainder(lambda.dot(x), 1.0);
      s += 2.0 * (a.real() * std::cos(th) - a.imag() * std::sin(th));
    }
  }
  return s;
}

double TrigPoly::eval_real_deriv(int i, std::span<const double> x) const {
  if (!is_real()) throw ConfigError("eval_real_deriv on a non-real trig poly");
  double s = 0.0;
  for (const auto& [lambda, a] : terms_) {
    if (lambda.is_zero() || !lambda.positive_leading()) continue;
    double th = kTwoPi * std::remainder(lambda.dot(x), 1.0);
    double li = lambda.component(i);
    // d/dx_i of 2(Re a cos th - Im a sin th), th' = 2 pi lambda_i.
    s += -kTwoPi * li * 2.0 * (a.real() * std::sin(th) + a.imag() * std::cos(th));
  }
  return s;
}

TrigPoly::Coeff TrigPoly::bohr_fourier(const Frequency& lambda) const {
  require_same_base(*base_, *lambda.base(), "bohr_fourier");
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Coeff{0.0, 0.0} : it->second;
}

TrigPoly::Coeff TrigPoly::mean_value() const {
  return bohr_fourier(Frequency::zero(base_, dims_));
}

std::vector<Frequency> TrigPoly::spectrum() const {
  std::vector<Frequency> out;
  out.reserve(terms_.size());
  for (const auto& [lambda, a] : terms_)
    if (a != Coeff{0.0, 0.0}) out.push_back(lambda);
  return out;
}

double TrigPoly::coeff_l1() const {
  double s = 0.0;
  for (const auto& [lambda, a] : terms_) s += std::abs(a);
  return s;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  require_same_base(*base_, *o.base_, "trig poly +");
  if (dims_ != o.dims_) throw ConfigError("trig poly +: dims mismatch");
  TrigPoly out = *this;
  for (const auto& [lambda, a] : o.terms_) out.add_term(lambda, a);
  return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
  return *this + o.scaled({-1.0, 0.0});
}

TrigPoly TrigPoly::scaled(Coeff s) const {
  TrigPoly out = *this;
  for (auto& [lambda, a] : out.terms_) a *= s;
  return out;
}

TrigPoly compose_direction(const TrigPoly& profile, const Frequency& xi) {
  if (profile.dims() != 1 || profile.base()->dim() != 1)
    throw ConfigError("compose_direction: profile must be 1-D over a unit base");
  TrigPoly out(xi.base(), xi.dims());
  for (const auto& [j, a] : profile.terms()) {
    // j is 1-D over the unit base; its single coordinate is the multiplier.
    out.add_term(xi.scaled(j.coord(0, 0)), a);
  }
  return out;
}

}  // namespace apcl
