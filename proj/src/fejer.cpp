#include "apcl/fejer.hpp"

#include <cmath>
#include <numbers>

namespace apcl {
namespace {

constexpr double kEpsSing = 1e-9;

long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Classical Fejer factor K_N(y) = (1/N) sin^2(pi N y) / sin^2(pi y), with the
// Taylor branch when sin(pi y) degenerates.  Arguments are folded first so
// large |y| costs no accuracy.
double fejer_factor(double y, long n) {
  double f = std::remainder(y, 1.0);
  double s = std::sin(std::numbers::pi * f);
  double nd = static_cast<double>(n);
  if (std::abs(s) < kEpsSing) {
    double pf = std::numbers::pi * f;
    return nd * (1.0 - pf * pf * (nd * nd - 1.0) / 3.0);
  }
  double z = std::remainder(nd * f, 1.0);
  double sn = std::sin(std::numbers::pi * z);
  return (sn * sn) / (nd * s * s);
}

}  // namespace

FejerPlan FejerPlan::make(const FreqGroup& g, int r) {
  if (r < 1 || r > 7)
    throw ConfigError("fejer plan: order must be in [1, 7]");
  auto gens = g.generators();
  // The zero group yields an empty basis: the plan fixes constants (weight 1
  // at frequency 0, kernel identically 1).
  if (gens.empty())
    return FejerPlan{QBasis(g.base, g.dims), r, factorial(r), factorial(r + 1)};
  return FejerPlan{qlinear_basis(gens), r, factorial(r), factorial(r + 1)};
}

FejerPlan FejerPlan::for_poly(const TrigPoly& p, int r) {
  return make(spectrum_group(p), r);
}

FejerWeight fejer_weight(const FejerPlan& plan, const Frequency& lambda) {
  FejerWeight w;
  auto coords = plan.basis.try_coords(lambda);
  if (!coords) return w;
  w.in_span = true;
  w.representable = true;
  Rational weight = 1;
  for (const auto& c : *coords) {
    Rational k = c * plan.stage_fact;
    if (k.get_den() != 1) {
      w.representable = false;
      break;
    }
    BigInt ki = k.get_num();
    if (cmp(abs(ki), plan.next_fact) >= 0) {
      w.representable = false;
      break;
    }
    w.index.push_back(ki);
    weight *= (Rational(plan.next_fact) - abs(ki)) / plan.next_fact;
  }
  if (!w.representable) {
    w.index.clear();
    return w;
  }
  w.weight = weight;
  return w;
}

double kernel_eval(const FejerPlan& plan, std::span<const double> x) {
  double v = 1.0;
  for (std::size_t j = 0; j < plan.basis.size(); ++j) {
    double y = plan.basis.at(j).dot(x) / static_cast<double>(plan.stage_fact);
    v *= fejer_factor(y, plan.next_fact);
  }
  return v;
}

TrigPoly bochner_fejer(const TrigPoly& p, const FejerPlan& plan) {
  TrigPoly out(p.base(), p.dims());
  for (const auto& [lambda, a] : p.terms()) {
    if (a == std::complex<double>{0.0, 0.0}) continue;
    FejerWeight w = fejer_weight(plan, lambda);
    if (!w.representable || w.weight == 0) continue;
    out.add_term(lambda, a * to_double(w.weight));
  }
  return out;
}

TrigPoly kernel_poly(const FejerPlan& plan) {
  if (plan.active() != 1 || plan.order > 2)
    throw ConfigError(
        "kernel_poly: materialization limited to one basis frequency, r <= 2");
  const Frequency& l1 = plan.basis.at(0);
  TrigPoly out(l1.base(), l1.dims());
  for (long k = -(plan.next_fact - 1); k <= plan.next_fact - 1; ++k) {
    Rational weight =
        (Rational(plan.next_fact) - (k < 0 ? -k : k)) / plan.next_fact;
    Frequency f = l1.scaled(rat(k, plan.stage_fact));
    out.add_term(f, {to_double(weight), 0.0});
  }
  return out;
}

}  // namespace apcl
