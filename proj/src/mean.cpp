#include "apcl/mean.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apcl/errors.hpp"

namespace apcl {
namespace {

// 16-point Gauss-Legendre on [-1, 1].
constexpr int kGl = 16;
constexpr double kGlX[kGl] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGlW[kGl] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

// Nodes and weights for [-R/2, R/2] split into ceil(R/panel) panels.
void line_rule(double R, double panel, std::vector<double>& x,
               std::vector<double>& w) {
  int panels = std::max(1, static_cast<int>(std::ceil(R / panel)));
  double h = R / panels;
  x.clear();
  w.clear();
  x.reserve(static_cast<std::size_t>(panels) * kGl);
  w.reserve(static_cast<std::size_t>(panels) * kGl);
  for (int p = 0; p < panels; ++p) {
    double a = -R / 2.0 + p * h;
    double mid = a + h / 2.0;
    for (int g = 0; g < kGl; ++g) {
      x.push_back(mid + 0.5 * h * kGlX[g]);
      w.push_back(0.5 * h * kGlW[g]);
    }
  }
}

double cube_average(const ScalarField& f, int dims, double R, double panel) {
  std::vector<double> x, w;
  line_rule(R, panel, x, w);
  const std::size_t npts = x.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(dims), 0);
  std::vector<double> pt(static_cast<std::size_t>(dims));
  double total = 0.0;
  // Odometer over the tensor grid; dims is small (<= 3 in practice).
  while (true) {
    double wt = 1.0;
    for (int i = 0; i < dims; ++i) {
      pt[static_cast<std::size_t>(i)] = x[idx[static_cast<std::size_t>(i)]];
      wt *= w[idx[static_cast<std::size_t>(i)]];
    }
    total += wt * f(pt);
    int i = dims - 1;
    while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == npts) {
      idx[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  if (!std::isfinite(total))
    throw DomainError("numeric_mean: non-finite sample encountered");
  return total / std::pow(R, dims);
}

}  // namespace

MeanEstimate numeric_mean(const ScalarField& f, int dims,
                          std::span<const double> radii, double panel) {
  if (dims < 1) throw ConfigError("numeric_mean: dims must be >= 1");
  if (radii.empty()) throw ConfigError("numeric_mean: empty radius schedule");
  if (!(panel > 0.0)) throw ConfigError("numeric_mean: panel must be positive");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ConfigError("numeric_mean: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw ConfigError("numeric_mean: radii must be increasing");
  }
  MeanEstimate est;
  for (double R : radii) {
    double v = cube_average(f, dims, R, panel);
    est.history.emplace_back(R, v);
  }
  est.radius = radii.back();
  est.value = est.history.back().second;
  std::size_t tail = std::min<std::size_t>(3, est.history.size());
  double spread = 0.0;
  for (std::size_t i = est.history.size() - tail; i < est.history.size(); ++i)
    for (std::size_t j = i + 1; j < est.history.size(); ++j)
      spread = std::max(spread,
                        std::abs(est.history[i].second - est.history[j].second));
  est.residual = spread;
  return est;
}

MeanEstimate numeric_mean(const TrigPoly& p, std::span<const double> radii,
                          double panel) {
  return numeric_mean(
      [&p](std::span<const double> x) { return p.eval_real(x); }, p.dims(),
      radii, panel);
}

double Bump::integral() const {
  double v = 1.0;
  for (const auto& g : factors) {
    double fi = 0.0;
    for (int k = 0; k < g.pieces(); ++k)
      fi += poly_oscillatory_integral(g.polys[static_cast<std::size_t>(k)],
                                      g.bp[static_cast<std::size_t>(k)],
                                      g.bp[static_cast<std::size_t>(k) + 1], 0.0)
                .real();
    v *= fi;
  }
  return v;
}

Bump Bump::triangle(int dims) {
  Bump b;
  for (int i = 0; i < dims; ++i) {
    PiecewisePolyD g;
    g.bp = {-1.0, 0.0, 1.0};
    g.polys = {PolyD{{1.0, 1.0}}, PolyD{{1.0, -1.0}}};
    b.factors.push_back(std::move(g));
  }
  return b;
}

Bump Bump::box(int dims) {
  Bump b;
  for (int i = 0; i < dims; ++i) {
    PiecewisePolyD g;
    g.bp = {-0.5, 0.5};
    g.polys = {PolyD{{1.0}}};
    b.factors.push_back(std::move(g));
  }
  return b;
}

std::complex<double> poly_oscillatory_integral(const PolyD& poly, double a,
                                               double b, double w) {
  const std::complex<double> iw(0.0, w);
  std::complex<double> total(0.0, 0.0);
  if (std::abs(w) < 1e-3) {
    // Taylor in w: int y^q e^{iwy} = sum_t (iw)^t / t! * (b^{q+t+1} - a^{q+t+1}) / (q+t+1)
    for (std::size_t q = 0; q < poly.c.size(); ++q) {
      if (poly.c[q] == 0.0) continue;
      std::complex<double> term(0.0, 0.0);
      std::complex<double> pw(1.0, 0.0);
      double fact = 1.0;
      for (int t = 0; t <= 24; ++t) {
        double e = static_cast<double>(q) + t + 1.0;
        term += pw / fact * (std::pow(b, e) - std::pow(a, e)) / e;
        pw *= iw;
        fact *= (t + 1.0);
      }
      total += poly.c[q] * term;
    }
    return total;
  }
  // Antiderivative of y^q e^{iwy}: e^{iwy} sum_{s=0..q} (-1)^s q!/(q-s)! y^{q-s} / (iw)^{s+1}
  auto anti = [&](double y) {
    std::complex<double> s(0.0, 0.0);
    for (std::size_t q = 0; q < poly.c.size(); ++q) {
      if (poly.c[q] == 0.0) continue;
      std::complex<double> acc(0.0, 0.0);
      double fall = 1.0;  // q!/(q-s)!
      std::complex<double> powiw = iw;
      double sign = 1.0;
      for (std::size_t sdx = 0; sdx <= q; ++sdx) {
        acc += sign * fall * std::pow(y, static_cast<double>(q - sdx)) / powiw;
        fall *= static_cast<double>(q - sdx);
        powiw *= iw;
        sign = -sign;
      }
      s += poly.c[q] * acc;
    }
    return std::exp(std::complex<double>(0.0, w * y)) * s;
  };
  return anti(b) - anti(a);
}

std::complex<double> scaled_average(const TrigPoly& p, const Bump& g, double R) {
  if (g.dims() != p.dims())
    throw ConfigError("scaled_average: bump dimension mismatch");
  if (!(R > 0.0)) throw ConfigError("scaled_average: R must be positive");
  std::complex<double> total(0.0, 0.0);
  for (const auto& [lambda, a] : p.terms()) {
    std::complex<double> factor(1.0, 0.0);
    for (int i = 0; i < p.dims(); ++i) {
      const auto& gi = g.factors[static_cast<std::size_t>(i)];
      double w = 2.0 * std::numbers::pi * R * lambda.component(i);
      std::complex<double> fi(0.0, 0.0);
      for (int k = 0; k < gi.pieces(); ++k)
        fi += poly_oscillatory_integral(gi.polys[static_cast<std::size_t>(k)],
                                        gi.bp[static_cast<std::size_t>(k)],
                                        gi.bp[static_cast<std::size_t>(k) + 1], w);
      factor *= fi;
    }
    total += a * factor;
  }
  return total;
}

}  // namespace apcl
