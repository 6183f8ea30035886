#include "apcl/lift.hpp"

#include <cmath>
#include <numbers>

#include "apcl/parallel.hpp"

namespace apcl {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Midpoint node j of N: (j + 1/2) / N.
inline double node(std::size_t j, int n) {
  return (static_cast<double>(j) + 0.5) / static_cast<double>(n);
}

// Decode a flat row-major index into per-dimension indices.
inline void decode(std::size_t flat, std::span<const int> shape,
                   std::size_t* out) {
  for (int i = static_cast<int>(shape.size()); i-- > 0;) {
    std::size_t n = static_cast<std::size_t>(shape[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(i)] = flat % n;
    flat /= n;
  }
}

}  // namespace

LiftSpec::LiftSpec(RealBase::Ptr base, int dims, std::vector<Frequency> basis)
    : base_(std::move(base)), dims_(dims), basis_(std::move(basis)),
      qb_(base_, dims_) {
  for (const auto& f : basis_) {
    if (f.is_zero()) throw ConfigError("lift basis: zero frequency");
    if (!qb_.extend(f))
      throw ConfigError("lift basis: rationally dependent frequencies");
  }
}

LiftSpec LiftSpec::from_group(const FreqGroup& g) {
  return LiftSpec(g.base, g.dims, g.generators());
}

LiftSpec LiftSpec::from_poly(const TrigPoly& p) {
  return from_group(spectrum_group(p));
}

LiftSpec LiftSpec::from_basis(std::vector<Frequency> basis) {
  if (basis.empty()) throw ConfigError("lift basis: empty");
  return LiftSpec(basis[0].base(), basis[0].dims(), std::move(basis));
}

std::optional<std::vector<long>> LiftSpec::try_coords(
    const Frequency& lambda) const {
  auto q = qb_.try_coords(lambda);
  if (!q) return std::nullopt;
  std::vector<long> out;
  out.reserve(q->size());
  for (const auto& c : *q) {
    if (c.get_den() != 1) return std::nullopt;
    if (!c.get_num().fits_slong_p())
      throw LatticeError("lattice coordinate overflows long");
    out.push_back(c.get_num().get_si());
  }
  return out;
}

std::vector<long> LiftSpec::coords(const Frequency& lambda) const {
  auto c = try_coords(lambda);
  if (!c)
    throw LatticeError("frequency is not on the lift lattice");
  return *c;
}

std::vector<double> LiftSpec::theta_of(std::span<const double> x) const {
  std::vector<double> th(static_cast<std::size_t>(m()));
  for (int j = 0; j < m(); ++j) {
    double r = std::remainder(basis_[static_cast<std::size_t>(j)].dot(x), 1.0);
    if (r < 0.0) r += 1.0;
    if (r >= 1.0) r = 0.0;
    th[static_cast<std::size_t>(j)] = r;
  }
  return th;
}

LiftedPoly LiftedPoly::compile(const TrigPoly& p, const LiftSpec& lift) {
  require_same_base(*p.base(), *lift.base(), "lift compile");
  if (p.dims() != lift.ambient_dims())
    throw ConfigError("lift compile: ambient dimension mismatch");
  LiftedPoly out;
  out.m_ = lift.m();
  out.real_ = p.is_real();
  for (const auto& [lambda, a] : p.terms()) {
    if (a == std::complex<double>{0.0, 0.0}) continue;
    std::vector<long> k = lift.coords(lambda);  // throws if off-lattice
    if (lambda.is_zero()) out.mean_ += a.real();
    out.waves_.insert(out.waves_.end(), k.begin(), k.end());
    out.amps_.push_back(a);
  }
  return out;
}

std::complex<double> LiftedPoly::eval(std::span<const double> theta) const {
  std::complex<double> s{0.0, 0.0};
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    double ph = 0.0;
    for (int j = 0; j < m_; ++j)
      ph += static_cast<double>(waves_[t * static_cast<std::size_t>(m_) +
                                       static_cast<std::size_t>(j)]) *
            theta[static_cast<std::size_t>(j)];
    double r = std::remainder(ph, 1.0);
    s += amps_[t] * std::complex<double>(std::cos(kTwoPi * r),
                                         std::sin(kTwoPi * r));
  }
  return s;
}

double LiftedPoly::eval_real(std::span<const double> theta) const {
  if (!real_) throw ConfigError("eval_real on a non-real lifted poly");
  double s = 0.0;
  for (std::size_t t = 0; t < amps_.size(); ++t) {
    const long* k = waves_.data() + t * static_cast<std::size_t>(m_);
    // Fold over conjugate pairs: keep zero wave and positive-leading waves.
    int lead = 0;
    for (int j = 0; j < m_; ++j)
      if (k[j] != 0) {
        lead = k[j] > 0 ? 1 : -1;
        break;
      }
    if (lead < 0) continue;
    if (lead == 0) {
      s += amps_[t].real();
      continue;
    }
    double ph = 0.0;
    for (int j = 0; j < m_; ++j)
      ph += static_cast<double>(k[j]) * theta[static_cast<std::size_t>(j)];
    double th = kTwoPi * std::remainder(ph, 1.0);
    s += 2.0 * (amps_[t].real() * std::cos(th) -
                amps_[t].imag() * std::sin(th));
  }
  return s;
}

std::size_t QuadratureOpts::total_points(int m) const {
  if (points_per_dim < 1)
    throw ConfigError("quadrature: points_per_dim must be >= 1");
  std::size_t total = 1;
  for (int j = 0; j < m; ++j) {
    std::size_t next = total * static_cast<std::size_t>(points_per_dim);
    if (next / static_cast<std::size_t>(points_per_dim) != total ||
        next > kMaxTotal)
      throw GridError(
          "quadrature grid exceeds the 2^24 sample cap; lower points_per_dim");
    total = next;
  }
  return total;
}

namespace {

// Streaming block reduction over the full tensor grid of |P| values.
template <typename Fn>
double grid_block_sum(const LiftedPoly& lp, int n_per_dim, int threads,
                      std::size_t total, Fn&& value_of) {
  const int m = lp.m();
  std::vector<int> shape(static_cast<std::size_t>(m), n_per_dim);
  return det_block_sum(
      total, pick_block(total), threads,
      [&](std::size_t lo, std::size_t hi) {
        KahanSum part;
        std::size_t jdx[8];
        double theta[8];
        for (std::size_t f = lo; f < hi; ++f) {
          decode(f, shape, jdx);
          for (int j = 0; j < m; ++j)
            theta[j] = node(jdx[j], n_per_dim);
          part.add(value_of(std::span<const double>(
              theta, static_cast<std::size_t>(m))));
        }
        return part.value();
      });
}

}  // namespace

double besicovitch_norm(const TrigPoly& p, const LiftSpec& lift,
                        const QuadratureOpts& opts) {
  LiftedPoly lp = LiftedPoly::compile(p, lift);
  std::size_t total = opts.total_points(lift.m());
  double s = grid_block_sum(lp, opts.points_per_dim, opts.threads, total,
                            [&](std::span<const double> th) {
                              return std::abs(lp.eval_real(th));
                            });
  return s / static_cast<double>(total);
}

double besicovitch_distance(const TrigPoly& p, const TrigPoly& q,
                            const LiftSpec& lift, const QuadratureOpts& opts) {
  return besicovitch_norm(p - q, lift, opts);
}

double excess_mean(const TrigPoly& p, double level, const LiftSpec& lift,
                   const QuadratureOpts& opts) {
  if (level < 0.0) throw DomainError("excess_mean: level must be >= 0");
  LiftedPoly lp = LiftedPoly::compile(p, lift);
  std::size_t total = opts.total_points(lift.m());
  double s = grid_block_sum(lp, opts.points_per_dim, opts.threads, total,
                            [&](std::span<const double> th) {
                              double ex = std::abs(lp.eval_real(th)) - level;
                              return ex > 0.0 ? ex : 0.0;
                            });
  return s / static_cast<double>(total);
}

double ess_sup(const TrigPoly& p, const LiftSpec& lift,
               const QuadratureOpts& opts) {
  LiftedPoly lp = LiftedPoly::compile(p, lift);
  const int m = lift.m();
  std::size_t total = opts.total_points(m);
  std::vector<int> shape(static_cast<std::size_t>(m), opts.points_per_dim);

  // Cache |P| on the grid; the bisection predicate scans it with early exit.
  std::vector<double> cache(total);
  parallel_blocks(total, pick_block(total), opts.threads,
                  [&](std::size_t, std::size_t lo, std::size_t hi) {
                    std::size_t jdx[8];
                    double theta[8];
                    for (std::size_t f = lo; f < hi; ++f) {
                      decode(f, shape, jdx);
                      for (int j = 0; j < m; ++j)
                        theta[j] = node(jdx[j], opts.points_per_dim);
                      cache[f] = std::abs(lp.eval_real(std::span<const double>(
                          theta, static_cast<std::size_t>(m))));
                    }
                  });

  auto any_above = [&](double level) {
    for (double v : cache)
      if (v > level) return true;
    return false;
  };

  // Bisect the smallest level no sample exceeds.
  double lo = 0.0, hi = p.coeff_l1() + 1.0;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (any_above(mid))
      lo = mid;
    else
      hi = mid;
  }
  double grid_sup = 0.0;
  std::size_t arg = 0;
  for (std::size_t f = 0; f < total; ++f)
    if (cache[f] > grid_sup) {
      grid_sup = cache[f];
      arg = f;
    }

  if (m == 0) return grid_sup;

  // Coordinate-wise golden-section polish of the argmax cell.
  std::size_t jdx[8];
  decode(arg, shape, jdx);
  std::vector<double> theta(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    theta[static_cast<std::size_t>(j)] = node(jdx[j], opts.points_per_dim);
  auto value_at = [&](std::span<const double> th) {
    return std::abs(lp.eval_real(th));
  };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double h = 1.0 / static_cast<double>(opts.points_per_dim);
  double best = grid_sup;
  for (int sweep = 0; sweep < 3; ++sweep) {
    for (int j = 0; j < m; ++j) {
      double a = theta[static_cast<std::size_t>(j)] - h;
      double b = theta[static_cast<std::size_t>(j)] + h;
      double c = b - gr * (b - a), d = a + gr * (b - a);
      auto probe = [&](double v) {
        std::vector<double> th = theta;
        th[static_cast<std::size_t>(j)] = v;
        return value_at(th);
      };
      double fc = probe(c), fd = probe(d);
      for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
          a = c;
          c = d;
          fc = fd;
          d = a + gr * (b - a);
          fd = probe(d);
        } else {
          b = d;
          d = c;
          fd = fc;
          c = b - gr * (b - a);
          fc = probe(c);
        }
      }
      double mid = 0.5 * (a + b);
      double fm = probe(mid);
      if (fm >= best) {
        best = fm;
        theta[static_cast<std::size_t>(j)] = mid;
      }
    }
  }
  return std::max(best, grid_sup);
}

}  // namespace apcl
