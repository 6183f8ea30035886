#include "apcl/flux.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apcl/parallel.hpp"

namespace apcl {

PiecewiseFlux PiecewiseFlux::make(int dims, std::vector<Rational> breakpoints,
                                  std::vector<std::vector<PolyQ>> pieces) {
  if (dims < 1) throw ConfigError("flux: dims must be >= 1");
  if (breakpoints.size() < 2)
    throw ConfigError("flux: need at least two breakpoints");
  for (std::size_t k = 1; k < breakpoints.size(); ++k)
    if (!(breakpoints[k - 1] < breakpoints[k]))
      throw ConfigError("flux: breakpoints must be strictly increasing");
  if (pieces.size() != breakpoints.size() - 1)
    throw ConfigError("flux: piece count must match breakpoint intervals");
  for (const auto& piece : pieces)
    if (piece.size() != static_cast<std::size_t>(dims))
      throw ConfigError("flux: each piece needs one polynomial per component");
  // Exact continuity at interior breakpoints.
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    for (int c = 0; c < dims; ++c) {
      Rational left = pieces[k - 1][static_cast<std::size_t>(c)].eval(breakpoints[k]);
      Rational right = pieces[k][static_cast<std::size_t>(c)].eval(breakpoints[k]);
      if (left != right)
        throw ConfigError("flux: discontinuous at an interior breakpoint");
    }
  }
  PiecewiseFlux f;
  f.dims_ = dims;
  f.breakpoints_ = std::move(breakpoints);
  f.pieces_ = std::move(pieces);
  return f;
}

PiecewiseFlux PiecewiseFlux::single(int dims, Rational lo, Rational hi,
                                    std::vector<PolyQ> components) {
  return make(dims, {std::move(lo), std::move(hi)},
              {std::move(components)});
}

Rational PiecewiseFlux::eval_exact(int comp, const Rational& u) const {
  if (u < lo() || u > hi()) throw DomainError("flux: value outside domain");
  std::size_t k = 0;
  while (k + 1 < pieces_.size() && u >= breakpoints_[k + 1]) ++k;
  return pieces_[k][static_cast<std::size_t>(comp)].eval(u);
}

PiecewisePolyD PiecewiseFlux::component_d(int comp) const {
  PiecewisePolyD out;
  out.bp.reserve(breakpoints_.size());
  for (const auto& b : breakpoints_) out.bp.push_back(to_double(b));
  out.polys.reserve(pieces_.size());
  for (const auto& piece : pieces_)
    out.polys.push_back(piece[static_cast<std::size_t>(comp)].to_double());
  return out;
}

std::vector<double> lipschitz_constant(const PiecewiseFlux& phi, double a,
                                       double b) {
  if (a > b || a < to_double(phi.lo()) - 1e-12 ||
      b > to_double(phi.hi()) + 1e-12)
    throw DomainError("lipschitz_constant: interval outside flux domain");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(phi.dims()));
  for (int c = 0; c < phi.dims(); ++c) {
    PiecewisePolyD d = phi.component_d(c).deriv();
    out.push_back(IntervalMaxTable::build(d).max_abs(a, b));
  }
  return out;
}

double AffineWitness::slope() const {
  double s = 0.0;
  for (std::size_t k = 0; k < slope_coords.size(); ++k)
    s += to_double(slope_coords[k]) * xi.base()->value(k);
  return s;
}

double AffineWitness::intercept() const {
  double s = 0.0;
  for (std::size_t k = 0; k < intercept_coords.size(); ++k)
    s += to_double(intercept_coords[k]) * xi.base()->value(k);
  return s;
}

namespace {

BigInt inf_norm(const std::vector<BigInt>& v) {
  BigInt m = 0;
  for (const auto& x : v) {
    BigInt a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

bool lex_less(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

}  // namespace

NDReport nd_check(const PiecewiseFlux& phi, const FreqGroup& g,
                  const Rational& a, const Rational& b) {
  if (g.dims != phi.dims()) throw ConfigError("nd_check: dimension mismatch");
  if (!(a < b)) throw ConfigError("nd_check: empty interval");
  if (a < phi.lo() || b > phi.hi())
    throw DomainError("nd_check: interval outside flux domain");
  NDReport report;
  if (g.rank() == 0) return report;  // only xi = 0: ND holds vacuously

  const std::size_t d = g.base->dim();
  const std::size_t rank = static_cast<std::size_t>(g.rank());

  std::optional<std::vector<BigInt>> best;
  int best_piece = -1;

  for (int k = 0; k < phi.piece_count(); ++k) {
    Rational plo = std::max(phi.breakpoints()[static_cast<std::size_t>(k)], a);
    Rational phi_up =
        std::min(phi.breakpoints()[static_cast<std::size_t>(k) + 1], b);
    if (!(plo < phi_up)) continue;  // no interior overlap with [a, b]

    // Constraint columns: one per (base coordinate, degree >= 2) pair.
    // Entry for generator i: sum_c rows[i][c*d+kap] * coeff_q(phi_c piece k).
    std::vector<std::vector<Rational>> cols;
    for (std::size_t kap = 0; kap < d; ++kap) {
      int maxdeg = 0;
      for (int c = 0; c < phi.dims(); ++c)
        maxdeg = std::max(maxdeg, phi.piece(k, c).degree());
      for (int q = 2; q <= maxdeg; ++q) {
        std::vector<Rational> col(rank, Rational(0));
        bool nonzero = false;
        for (std::size_t i = 0; i < rank; ++i) {
          Rational e = 0;
          for (int c = 0; c < phi.dims(); ++c) {
            const auto& poly = phi.piece(k, c).c;
            if (static_cast<std::size_t>(q) >= poly.size()) continue;
            const BigInt& gij =
                g.rows[i][static_cast<std::size_t>(c) * d + kap];
            if (gij == 0 || poly[static_cast<std::size_t>(q)] == 0) continue;
            e += Rational(gij) * poly[static_cast<std::size_t>(q)];
          }
          if (e != 0) nonzero = true;
          col[i] = e;
        }
        if (nonzero) cols.push_back(std::move(col));
      }
    }

    // Integer constraint matrix (rank x #cols); columns scaled independently.
    IntMat cmat(rank, std::vector<BigInt>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      BigInt den = common_denominator(cols[j]);
      for (std::size_t i = 0; i < rank; ++i) {
        Rational scaled = cols[j][i] * den;
        cmat[i][j] = scaled.get_num();
      }
    }

    IntMat kernel = left_kernel(cmat, cols.size());
    if (kernel.empty()) continue;
    kernel = hnf(std::move(kernel));
    // Shortest generator: infinity norm, then lexicographic.
    std::vector<BigInt>* pick = nullptr;
    for (auto& row : kernel) {
      if (!pick || cmp(inf_norm(row), inf_norm(*pick)) < 0 ||
          (cmp(inf_norm(row), inf_norm(*pick)) == 0 && lex_less(row, *pick)))
        pick = &row;
    }
    if (pick && (!best || cmp(inf_norm(*pick), inf_norm(*best)) < 0)) {
      best = *pick;
      best_piece = k;
    }
  }

  if (!best) return report;

  report.holds = false;
  AffineWitness w;
  w.gen_coeffs = *best;
  w.piece = best_piece;
  w.piece_lo = std::max(phi.breakpoints()[static_cast<std::size_t>(best_piece)], a);
  w.piece_hi =
      std::min(phi.breakpoints()[static_cast<std::size_t>(best_piece) + 1], b);
  // xi = sum coeffs[i] * generator(i), exact.
  Frequency xi = Frequency::zero(g.base, g.dims);
  for (std::size_t i = 0; i < rank; ++i) {
    if ((*best)[i] == 0) continue;
    xi = xi + g.generator(static_cast<int>(i)).scaled(Rational((*best)[i]));
  }
  w.xi = xi;
  // Affine data of xi . phi on the witness piece, as base coordinates.
  w.slope_coords.assign(d, Rational(0));
  w.intercept_coords.assign(d, Rational(0));
  for (std::size_t kap = 0; kap < d; ++kap) {
    for (int c = 0; c < phi.dims(); ++c) {
      const Rational& xic = xi.coord(c, kap);
      if (xic == 0) continue;
      const auto& poly = phi.piece(best_piece, c).c;
      if (poly.size() > 1) w.slope_coords[kap] += xic * poly[1];
      if (!poly.empty()) w.intercept_coords[kap] += xic * poly[0];
    }
  }
  report.witness = std::move(w);
  return report;
}

double TravelingWave::profile_at(double s) const {
  double x[1] = {s};
  return profile.eval_real(std::span<const double>(x, 1));
}

double TravelingWave::value(double t, std::span<const double> x) const {
  double s = witness.xi.dot(x) - speed * t;
  return profile_at(s);
}

double TravelingWave::descriptor(double t, int samples) const {
  if (samples < 2) throw ConfigError("descriptor: need at least 2 samples");
  KahanSum sum;
  const double shift = speed * t;
  for (int i = 0; i < samples; ++i) {
    double s = (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
    sum.add(std::abs(profile_at(s - shift) - mean));
  }
  return sum.value() / static_cast<double>(samples);
}

TravelingWave make_counterexample(const PiecewiseFlux& phi,
                                  const NDReport& report,
                                  const TrigPoly* profile) {
  if (report.holds || !report.witness)
    throw ConfigError("make_counterexample: report carries no witness");
  const AffineWitness& w = *report.witness;
  const double lo = to_double(w.piece_lo), hi = to_double(w.piece_hi);

  TravelingWave wave;
  wave.witness = w;
  if (profile) {
    if (profile->dims() != 1 || profile->base()->dim() != 1 ||
        !profile->is_real())
      throw ConfigError(
          "make_counterexample: profile must be a real 1-D unit-base poly");
    double c0 = profile->mean_value().real();
    double amp = profile->coeff_l1() - std::abs(profile->mean_value());
    if (c0 - amp < lo - 1e-12 || c0 + amp > hi + 1e-12)
      throw RangeError(
          "make_counterexample: profile range leaves the affine interval");
    wave.profile = *profile;
  } else {
    // Sine profile strictly inside the interval.
    TrigPoly p(RealBase::unit(), 1);
    double mid = 0.5 * (lo + hi), amp = 0.45 * (hi - lo);
    p.add_term(Frequency::zero(RealBase::unit(), 1), {mid, 0.0});
    p.add_sin(Frequency::axis(RealBase::unit(), 1, 0, 0, rat(1)), amp);
    wave.profile = p;
    wave.synthesized_profile = true;
  }
  if (w.piece < 0 || w.piece >= phi.piece_count())
    throw ConfigError("make_counterexample: witness piece index out of range");
  wave.initial = compose_direction(wave.profile, w.xi);
  wave.speed = w.slope();
  wave.mean = wave.profile.mean_value().real();
  return wave;
}

double traveling_residual_max(const TravelingWave& wave,
                              const PiecewiseFlux& phi, int phase_samples,
                              int level_samples) {
  // d(xi . phi)/du on the witness piece, folded to double coefficients.
  PolyD dpsi;
  for (int c = 0; c < phi.dims(); ++c) {
    PolyD dc = phi.piece(wave.witness.piece, c).deriv().to_double();
    double xic = wave.witness.xi.component(c);
    if (dc.c.size() > dpsi.c.size()) dpsi.c.resize(dc.c.size(), 0.0);
    for (std::size_t q = 0; q < dc.c.size(); ++q) dpsi.c[q] += xic * dc.c[q];
  }
  double c0 = wave.profile.mean_value().real();
  double amp = wave.profile.coeff_l1() - std::abs(wave.profile.mean_value());
  double kmin = c0 - amp, kmax = c0 + amp;
  double worst = 0.0;
  for (int i = 0; i < phase_samples; ++i) {
    double s = (i + 0.5) / static_cast<double>(phase_samples);
    double u = wave.profile_at(s);
    double x[1] = {s};
    double du = wave.profile.eval_real_deriv(0, std::span<const double>(x, 1));
    double defect = dpsi.eval(u) - wave.speed;
    for (int j = 0; j < level_samples; ++j) {
      double k =
          kmin + (j + 0.5) * (kmax - kmin) / static_cast<double>(level_samples);
      if (std::abs(u - k) < 1e-9) continue;  // sign contact: not a smooth point
      worst = std::max(worst, std::abs(du * defect));
    }
  }
  return worst;
}

}  // namespace apcl
