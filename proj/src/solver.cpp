#include "apcl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apcl/parallel.hpp"

namespace apcl {
namespace {

constexpr int kMaxLift = 3;

std::vector<std::size_t> strides_of(std::span<const int> shape) {
  std::vector<std::size_t> s(shape.size(), 1);
  for (int i = static_cast<int>(shape.size()) - 2; i >= 0; --i)
    s[static_cast<std::size_t>(i)] =
        s[static_cast<std::size_t>(i) + 1] *
        static_cast<std::size_t>(shape[static_cast<std::size_t>(i) + 1]);
  return s;
}

inline void decode(std::size_t flat, std::span<const int> shape,
                   std::size_t* digits) {
  for (int i = static_cast<int>(shape.size()); i-- > 0;) {
    std::size_t n = static_cast<std::size_t>(shape[static_cast<std::size_t>(i)]);
    digits[static_cast<std::size_t>(i)] = flat % n;
    flat /= n;
  }
}

}  // namespace

double CellField::mean(int threads) const {
  if (v.empty()) return 0.0;
  double s = det_block_sum(v.size(), pick_block(v.size()), threads,
                           [&](std::size_t lo_i, std::size_t hi_i) {
                             KahanSum part;
                             for (std::size_t i = lo_i; i < hi_i; ++i)
                               part.add(v[i]);
                             return part.value();
                           });
  return s / static_cast<double>(v.size());
}

std::pair<double, double> CellField::minmax() const {
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  for (double x : v) {
    mn = std::min(mn, x);
    mx = std::max(mx, x);
  }
  return {mn, mx};
}

LiftedFlux LiftedFlux::build(const PiecewiseFlux& phi, const LiftSpec& lift) {
  if (phi.dims() != lift.ambient_dims())
    throw ConfigError("lifted flux: ambient dimension mismatch");
  LiftedFlux out;
  out.dom_lo = to_double(phi.lo());
  out.dom_hi = to_double(phi.hi());
  for (int j = 0; j < lift.m(); ++j) {
    const Frequency& lambda = lift.basis()[static_cast<std::size_t>(j)];
    PiecewisePolyD combo;
    combo.bp.reserve(phi.breakpoints().size());
    for (const auto& b : phi.breakpoints()) combo.bp.push_back(to_double(b));
    for (int k = 0; k < phi.piece_count(); ++k) {
      PolyD acc;
      for (int c = 0; c < phi.dims(); ++c) {
        double lc = lambda.component(c);
        if (lc == 0.0) continue;
        PolyD pc = phi.piece(k, c).to_double();
        if (pc.c.size() > acc.c.size()) acc.c.resize(pc.c.size(), 0.0);
        for (std::size_t q = 0; q < pc.c.size(); ++q) acc.c[q] += lc * pc.c[q];
      }
      if (acc.c.empty()) acc.c.push_back(0.0);
      combo.polys.push_back(std::move(acc));
    }
    PiecewisePolyD dpsi = combo.deriv();
    out.speed.push_back(IntervalMaxTable::build(dpsi));
    out.psi.push_back(std::move(combo));
  }
  return out;
}

double LiftedFlux::wave_speed(int j, double a, double b) const {
  if (a > b) std::swap(a, b);
  return speed[static_cast<std::size_t>(j)].max_abs(a, b);
}

CellField lift_initial(const TrigPoly& p, const LiftSpec& lift,
                       std::span<const int> grid) {
  if (!p.is_real()) throw ConfigError("lift_initial: data must be real-valued");
  const int m = lift.m();
  if (static_cast<int>(grid.size()) != m)
    throw GridError("lift_initial: grid rank must equal the lift dimension");
  if (m > kMaxLift) throw GridError("lift_initial: lifts beyond 3-D refused");
  std::size_t cells = 1;
  for (int n : grid) {
    if (n < 1) throw GridError("lift_initial: grid sizes must be positive");
    cells *= static_cast<std::size_t>(n);
  }

  LiftedPoly lp = LiftedPoly::compile(p, lift);  // LatticeError if off-lattice

  // Per term and dimension: sinc magnitude and integer phases
  // k (2 j + 1) mod 2N folded into (-N, N], so mirrored cells get exactly
  // negated angles.
  const std::size_t nterms = lp.term_count();
  struct DimTab {
    double sinc = 1.0;
    std::vector<double> c, s;  // per cell index along this dimension
  };
  std::vector<DimTab> tabs(nterms * static_cast<std::size_t>(std::max(m, 1)));
  for (std::size_t t = 0; t < nterms; ++t) {
    for (int i = 0; i < m; ++i) {
      DimTab& tab = tabs[t * static_cast<std::size_t>(m) +
                         static_cast<std::size_t>(i)];
      long n = grid[static_cast<std::size_t>(i)];
      long k = lp.waves()[t * static_cast<std::size_t>(m) +
                          static_cast<std::size_t>(i)];
      if (k != 0) {
        double arg = std::numbers::pi * static_cast<double>(k) /
                     static_cast<double>(n);
        tab.sinc = std::sin(arg) / arg;
      }
      tab.c.resize(static_cast<std::size_t>(n));
      tab.s.resize(static_cast<std::size_t>(n));
      for (long j = 0; j < n; ++j) {
        long ph = ((k % (2 * n)) * (2 * j + 1)) % (2 * n);
        if (ph <= -n) ph += 2 * n;
        if (ph > n) ph -= 2 * n;
        double ang = std::numbers::pi * static_cast<double>(ph) /
                     static_cast<double>(n);
        tab.c[static_cast<std::size_t>(j)] = std::cos(ang);
        tab.s[static_cast<std::size_t>(j)] = std::sin(ang);
      }
    }
  }

  CellField f;
  f.shape.assign(grid.begin(), grid.end());
  f.v.assign(cells, 0.0);
  f.t = 0.0;

  parallel_blocks(cells, pick_block(cells), 0,
                  [&](std::size_t, std::size_t blo, std::size_t bhi) {
                    std::size_t digits[kMaxLift] = {0, 0, 0};
                    for (std::size_t idx = blo; idx < bhi; ++idx) {
                      decode(idx, grid, digits);
                      double val = 0.0;
                      for (std::size_t t = 0; t < nterms; ++t) {
                        const long* kv =
                            lp.waves().data() + t * static_cast<std::size_t>(m);
                        int lead = 0;
                        for (int i = 0; i < m; ++i)
                          if (kv[i] != 0) {
                            lead = kv[i] > 0 ? 1 : -1;
                            break;
                          }
                        if (lead < 0) continue;  // folded into its conjugate
                        if (lead == 0) {
                          val += lp.amps()[t].real();
                          continue;
                        }
                        double cr = 1.0, ci = 0.0, mag = 1.0;
                        for (int i = 0; i < m; ++i) {
                          const DimTab& tab =
                              tabs[t * static_cast<std::size_t>(m) +
                                   static_cast<std::size_t>(i)];
                          double cc = tab.c[digits[i]], ss = tab.s[digits[i]];
                          double nr = cr * cc - ci * ss;
                          ci = cr * ss + ci * cc;
                          cr = nr;
                          mag *= tab.sinc;
                        }
                        val += 2.0 * mag *
                               (lp.amps()[t].real() * cr -
                                lp.amps()[t].imag() * ci);
                      }
                      f.v[idx] = val;
                    }
                  });

  // Bounds: sup estimate of |p|, widened to contain every cell average.
  int pts = m <= 1 ? 65536 : (m == 2 ? 2048 : 256);
  QuadratureOpts q;
  q.points_per_dim = pts;
  double s = m == 0 ? std::abs(lp.mean()) : ess_sup(p, lift, q);
  for (double x : f.v) s = std::max(s, std::abs(x));
  f.lo = -s;
  f.hi = s;
  return f;
}

Stepper::Stepper(LiftedFlux flux, std::vector<int> shape, double cfl,
                 int threads)
    : flux_(std::move(flux)), shape_(std::move(shape)), cfl_(cfl),
      threads_(threads) {
  if (!(cfl_ > 0.0) || cfl_ > 0.5)
    throw ConfigError("stepper: CFL number must lie in (0, 1/2]");
  if (static_cast<int>(shape_.size()) != flux_.dirs())
    throw GridError("stepper: grid rank must match the lifted flux");
  if (flux_.dirs() > kMaxLift) throw GridError("stepper: lifts beyond 3-D refused");
  stride_ = strides_of(shape_);
  for (int n : shape_) cells_ *= static_cast<std::size_t>(n);
}

double Stepper::rusanov(int j, double u, double v) const {
  double a = flux_.wave_speed(j, u, v);
  return 0.5 * (flux_.psi_eval(j, u) + flux_.psi_eval(j, v)) -
         0.5 * a * (v - u);
}

double Stepper::suggest_dt(const CellField& f) const {
  auto [mn, mx] = f.minmax();
  double rate = 0.0;
  for (int j = 0; j < flux_.dirs(); ++j) {
    double h = 1.0 / static_cast<double>(shape_[static_cast<std::size_t>(j)]);
    rate += flux_.wave_speed(j, mn, mx) / h;
  }
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return cfl_ / rate;
}

CellField Stepper::step(const CellField& f, double dt) const {
  if (f.shape != shape_) throw GridError("step: field grid mismatch");
  if (!(dt > 0.0)) throw CflError("step: dt must be positive");
  const int m = flux_.dirs();
  if (m == 0) {
    CellField out = f;
    out.t = f.t + dt;
    return out;
  }
  // CFL admission against the current range.
  auto [mn, mx] = f.minmax();
  double rate = 0.0;
  for (int j = 0; j < m; ++j) {
    double h = 1.0 / static_cast<double>(shape_[static_cast<std::size_t>(j)]);
    rate += flux_.wave_speed(j, mn, mx) / h;
  }
  if (dt * rate > cfl_ * (1.0 + 1e-12)) {
    throw CflError("step: dt violates the CFL bound; required dt <= " +
                   std::to_string(rate > 0.0 ? cfl_ / rate : dt));
  }

  // Interface fluxes, one array per direction: F_j at the interface between a
  // cell and its +e_j neighbor.
  std::vector<std::vector<double>> iface(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    auto& arr = iface[static_cast<std::size_t>(j)];
    arr.resize(cells_);
    const std::size_t stride = stride_[static_cast<std::size_t>(j)];
    const std::size_t nj =
        static_cast<std::size_t>(shape_[static_cast<std::size_t>(j)]);
    parallel_blocks(cells_, pick_block(cells_), threads_,
                    [&](std::size_t, std::size_t blo, std::size_t bhi) {
                      std::size_t digits[kMaxLift] = {0, 0, 0};
                      for (std::size_t idx = blo; idx < bhi; ++idx) {
                        decode(idx, shape_, digits);
                        std::size_t dj = digits[static_cast<std::size_t>(j)];
                        std::size_t nb = dj + 1 == nj
                                             ? idx - (nj - 1) * stride
                                             : idx + stride;
                        arr[idx] = rusanov(j, f.v[idx], f.v[nb]);
                      }
                    });
  }

  CellField out;
  out.shape = f.shape;
  out.t = f.t + dt;
  out.lo = f.lo;
  out.hi = f.hi;
  out.v.resize(cells_);
  std::atomic<bool> violated{false};
  parallel_blocks(
      cells_, pick_block(cells_), threads_,
      [&](std::size_t, std::size_t blo, std::size_t bhi) {
        std::size_t digits[kMaxLift] = {0, 0, 0};
        for (std::size_t idx = blo; idx < bhi; ++idx) {
          decode(idx, shape_, digits);
          double acc = 0.0;
          for (int j = 0; j < m; ++j) {
            const std::size_t stride = stride_[static_cast<std::size_t>(j)];
            const std::size_t nj =
                static_cast<std::size_t>(shape_[static_cast<std::size_t>(j)]);
            std::size_t dj = digits[static_cast<std::size_t>(j)];
            std::size_t prev =
                dj == 0 ? idx + (nj - 1) * stride : idx - stride;
            double hinv =
                static_cast<double>(shape_[static_cast<std::size_t>(j)]);
            acc += dt * hinv *
                   (iface[static_cast<std::size_t>(j)][idx] -
                    iface[static_cast<std::size_t>(j)][prev]);
          }
          double nv = f.v[idx] - acc;
          out.v[idx] = nv;
          // Discrete maximum principle: a postcondition, never a clamp.
          if (nv < f.lo || nv > f.hi) violated.store(true);
        }
      });
  if (violated.load())
    throw RangeError("step: maximum principle violated (range expanded)");
  return out;
}

double entropy_residual(const CellField& before, const CellField& after,
                        const Stepper& stepper, double dt, double k) {
  if (before.shape != after.shape)
    throw GridError("entropy_residual: mismatched grids");
  const int m = before.m();
  const std::size_t cells = before.cells();
  if (m == 0) return 0.0;
  std::vector<std::size_t> stride = strides_of(before.shape);

  std::vector<double> res(cells);
  parallel_blocks(cells, pick_block(cells), 0,
                  [&](std::size_t, std::size_t blo, std::size_t bhi) {
                    for (std::size_t i = blo; i < bhi; ++i)
                      res[i] = std::abs(after.v[i] - k) -
                               std::abs(before.v[i] - k);
                  });

  std::vector<double> q(cells);
  for (int j = 0; j < m; ++j) {
    const std::size_t st = stride[static_cast<std::size_t>(j)];
    const std::size_t nj =
        static_cast<std::size_t>(before.shape[static_cast<std::size_t>(j)]);
    const double hinv = static_cast<double>(nj);
    parallel_blocks(cells, pick_block(cells), 0,
                    [&](std::size_t, std::size_t blo, std::size_t bhi) {
                      std::size_t digits[kMaxLift] = {0, 0, 0};
                      for (std::size_t idx = blo; idx < bhi; ++idx) {
                        decode(idx, before.shape, digits);
                        std::size_t dj = digits[static_cast<std::size_t>(j)];
                        std::size_t nb = dj + 1 == nj
                                             ? idx - (nj - 1) * st
                                             : idx + st;
                        double u = before.v[idx], v = before.v[nb];
                        q[idx] = stepper.rusanov(j, std::max(u, k),
                                                 std::max(v, k)) -
                                 stepper.rusanov(j, std::min(u, k),
                                                 std::min(v, k));
                      }
                    });
    parallel_blocks(cells, pick_block(cells), 0,
                    [&](std::size_t, std::size_t blo, std::size_t bhi) {
                      std::size_t digits[kMaxLift] = {0, 0, 0};
                      for (std::size_t idx = blo; idx < bhi; ++idx) {
                        decode(idx, before.shape, digits);
                        std::size_t dj = digits[static_cast<std::size_t>(j)];
                        std::size_t prev =
                            dj == 0 ? idx + (nj - 1) * st : idx - st;
                        res[idx] += dt * hinv * (q[idx] - q[prev]);
                      }
                    });
  }
  auto best = det_block_max(
      cells, pick_block(cells), 0, [&](std::size_t blo, std::size_t bhi) {
        double mx = -std::numeric_limits<double>::infinity();
        std::size_t arg = blo;
        for (std::size_t i = blo; i < bhi; ++i)
          if (res[i] > mx) {
            mx = res[i];
            arg = i;
          }
        return std::make_pair(mx, arg);
      });
  return best.first;
}

std::vector<double> entropy_residual_multi(const CellField& before,
                                           const CellField& after,
                                           const Stepper& stepper, double dt,
                                           std::span<const double> levels) {
  if (before.shape != after.shape)
    throw GridError("entropy_residual: mismatched grids");
  const int m = before.m();
  const std::size_t nl = levels.size();
  if (nl == 0) return {};
  if (m == 0) return std::vector<double>(nl, 0.0);
  const std::size_t cells = before.cells();
  std::vector<std::size_t> stride = strides_of(before.shape);

  // Level-major per cell: res[idx * nl + l], so every pass walks contiguously.
  std::vector<double> res(cells * nl);
  parallel_blocks(cells, pick_block(cells), 0,
                  [&](std::size_t, std::size_t blo, std::size_t bhi) {
                    for (std::size_t i = blo; i < bhi; ++i) {
                      const double a = after.v[i], b = before.v[i];
                      double* r = &res[i * nl];
                      for (std::size_t l = 0; l < nl; ++l)
                        r[l] = std::abs(a - levels[l]) -
                               std::abs(b - levels[l]);
                    }
                  });

  std::vector<double> q(cells * nl);
  std::vector<double> fkk(nl);
  for (int j = 0; j < m; ++j) {
    const std::size_t st = stride[static_cast<std::size_t>(j)];
    const std::size_t nj =
        static_cast<std::size_t>(before.shape[static_cast<std::size_t>(j)]);
    const double hinv = static_cast<double>(nj);
    // F_j(k,k): what the clamped flux degenerates to when k dominates or is
    // dominated by both interface states.
    for (std::size_t l = 0; l < nl; ++l)
      fkk[l] = stepper.rusanov(j, levels[l], levels[l]);
    parallel_blocks(
        cells, pick_block(cells), 0,
        [&](std::size_t, std::size_t blo, std::size_t bhi) {
          std::size_t digits[kMaxLift] = {0, 0, 0};
          for (std::size_t idx = blo; idx < bhi; ++idx) {
            decode(idx, before.shape, digits);
            std::size_t dj = digits[static_cast<std::size_t>(j)];
            std::size_t nb = dj + 1 == nj ? idx - (nj - 1) * st : idx + st;
            const double u = before.v[idx], v = before.v[nb];
            const double lo = std::min(u, v), hi = std::max(u, v);
            const double fuv = stepper.rusanov(j, u, v);
            double* qi = &q[idx * nl];
            for (std::size_t l = 0; l < nl; ++l) {
              const double k = levels[l];
              if (k <= lo)
                qi[l] = fuv - fkk[l];
              else if (k >= hi)
                qi[l] = fkk[l] - fuv;
              else
                qi[l] = stepper.rusanov(j, std::max(u, k), std::max(v, k)) -
                        stepper.rusanov(j, std::min(u, k), std::min(v, k));
            }
          }
        });
    parallel_blocks(cells, pick_block(cells), 0,
                    [&](std::size_t, std::size_t blo, std::size_t bhi) {
                      std::size_t digits[kMaxLift] = {0, 0, 0};
                      for (std::size_t idx = blo; idx < bhi; ++idx) {
                        decode(idx, before.shape, digits);
                        std::size_t dj = digits[static_cast<std::size_t>(j)];
                        std::size_t prev =
                            dj == 0 ? idx + (nj - 1) * st : idx - st;
                        const double* qi = &q[idx * nl];
                        const double* qp = &q[prev * nl];
                        double* r = &res[idx * nl];
                        for (std::size_t l = 0; l < nl; ++l)
                          r[l] += dt * hinv * (qi[l] - qp[l]);
                      }
                    });
  }

  const std::size_t block = pick_block(cells);
  const std::size_t nblocks = (cells + block - 1) / block;
  std::vector<double> partial(nblocks * nl,
                              -std::numeric_limits<double>::infinity());
  parallel_blocks(cells, block, 0,
                  [&](std::size_t b, std::size_t blo, std::size_t bhi) {
                    double* pm = &partial[b * nl];
                    for (std::size_t i = blo; i < bhi; ++i) {
                      const double* r = &res[i * nl];
                      for (std::size_t l = 0; l < nl; ++l)
                        pm[l] = std::max(pm[l], r[l]);
                    }
                  });
  std::vector<double> out(nl, -std::numeric_limits<double>::infinity());
  for (std::size_t b = 0; b < nblocks; ++b)
    for (std::size_t l = 0; l < nl; ++l)
      out[l] = std::max(out[l], partial[b * nl + l]);
  return out;
}

RunRecord solve(const TrigPoly& p, const LiftSpec& lift,
                const PiecewiseFlux& phi, const RunConfig& cfg) {
  if (cfg.T < 0.0) throw ConfigError("solve: T must be >= 0");
  if (cfg.scheme != "rusanov")
    throw ConfigError("solve: unknown scheme '" + cfg.scheme + "'");
  const int m = lift.m();
  std::vector<int> grid = cfg.grid;
  if (m == 0) grid.clear();
  if (grid.size() == 1 && m > 1) grid.assign(static_cast<std::size_t>(m), grid[0]);
  if (static_cast<int>(grid.size()) != m)
    throw GridError("solve: grid rank must equal the lift dimension");

  CellField f = lift_initial(p, lift, grid);
  if (f.lo < to_double(phi.lo()) || f.hi > to_double(phi.hi()))
    throw DomainError("solve: data range leaves the flux domain");

  LiftedFlux lf = LiftedFlux::build(phi, lift);
  Stepper stepper(std::move(lf), grid, cfg.cfl, cfg.threads);

  RunRecord rec;
  rec.mean0 = f.mean(cfg.threads);
  const double c0 = rec.mean0;
  auto descriptor = [&](const CellField& g) {
    if (g.v.empty()) return 0.0;
    double s = det_block_sum(g.v.size(), pick_block(g.v.size()), cfg.threads,
                             [&](std::size_t lo_i, std::size_t hi_i) {
                               KahanSum part;
                               for (std::size_t i = lo_i; i < hi_i; ++i)
                                 part.add(std::abs(g.v[i] - c0));
                               return part.value();
                             });
    return s / static_cast<double>(g.v.size());
  };

  // Entropy levels span the initial data range; the grid stays fixed for the
  // whole run so traces are comparable across steps.
  std::vector<double> levels;
  if (cfg.entropy_check) {
    int nl = std::max(1, cfg.entropy_levels);
    for (int i = 0; i < nl; ++i)
      levels.push_back(f.lo + (static_cast<double>(i) + 0.5) * (f.hi - f.lo) /
                                  static_cast<double>(nl));
  }

  StepStats init;
  init.t_after = 0.0;
  init.mass = rec.mean0;
  init.descriptor = descriptor(f);
  rec.trace.push_back(init);

  // Event times: requested snapshots inside (0, T), then T itself.
  std::vector<double> events;
  for (double s : cfg.snapshot_times)
    if (s > 0.0 && s < cfg.T) events.push_back(s);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end(),
                           [](double a, double b) {
                             return std::abs(a - b) < 1e-12;
                           }),
               events.end());
  events.push_back(cfg.T);

  rec.snapshots.push_back(f);

  if (cfg.T == 0.0) return rec;

  const double t_eps = 1e-12 * std::max(1.0, cfg.T);
  for (double ev : events) {
    while (f.t < ev - t_eps) {
      double dt = stepper.suggest_dt(f);
      if (!(dt > 0.0)) throw CflError("solve: nonpositive suggested dt");
      bool lands = false;
      if (f.t + dt >= ev - t_eps) {
        dt = ev - f.t;
        lands = true;
      }
      if (dt < t_eps)
        throw CflError("solve: time step collapsed below resolution");
      CellField next = stepper.step(f, dt);
      if (lands) next.t = ev;
      StepStats st;
      st.t_after = next.t;
      st.mass = next.mean(cfg.threads);
      st.descriptor = descriptor(next);
      if (cfg.entropy_check) {
        double worst = -std::numeric_limits<double>::infinity();
        for (double r : entropy_residual_multi(f, next, stepper, dt, levels))
          worst = std::max(worst, r);
        st.entropy_max = worst;
      }
      f = std::move(next);
      rec.trace.push_back(st);
      ++rec.steps;
      if (cfg.observer) cfg.observer(f, st);
    }
    f.t = ev;
    rec.snapshots.push_back(f);
  }
  return rec;
}

double line_value(const CellField& f, const LiftSpec& lift,
                  std::span<const double> x) {
  const int m = f.m();
  if (m == 0) return f.v.empty() ? 0.0 : f.v[0];
  std::vector<double> theta = lift.theta_of(x);
  std::vector<std::size_t> stride = strides_of(f.shape);
  // Multilinear interpolation between neighboring cell centers, wrapping.
  double value = 0.0;
  const int corners = 1 << m;
  std::vector<long> j0(static_cast<std::size_t>(m));
  std::vector<double> w(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    long n = f.shape[static_cast<std::size_t>(i)];
    double s = theta[static_cast<std::size_t>(i)] * static_cast<double>(n) - 0.5;
    double fl = std::floor(s);
    j0[static_cast<std::size_t>(i)] = static_cast<long>(fl);
    w[static_cast<std::size_t>(i)] = s - fl;
  }
  for (int corner = 0; corner < corners; ++corner) {
    double wt = 1.0;
    std::size_t idx = 0;
    for (int i = 0; i < m; ++i) {
      long n = f.shape[static_cast<std::size_t>(i)];
      bool hi_side = (corner >> i) & 1;
      long jj = j0[static_cast<std::size_t>(i)] + (hi_side ? 1 : 0);
      jj %= n;
      if (jj < 0) jj += n;
      wt *= hi_side ? w[static_cast<std::size_t>(i)]
                    : 1.0 - w[static_cast<std::size_t>(i)];
      idx += static_cast<std::size_t>(jj) * stride[static_cast<std::size_t>(i)];
    }
    value += wt * f.v[idx];
  }
  return value;
}

std::vector<double> restrict_to_line(const CellField& f, const LiftSpec& lift,
                                     std::span<const double> xs) {
  if (lift.ambient_dims() != 1)
    throw ConfigError("restrict_to_line: scalar samples need a 1-D ambient");
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    double pt[1] = {x};
    out.push_back(line_value(f, lift, std::span<const double>(pt, 1)));
  }
  return out;
}

}  // namespace apcl
