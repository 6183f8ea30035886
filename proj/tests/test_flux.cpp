#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "apcl/errors.hpp"
#include "apcl/flux.hpp"
#include "doctest.h"

using namespace apcl;

namespace {

Frequency unit_freq(long k) {
  return Frequency(RealBase::unit(), 1, {rat(k, 1)});
}

PiecewiseFlux burgers(long lo = -2, long hi = 2) {
  return PiecewiseFlux::single(1, rat(lo, 1), rat(hi, 1),
                               {PolyQ{{rat(0, 1), rat(0, 1), rat(1, 2)}}});
}

// (u^2/2, u) on [-2, 2]: degenerate along the second coordinate direction.
PiecewiseFlux shear_flux() {
  return PiecewiseFlux::single(
      2, rat(-2, 1), rat(2, 1),
      {PolyQ{{rat(0, 1), rat(0, 1), rat(1, 2)}}, PolyQ{{rat(0, 1), rat(1, 1)}}});
}

FreqGroup unit_lattice(int dims) {
  std::vector<Frequency> gens;
  for (int i = 0; i < dims; ++i) {
    std::vector<Rational> coords(static_cast<std::size_t>(dims), rat(0, 1));
    coords[static_cast<std::size_t>(i)] = rat(1, 1);
    gens.emplace_back(RealBase::unit(), dims, std::move(coords));
  }
  return group_generated(gens);
}

}  // namespace

TEST_CASE("piecewise flux construction and evaluation") {
  PiecewiseFlux f = burgers();
  CHECK(f.dims() == 1);
  CHECK(f.piece_count() == 1);
  CHECK(f.eval_exact(0, rat(1, 2)) == rat(1, 8));
  CHECK(f.eval_exact(0, rat(-2, 1)) == rat(2, 1));
  CHECK(f.eval_exact(0, rat(2, 1)) == rat(2, 1));
  CHECK_THROWS_AS(f.eval_exact(0, rat(5, 2)), DomainError);
  CHECK_THROWS_AS(f.eval_exact(0, rat(-21, 10)), DomainError);

  // Two pieces joined continuously at 0: |u| as a flux component.
  PiecewiseFlux am = PiecewiseFlux::make(
      1, {rat(-1, 1), rat(0, 1), rat(1, 1)},
      {{PolyQ{{rat(0, 1), rat(-1, 1)}}}, {PolyQ{{rat(0, 1), rat(1, 1)}}}});
  CHECK(am.eval_exact(0, rat(-1, 2)) == rat(1, 2));
  CHECK(am.eval_exact(0, rat(1, 2)) == rat(1, 2));
  CHECK(am.eval_exact(0, rat(0, 1)) == rat(0, 1));

  PiecewisePolyD d = am.component_d(0);
  CHECK(d.eval(-0.25) == doctest::Approx(0.25));
  CHECK(d.eval(0.75) == doctest::Approx(0.75));

  // Validation: discontinuity, bad breakpoints, dimension mismatches.
  CHECK_THROWS_AS(PiecewiseFlux::make(
                      1, {rat(-1, 1), rat(0, 1), rat(1, 1)},
                      {{PolyQ{{rat(1, 1)}}}, {PolyQ{{rat(0, 1)}}}}),
                  ConfigError);
  CHECK_THROWS_AS(PiecewiseFlux::make(1, {rat(1, 1), rat(0, 1)},
                                      {{PolyQ{{rat(0, 1)}}}}),
                  ConfigError);
  CHECK_THROWS_AS(PiecewiseFlux::make(1, {rat(0, 1), rat(0, 1)},
                                      {{PolyQ{{rat(0, 1)}}}}),
                  ConfigError);
  CHECK_THROWS_AS(PiecewiseFlux::make(1, {rat(0, 1)}, {}), ConfigError);
  CHECK_THROWS_AS(PiecewiseFlux::make(0, {rat(0, 1), rat(1, 1)},
                                      {{PolyQ{{rat(0, 1)}}}}),
                  ConfigError);
  CHECK_THROWS_AS(PiecewiseFlux::make(2, {rat(0, 1), rat(1, 1)},
                                      {{PolyQ{{rat(0, 1)}}}}),
                  ConfigError);
  CHECK_THROWS_AS(PiecewiseFlux::make(1, {rat(0, 1), rat(1, 1), rat(2, 1)},
                                      {{PolyQ{{rat(0, 1)}}}}),
                  ConfigError);
}

TEST_CASE("lipschitz constants from exact derivative extrema") {
  PiecewiseFlux f = burgers();
  auto l = lipschitz_constant(f, -2.0, 2.0);
  REQUIRE(l.size() == 1);
  CHECK(l[0] == doctest::Approx(2.0));
  CHECK(lipschitz_constant(f, -1.0, 0.5)[0] == doctest::Approx(1.0));

  PiecewiseFlux cubic = PiecewiseFlux::single(
      1, rat(-2, 1), rat(2, 1),
      {PolyQ{{rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)}}});
  CHECK(lipschitz_constant(cubic, -2.0, 2.0)[0] == doctest::Approx(12.0));

  auto l2 = lipschitz_constant(shear_flux(), -2.0, 2.0);
  REQUIRE(l2.size() == 2);
  CHECK(l2[0] == doctest::Approx(2.0));
  CHECK(l2[1] == doctest::Approx(1.0));

  // Interior extremum of the derivative: phi' = 1 - 3u^2 peaks at u = 0.
  PiecewiseFlux hump = PiecewiseFlux::single(
      1, rat(-1, 1), rat(1, 1),
      {PolyQ{{rat(0, 1), rat(1, 1), rat(0, 1), rat(-1, 1)}}});
  CHECK(lipschitz_constant(hump, -0.1, 0.1)[0] == doctest::Approx(1.0));
  CHECK(lipschitz_constant(hump, -1.0, 1.0)[0] == doctest::Approx(2.0));

  CHECK_THROWS_AS(lipschitz_constant(f, -3.0, 0.0), DomainError);
}

TEST_CASE("non-degeneracy holds for genuinely nonlinear fluxes") {
  NDReport r = nd_check(burgers(), unit_lattice(1), rat(-2, 1), rat(2, 1));
  CHECK(r.holds);
  CHECK_FALSE(r.witness.has_value());

  // Any subinterval still sees the quadratic term.
  CHECK(nd_check(burgers(), unit_lattice(1), rat(-1, 10), rat(1, 10)).holds);

  // Rank-zero group: only xi = 0, so the condition is vacuous.
  FreqGroup zero =
      group_generated(std::vector<Frequency>{Frequency::zero(RealBase::unit(), 1)});
  CHECK(nd_check(burgers(), zero, rat(-2, 1), rat(2, 1)).holds);

  // (u^2/2, u) is non-degenerate once the group only spans the first axis.
  FreqGroup axis1 = group_generated(std::vector<Frequency>{
      Frequency(RealBase::unit(), 2, {rat(1, 1), rat(0, 1)})});
  CHECK(nd_check(shear_flux(), axis1, rat(-2, 1), rat(2, 1)).holds);

  CHECK_THROWS_AS(nd_check(burgers(), unit_lattice(2), rat(-1, 1), rat(1, 1)),
                  ConfigError);
  CHECK_THROWS_AS(nd_check(burgers(), unit_lattice(1), rat(1, 1), rat(1, 1)),
                  ConfigError);
  CHECK_THROWS_AS(nd_check(burgers(), unit_lattice(1), rat(-3, 1), rat(0, 1)),
                  DomainError);
}

TEST_CASE("degeneracy witnesses") {
  // Linear flux: xi = 1 is affine everywhere.
  PiecewiseFlux lin = PiecewiseFlux::single(1, rat(-1, 1), rat(1, 1),
                                            {PolyQ{{rat(3, 1), rat(2, 1)}}});
  NDReport r = nd_check(lin, unit_lattice(1), rat(-1, 1), rat(1, 1));
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  const AffineWitness& w = *r.witness;
  CHECK(w.xi == unit_freq(1));
  CHECK(w.gen_coeffs == std::vector<BigInt>{BigInt(1)});
  CHECK(w.piece == 0);
  CHECK(w.piece_lo == rat(-1, 1));
  CHECK(w.piece_hi == rat(1, 1));
  CHECK(w.slope() == doctest::Approx(2.0));
  CHECK(w.intercept() == doctest::Approx(3.0));

  // The canonical 2-D degenerate pair: witness direction (0, 1).
  NDReport r2 = nd_check(shear_flux(), unit_lattice(2), rat(-2, 1), rat(2, 1));
  REQUIRE_FALSE(r2.holds);
  const AffineWitness& w2 = *r2.witness;
  CHECK(w2.xi == Frequency(RealBase::unit(), 2, {rat(0, 1), rat(1, 1)}));
  CHECK(w2.slope() == doctest::Approx(1.0));
  CHECK(w2.intercept() == doctest::Approx(0.0));
  CHECK(w2.piece == 0);

  // Tie-break on equal infinity norm is lexicographic: (u^2, u, 2u) leaves a
  // two-dimensional kernel and the witness picks (0, 0, 1).
  PiecewiseFlux three = PiecewiseFlux::single(
      3, rat(-1, 1), rat(1, 1),
      {PolyQ{{rat(0, 1), rat(0, 1), rat(1, 1)}}, PolyQ{{rat(0, 1), rat(1, 1)}},
       PolyQ{{rat(0, 1), rat(2, 1)}}});
  NDReport r3 = nd_check(three, unit_lattice(3), rat(-1, 1), rat(1, 1));
  REQUIRE_FALSE(r3.holds);
  CHECK(r3.witness->gen_coeffs ==
        std::vector<BigInt>{BigInt(0), BigInt(0), BigInt(1)});
  CHECK(r3.witness->slope() == doctest::Approx(2.0));

  // Piece-local degeneracy: quadratic left of 0, affine right of 0.
  PiecewiseFlux halfdeg = PiecewiseFlux::make(
      1, {rat(-1, 1), rat(0, 1), rat(1, 1)},
      {{PolyQ{{rat(0, 1), rat(0, 1), rat(1, 1)}}}, {PolyQ{{rat(0, 1)}}}});
  NDReport rh = nd_check(halfdeg, unit_lattice(1), rat(-1, 1), rat(1, 1));
  REQUIRE_FALSE(rh.holds);
  CHECK(rh.witness->piece == 1);
  CHECK(rh.witness->piece_lo == rat(0, 1));
  CHECK(rh.witness->piece_hi == rat(1, 1));

  // The affine piece leaves the window: restricted to [-1, -1/4] ND holds,
  // while a window reaching into the affine piece is clipped to it.
  CHECK(nd_check(halfdeg, unit_lattice(1), rat(-1, 1), rat(-1, 4)).holds);
  NDReport rc = nd_check(halfdeg, unit_lattice(1), rat(-1, 4), rat(1, 2));
  REQUIRE_FALSE(rc.holds);
  CHECK(rc.witness->piece_lo == rat(0, 1));
  CHECK(rc.witness->piece_hi == rat(1, 2));
}

TEST_CASE("traveling wave counterexamples") {
  PiecewiseFlux phi = shear_flux();
  NDReport r = nd_check(phi, unit_lattice(2), rat(-2, 1), rat(2, 1));
  REQUIRE_FALSE(r.holds);

  TravelingWave wave = make_counterexample(phi, r);
  CHECK(wave.synthesized_profile);
  CHECK(wave.speed == doctest::Approx(1.0));
  CHECK(wave.mean == doctest::Approx(0.0));
  // Synthesized profile: mid + 0.45 * width * sin, strictly inside [-2, 2].
  CHECK(wave.profile_at(0.25) == doctest::Approx(1.8));
  CHECK(wave.profile_at(0.75) == doctest::Approx(-1.8));

  // initial = W(xi . x) rides the second coordinate only.
  double x[2] = {0.3, 0.1};
  double y[2] = {0.9, 0.1};
  CHECK(wave.initial.eval_real(x) == doctest::Approx(wave.initial.eval_real(y)));
  CHECK(wave.value(0.0, x) == doctest::Approx(wave.profile_at(0.1)));
  CHECK(wave.value(0.25, x) == doctest::Approx(wave.profile_at(-0.15)));

  // The descriptor is constant in time: exact at integer shifts, quadrature
  // tolerance at generic ones.
  double d0 = wave.descriptor(0.0);
  CHECK(d0 == doctest::Approx(1.8 * 2.0 / std::numbers::pi).epsilon(1e-6));
  for (double t : {1.0, 5.0, 10.0})
    CHECK(std::abs(wave.descriptor(t) - d0) <= 1e-10);
  CHECK(std::abs(wave.descriptor(0.37) - d0) <= 1e-9);

  // Smooth entropy residual of a genuine wave vanishes; a tampered speed is
  // detected.
  CHECK(traveling_residual_max(wave, phi, 200, 16) <= 1e-12);
  TravelingWave off = wave;
  off.speed += 0.1;
  CHECK(traveling_residual_max(off, phi, 200, 16) > 1e-2);

  // Supplied profile within the affine interval.
  TrigPoly prof(RealBase::unit(), 1);
  prof.add_term(Frequency::zero(RealBase::unit(), 1), {0.3, 0.0});
  prof.add_sin(Frequency::axis(RealBase::unit(), 1, 0, 0, rat(1, 1)), 0.5);
  TravelingWave wp = make_counterexample(phi, r, &prof);
  CHECK_FALSE(wp.synthesized_profile);
  CHECK(wp.mean == doctest::Approx(0.3));
  CHECK(wp.descriptor(0.0) ==
        doctest::Approx(0.5 * 2.0 / std::numbers::pi).epsilon(1e-6));

  // Profile range leaving the interval is rejected.
  TrigPoly wide(RealBase::unit(), 1);
  wide.add_sin(Frequency::axis(RealBase::unit(), 1, 0, 0, rat(1, 1)), 2.5);
  CHECK_THROWS_AS(make_counterexample(phi, r, &wide), RangeError);
  TrigPoly shifted(RealBase::unit(), 1);
  shifted.add_term(Frequency::zero(RealBase::unit(), 1), {1.9, 0.0});
  shifted.add_sin(Frequency::axis(RealBase::unit(), 1, 0, 0, rat(1, 1)), 0.2);
  CHECK_THROWS_AS(make_counterexample(phi, r, &shifted), RangeError);

  // Malformed profiles and reports.
  TrigPoly planar(RealBase::unit(), 2);
  planar.add_sin(Frequency(RealBase::unit(), 2, {rat(1, 1), rat(0, 1)}), 0.5);
  CHECK_THROWS_AS(make_counterexample(phi, r, &planar), ConfigError);
  NDReport ok;
  CHECK_THROWS_AS(make_counterexample(phi, ok), ConfigError);
}

TEST_CASE("linear flux wave translates at the characteristic speed") {
  PiecewiseFlux lin = PiecewiseFlux::single(1, rat(-1, 1), rat(1, 1),
                                            {PolyQ{{rat(0, 1), rat(2, 1)}}});
  NDReport r = nd_check(lin, unit_lattice(1), rat(-1, 1), rat(1, 1));
  REQUIRE_FALSE(r.holds);
  TravelingWave wave = make_counterexample(lin, r);
  CHECK(wave.speed == doctest::Approx(2.0));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  for (int i = 0; i < 25; ++i) {
    double x[1] = {pos(rng)};
    double t = 0.25 * i;
    double moved[1] = {x[0] - 2.0 * t};
    CHECK(wave.value(t, x) == doctest::Approx(wave.value(0.0, moved)));
  }
  CHECK(traveling_residual_max(wave, lin, 100, 8) <= 1e-12);
}
