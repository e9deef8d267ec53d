#include <doctest.h>

#include <cmath>
#include <random>

#include "dynamics.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "oracles.hpp"
#include "units.hpp"

using namespace cavicool;

namespace {

const Model& default_model() {
  static Model m = Model::create(CAVICOOL_DATA_DIR "/run.cfg", {});
  return m;
}

// Laser frequency that parks one line on its nearest comb tooth.
double park_line(const System& sys, const RamanLine& ln) {
  double s = sys.cavity.spacing();
  double x = sys.nominal_laser + ln.shift - sys.cavity.anchor;
  double tooth = sys.cavity.anchor + std::round(x / s) * s;
  return tooth - ln.shift;
}

double sum(const std::vector<double>& v) {
  double a = 0.0;
  for (double x : v) a += x;
  return a;
}

}  // namespace

TEST_CASE("a zero rate matrix leaves populations untouched") {
  RateMatrix W(3);
  std::vector<double> P = {0.2, 0.3, 0.5};
  auto Pn = integrate_populations(W, P, 1.0, 1e-3);
  for (int i = 0; i < 3; ++i) CHECK(Pn[i] == P[i]);
}

TEST_CASE("two-level decay reproduces the analytic exponential") {
  const double r = 7.5;
  RateMatrix W(2);
  W.at(0, 1) = r;
  W.at(1, 1) = -r;
  for (double t : {0.01, 0.1, 0.5, 2.0}) {
    auto P = integrate_populations(W, {0.0, 1.0}, t, 1e-3);
    CHECK(std::abs(P[1] - std::exp(-r * t)) <= 1e-9);
    CHECK(std::abs(P[0] - (1.0 - std::exp(-r * t))) <= 1e-9);
  }
}

TEST_CASE("rate matrix is a proper generator") {
  const Model& m = default_model();
  const System& sys = m.system();
  // Park the 4 -> 2 line; any setting works for this property.
  const RamanLine* target = nullptr;
  for (const auto& ln : sys.lines)
    if (ln.kind == LineKind::anti_stokes && sys.levels[ln.initial].J == 4)
      target = &ln;
  REQUIRE(target != nullptr);
  RateMatrix W =
      build_rate_matrix(sys, park_line(sys, *target), 0.0, 3.85e-6);
  const int n = W.n;
  REQUIRE(n == 9);
  for (int c = 0; c < n; ++c) {
    double col = 0.0;
    for (int r = 0; r < n; ++r) {
      if (r != c) CHECK(W.at(r, c) >= 0.0);
      col += W.at(r, c);
    }
    CHECK(std::abs(col) <= 1e-9 * std::abs(W.at(c, c)) + 1e-12);
  }
  // Parity ladders never mix.
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (sys.levels[r].ladder != sys.levels[c].ladder)
        CHECK(W.at(r, c) == 0.0);
}

TEST_CASE("integrator matches the matrix-exponential oracle per segment") {
  const Model& m = default_model();
  const System& sys = m.system();
  Schedule sched = m.auto_schedule();
  REQUIRE(!sched.segments.empty());
  std::vector<double> P = m.initial_populations();
  for (const auto& seg : sched.segments) {
    RateMatrix W = build_rate_matrix(sys, seg.laser, seg.finetune, 3.85e-6);
    auto got = integrate_populations(W, P, seg.duration, 1e-3);
    auto want = oracles::mat_exp_apply(W.a, W.n, P, seg.duration);
    for (int i = 0; i < W.n; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-6);
    P = std::move(got);
  }
}

TEST_CASE("long integration reaches the oracle's stationary vector") {
  // Ergodic random generator: every off-diagonal rate in [0.5, 2].
  const int n = 6;
  std::mt19937 rng(987654u);
  std::uniform_real_distribution<double> uni(0.5, 2.0);
  RateMatrix W(n);
  for (int c = 0; c < n; ++c) {
    double col = 0.0;
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      W.at(r, c) = uni(rng);
      col += W.at(r, c);
    }
    W.at(c, c) = -col;
  }
  auto pi = oracles::stationary_vector(W.a, n);
  std::vector<double> P(n, 0.0);
  P[0] = 1.0;
  auto Pend = integrate_populations(W, P, 40.0, 1e-3);
  for (int i = 0; i < n; ++i) CHECK(std::abs(Pend[i] - pi[i]) <= 1e-9);
  CHECK(sum(Pend) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pure resonator pumping walks population down one ladder") {
  const Model& m = default_model();
  System sys = m.system();     // copy; silence the free-space channel
  sys.calib.C_spont = 0.0;
  const RamanLine* ln20 = nullptr;
  for (const auto& ln : sys.lines)
    if (ln.kind == LineKind::anti_stokes && sys.levels[ln.initial].J == 2)
      ln20 = &ln;
  REQUIRE(ln20 != nullptr);
  RateMatrix W = build_rate_matrix(sys, park_line(sys, *ln20), 0.0, 3.85e-6);
  std::vector<double> P = m.initial_populations();
  double mj_prev = mean_J(P, sys.levels);
  double odd0 = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i)
    if (sys.levels[i].ladder == 1) odd0 += P[i];
  for (int k = 0; k < 10; ++k) {
    P = integrate_populations(W, P, 0.05, 1e-3);
    double mj = mean_J(P, sys.levels);
    CHECK(mj < mj_prev);  // strictly cooling
    mj_prev = mj;
  }
  // Without spontaneous scattering the odd ladder is exactly frozen.
  double odd1 = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i)
    if (sys.levels[i].ladder == 1) odd1 += P[i];
  CHECK(odd1 == doctest::Approx(odd0).epsilon(1e-12));
}

TEST_CASE("mean J: point distributions and the thermal ensemble") {
  const Model& m = default_model();
  const System& sys = m.system();
  std::vector<double> P(sys.levels.size(), 0.0);
  P[sys.levels.index_of(0, 0)] = 1.0;
  CHECK(mean_J(P, sys.levels) == 0.0);
  P.assign(sys.levels.size(), 0.0);
  P[sys.levels.index_of(0, 5)] = 1.0;
  CHECK(mean_J(P, sys.levels) == 5.0);
  CHECK(mean_J(m.initial_populations(), sys.levels) ==
        doctest::Approx(2.4503).epsilon(1e-3));
}

TEST_CASE("default run conserves probability and both parity ladders") {
  const Model& m = default_model();
  auto out = m.run(m.resolve_schedule());
  CHECK(out.invariants_ok);
  const TimeSeries& ts = out.series;
  REQUIRE(ts.times.size() == 181);  // 0 .. 1.8 s at 0.01 s cadence
  const System& sys = m.system();
  double even0 = 0.0, odd0 = 0.0;
  for (std::size_t i = 0; i < ts.populations[0].size(); ++i)
    (sys.levels[i].ladder == 0 ? even0 : odd0) += ts.populations[0][i];
  for (std::size_t k = 0; k < ts.times.size(); ++k) {
    const auto& P = ts.populations[k];
    double tot = 0.0, even = 0.0;
    double mn = 1.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
      tot += P[i];
      mn = std::min(mn, P[i]);
      if (sys.levels[i].ladder == 0) even += P[i];
    }
    CHECK(std::abs(tot - 1.0) <= 1e-9);
    CHECK(std::abs(even - even0) <= 1e-9);
    CHECK(mn >= -1e-12);
  }
  // Endpoint pins for the shipped configuration.
  const auto& fin = ts.final_state;
  double p01 = 0.0;
  for (std::size_t i = 0; i < fin.populations.size(); ++i)
    if (sys.levels[i].J <= 1) p01 += fin.populations[i];
  CHECK(p01 == doctest::Approx(0.9805).epsilon(2e-3));
  CHECK(ts.meanJ.back() == doctest::Approx(0.5828).epsilon(2e-3));
  CHECK(fin.T_tr == doctest::Approx(3.85e-6).epsilon(0.02));
}

TEST_CASE("an empty schedule reports the initial state only") {
  const Model& m = default_model();
  Schedule empty;
  SimState init;
  init.populations = m.initial_populations();
  init.T_tr = 3.85e-6;
  TimeSeries ts = simulate(m.system(), empty, init, 0.01);
  REQUIRE(ts.times.size() == 1);
  CHECK(ts.times[0] == 0.0);
  CHECK(ts.meanJ[0] == doctest::Approx(2.4503).epsilon(1e-3));
  CHECK(ts.final_state.T_tr == init.T_tr);
}

TEST_CASE("translational cooling: endpoint does not depend on the start") {
  const Model& m = default_model();
  const System& sys = m.system();
  auto a = translational_trajectory(sys, 1.0, -sys.cavity.kappa, 8.0);
  auto b = translational_trajectory(sys, 0.1, -sys.cavity.kappa, 8.0);
  CHECK(a.reached_1e);
  CHECK(b.reached_1e);
  // The endpoint rides a bounded integrator cycle around the equilibrium;
  // compare tail time-averages instead of single samples.
  auto tail_mean = [](const TransResult& r) {
    double t0 = r.times.back() - 2.0;
    double acc = 0.0, span = 0.0;
    for (std::size_t i = 1; i < r.times.size(); ++i) {
      if (r.times[i] <= t0) continue;
      double dt = r.times[i] - r.times[i - 1];
      acc += 0.5 * (r.temps[i] + r.temps[i - 1]) * dt;
      span += dt;
    }
    return acc / span;
  };
  double ma = tail_mean(a), mb = tail_mean(b);
  CHECK(std::abs(ma - mb) / ma <= 0.05);
  // Both land a few microkelvin above absolute zero, near the resonator
  // linewidth scale hbar kappa / kB = 3.6 uK.
  double floor_K = units::hbar * sys.cavity.kappa / units::k_boltzmann;
  CHECK(ma >= 0.5 * floor_K);
  CHECK(ma <= 2.5 * floor_K);
  CHECK(a.t_1e == doctest::Approx(1.05).epsilon(0.05));
}

TEST_CASE("without recoil the gas cools monotonically below the linewidth") {
  const Model& m = default_model();
  System sys = m.system();
  sys.trans.recoil_per_event = 0.0;
  auto r = translational_trajectory(sys, 1.0, -sys.cavity.kappa, 8.0);
  for (std::size_t i = 1; i < r.temps.size(); ++i)
    CHECK(r.temps[i] <= r.temps[i - 1] * (1.0 + 1e-12));
  double floor_K = units::hbar * sys.cavity.kappa / units::k_boltzmann;
  CHECK(r.T_final <= floor_K);
}

TEST_CASE("blue-side elastic parking is rejected as heating") {
  const Model& m = default_model();
  const System& sys = m.system();
  CHECK_THROWS_AS(
      translational_trajectory(sys, 1.0, +sys.cavity.kappa, 1.0),
      ConfigError);
  CHECK_THROWS_AS(translational_trajectory(sys, 0.0, -sys.cavity.kappa, 1.0),
                  ConfigError);
  CHECK_THROWS_AS(translational_trajectory(sys, 1.0, -sys.cavity.kappa, 0.0),
                  ConfigError);
}

TEST_CASE("energy derivative cools above equilibrium and heats below") {
  const Model& m = default_model();
  const System& sys = m.system();
  double kB = units::k_boltzmann;
  CHECK(translational_energy_rate(sys, -sys.cavity.kappa, 0.5 * kB * 1.0) <
        0.0);
  CHECK(translational_energy_rate(sys, -sys.cavity.kappa, 0.5 * kB * 4e-6) <
        0.0);
  CHECK(translational_energy_rate(sys, -sys.cavity.kappa, 0.5 * kB * 3.6e-6) >
        0.0);
}
