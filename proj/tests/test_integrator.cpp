// Copyright 2026 The otto-ion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "otto/integrator.hpp"
#include "otto/validation.hpp"

using namespace otto;

TEST_CASE("step policy validation") {
  CHECK_NOTHROW(StepPolicy{}.validate());
  StepPolicy p;
  p.step_size = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.spectrum_stride = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("closed evolution matches the matrix exponential") {
  EngineParams p;
  p.gamma = 0.0;
  const Liouvillian l(p);
  std::mt19937_64 rng(31);
  for (double b : {5.0, 10.0}) {
    const Mat4 rho0 = random_density_matrix<4>(rng);
    const Generator gen = [&](double, const Mat4& r) { return l.apply(b, r); };
    const Mat4 ref = oracle::unitary_evolve(h_full(b, p), rho0, 10.0);
    const auto coarse = evolve(rho0, 0.0, 10.0, gen, {});
    CHECK((coarse.final_state - ref).max_abs() < 1e-7);
    CHECK(coarse.trace_drift < 1e-12);
    CHECK(coarse.steps_taken == 10000);
    StepPolicy fine;
    fine.step_size = 5e-4;
    CHECK((evolve(rho0, 0.0, 10.0, gen, fine).final_state - ref).max_abs() < 1e-8);
  }
}

TEST_CASE("spontaneous decay follows the exponential law") {
  EngineParams p;
  p.g = 0.0;
  p.k = 0.0;
  const Liouvillian l(p);
  const Mat4 up = tensor_product(ops::upper_projector(), ops::lower_projector());
  const double t = 20.0;
  const auto res = evolve(up, 0.0, t, [&](double, const Mat4& r) { return l.apply(5.0, r); }, {});
  const double rate = (2.0 * p.n_th + 1.0) * p.gamma;
  const double p_inf = p.n_th / (2.0 * p.n_th + 1.0);
  const double expected = p_inf + (1.0 - p_inf) * std::exp(-rate * t);
  CHECK(res.final_state(2, 2).real() == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("last step is shortened to land on the end time") {
  const Generator zero = [](double, const Mat4&) { return Mat4{}; };
  const Mat4 rho = tensor_product(ops::lower_projector(), ops::lower_projector());
  CHECK(evolve(rho, 0.0, 0.0105, zero, {}).steps_taken == 11);
  CHECK(evolve(rho, 0.0, 0.01, zero, {}).steps_taken == 10);
  CHECK(evolve(rho, 1.0, 1.0, zero, {}).steps_taken == 0);
  CHECK_THROWS_AS(evolve(rho, 1.0, 0.0, zero, {}), std::invalid_argument);

  // The generator sees the absolute time: d rho/dt = t * rho gives exp(t^2/2).
  const Generator ramp = [](double t, const Mat4& r) { return r * t; };
  StepPolicy loose;
  loose.max_trace_drift = 10.0;
  const auto res = evolve(rho, 1.0, 1.0105, ramp, loose);
  CHECK(res.final_state(0, 0).real() == doctest::Approx(std::exp((1.0105 * 1.0105 - 1.0) / 2.0)).epsilon(1e-12));
}

TEST_CASE("accuracy envelope violations raise IntegrationError") {
  const Mat4 rho = tensor_product(ops::lower_projector(), ops::lower_projector());
  const Generator leak = [](double, const Mat4& r) { return r * -0.01; };
  CHECK_THROWS_AS(evolve(rho, 0.0, 1.0, leak, {}), IntegrationError);

  const Generator blowup = [](double, const Mat4& r) { return r * 1e300; };
  StepPolicy loose;
  loose.max_trace_drift = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(evolve(rho, 0.0, 1.0, blowup, loose), IntegrationError);

  // Population flowing out of a state that is already empty turns negative.
  const Generator drain = [](double, const Mat4&) {
    Mat4 d;
    d(0, 0) = 1.0;
    d(3, 3) = -1.0;
    return d;
  };
  try {
    evolve(rho, 0.0, 1.0, drain, {});
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.diagnostics().min_eigenvalue_seen < -1e-9);
  }
}

TEST_CASE("schedule generator clamps to the schedule window") {
  const EngineParams p;
  const Liouvillian l(p);
  const RampSchedule r(10.0, 5.0, 2.0);
  const Generator gen = schedule_generator(l, r);
  std::mt19937_64 rng(32);
  const Mat4 rho = random_density_matrix<4>(rng);
  CHECK((gen(1.0, rho) - l.apply(7.5, rho)).max_abs() < 1e-14);
  CHECK((gen(2.0 + 1e-13, rho) - l.apply(5.0, rho)).max_abs() < 1e-14);
}

TEST_CASE("fourth-order convergence") {
  const ConvergenceProbe probe = convergence_order();
  CHECK(probe.order > 3.7);
  CHECK(probe.order < 4.3);
  CHECK(probe.ratio() == doctest::Approx(std::pow(2.0, probe.order)));
}

TEST_CASE("open evolution keeps states physical") {
  const EngineParams p;
  const Liouvillian l(p);
  std::mt19937_64 rng(33);
  for (int i = 0; i < 5; ++i) {
    const Mat4 rho0 = random_density_matrix<4>(rng);
    const auto res = evolve(rho0, 0.0, 5.0, schedule_generator(l, RampSchedule(10.0, 5.0, 5.0)), {});
    CHECK(res.trace_drift < 1e-12);
    CHECK(res.min_eigenvalue_seen > -1e-9);
    CHECK(res.final_state.hermiticity_error() == 0.0);
  }
}
