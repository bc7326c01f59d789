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

#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "otto/config.hpp"

using namespace otto;

TEST_CASE("empty config gives the defaults") {
  const SweepSpec s = parse_config("");
  CHECK(s.kind == SweepKind::SingleCycle);
  CHECK(s == SweepSpec{});
  CHECK(s.params.B_high == 10.0);
  CHECK(s.params.B_low == 5.0);
  CHECK(s.params.g == 0.2);
  CHECK(s.params.k == 0.1);
  CHECK(s.params.T_hot == 10.0);
  CHECK(s.params.omega == 1.0);
  CHECK(s.params.gamma == 0.085);
  CHECK(s.params.n_th == 0.1);
  CHECK(parse_config("# only a comment\n\n   \n") == SweepSpec{});
}

TEST_CASE("grids") {
  const SweepSpec s = parse_config("kind=sweep_t1\ngrid=10:100:5\n");
  CHECK(s.kind == SweepKind::SweepT1);
  REQUIRE(s.grid.size() == 19);
  CHECK(s.grid.front() == 10.0);
  CHECK(s.grid.back() == 100.0);
  CHECK(parse_grid("1, 2.5 ,4") == std::vector<double>{1.0, 2.5, 4.0});
  CHECK(parse_grid("0.1:0.3:0.1").size() == 3);
  CHECK(parse_grid("2:9:3") == std::vector<double>{2.0, 5.0, 8.0});
  CHECK_THROWS_AS(parse_grid("1:2"), ConfigError);
  CHECK_THROWS_AS(parse_grid("1:2:0"), ConfigError);
  CHECK_THROWS_AS(parse_grid("5:1:1"), ConfigError);
  CHECK_THROWS_AS(parse_config("kind=sweep_tau\ngrid=4,3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("kind=sweep_tau\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("kind=sweep_tau\ngrid=0,3\n"), ConfigError);
}

TEST_CASE("config errors carry line numbers and field names") {
  try {
    parse_config("g = 0.2\n\nwhatever = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("whatever") != std::string::npos);
  }
  try {
    parse_config("B_low=12\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("B_low") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("gamma = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("gamma\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("policy = sometimes\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("kind = multicycle\ncycles = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("step_size = -1\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/otto.cfg"), ConfigError);
}

TEST_CASE("multi-cycle runs default to feedback") {
  CHECK(parse_config("kind = multicycle\n").measurement == MeasurementPolicy::FeedbackPiPulse);
  CHECK(parse_config("kind = multicycle\npolicy = postselect\n").measurement ==
        MeasurementPolicy::PostSelectGround);
  CHECK(parse_config("kind = single\n").measurement == MeasurementPolicy::PostSelectGround);
}

TEST_CASE("inline comments and whitespace") {
  const SweepSpec s = parse_config("  tau = 11   # ramp\nt_heat=25\r\nreference = gibbs\n");
  CHECK(s.times.tau == 11.0);
  CHECK(s.times.t_heat == 25.0);
  CHECK(s.reference == ReferencePolicy::HotGibbs);
}

TEST_CASE("write_config round-trips") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    SweepSpec s;
    s.kind = static_cast<SweepKind>(i % 4);
    s.params.g = 0.01 + u(rng);
    s.params.k = 0.01 + u(rng);
    s.params.omega = 0.1 + 3 * u(rng);
    s.params.gamma = 1e-3 + u(rng) / 3;
    s.params.n_th = u(rng);
    s.params.T_hot = 0.1 + 20 * u(rng);
    s.params.B_low = 10 * u(rng);
    s.params.B_high = s.params.B_low + 0.1 + 10 * u(rng);
    s.params.n_vib0 = u(rng);
    s.params.n_cold = 1e-3 + u(rng);
    s.times = {0.1 + 100 * u(rng), 0.1 + 300 * u(rng)};
    s.steps.step_size = 1e-4 + 1e-2 * u(rng);
    s.steps.spectrum_stride = 1 + static_cast<std::size_t>(500 * u(rng));
    s.measurement = i % 3 ? MeasurementPolicy::PostSelectGround : MeasurementPolicy::FeedbackPiPulse;
    s.reference = i % 5 ? ReferencePolicy::SteadyState : ReferencePolicy::HotGibbs;
    s.cycles = 1 + static_cast<std::size_t>(40 * u(rng));
    if (s.kind == SweepKind::SweepT1 || s.kind == SweepKind::SweepTau) {
      double x = 0.0;
      for (int j = 0; j < 5; ++j) s.grid.push_back(x += 0.01 + 10 * u(rng));
    }
    s.output_path = "out_" + std::to_string(i) + ".csv";
    CHECK(parse_config(write_config(s)) == s);
  }
}

TEST_CASE("load_config reads files") {
  const std::string path = "otto_config_test.cfg";
  {
    std::ofstream out(path);
    out << "kind = sweep_tau\ngrid = 8,16\nt_heat = 100\n";
  }
  const SweepSpec s = load_config(path);
  std::remove(path.c_str());
  CHECK(s.kind == SweepKind::SweepTau);
  CHECK(s.grid == std::vector<double>{8.0, 16.0});
}

TEST_CASE("figure presets") {
  const SweepSpec f3 = preset("fig3");
  CHECK(f3.kind == SweepKind::SweepT1);
  CHECK(f3.grid.size() == 20);
  CHECK(f3.times.tau == 256.0);
  CHECK_NOTHROW(f3.validate());
  const SweepSpec f5 = preset("fig5");
  CHECK(f5.kind == SweepKind::SweepTau);
  CHECK(f5.times.t_heat == 100.0);
  CHECK_NOTHROW(f5.validate());
  const SweepSpec f6 = preset("fig6");
  CHECK(f6.kind == SweepKind::MultiCycle);
  CHECK(f6.cycles == 20);
  CHECK(f6.times.t_heat == 25.0);
  CHECK(f6.times.tau == 11.0);
  CHECK(f6.measurement == MeasurementPolicy::FeedbackPiPulse);
  CHECK_NOTHROW(preset("fig4").validate());
  CHECK_THROWS_AS(preset("fig7"), ConfigError);
}
