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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "otto/engine.hpp"
#include "otto/validation.hpp"

using namespace otto;

namespace {

struct Outcome {
  int id;
  bool pass;
  std::string detail;
};

class Runs {
 public:
  explicit Runs(RunSettings settings) : settings_(std::move(settings)) {}

  const CycleRecord& cycle(double t_heat, double tau) {
    const auto key = std::make_pair(t_heat, tau);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, run_cycle(initial_joint_state(settings_.params), settings_, {t_heat, tau})).first;
    return it->second;
  }

  const std::map<std::pair<double, double>, CycleRecord>& all() const { return cache_; }

 private:
  RunSettings settings_;
  std::map<std::pair<double, double>, CycleRecord> cache_;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const RunSettings base;
  const EngineParams& p = base.params;
  Runs runs(base);
  MultiCycleReport multi;
  std::vector<Outcome> out;
  auto report = [&out](Outcome o) {
    std::printf("criterion %2d: %s  %s\n", o.id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    out.push_back(std::move(o));
  };

  {
    const auto t0 = std::chrono::steady_clock::now();
    const CycleRecord& c = runs.cycle(100.0, 256.0);
    const double dt = seconds_since(t0);
    report({1, c.eta >= 0.48 && c.eta <= 0.52 && dt < 30.0,
            fmt("eta(t1=100, tau=256) = %.6f", c.eta) + fmt(", %.2f s", dt)});
  }

  {
    const double ca = curzon_ahlborn(p);
    const double expected = 1.0 - std::sqrt(0.5);
    report({2, std::abs(ca - 0.2928932188134524) <= 1e-12 && std::abs(ca - expected) <= 1e-12,
            fmt("eta_CA = %.15f", ca)});
  }

  std::vector<double> t1_grid;
  for (int t = 5; t <= 25; ++t) t1_grid.push_back(t);
  for (int t = 30; t <= 100; t += 5) t1_grid.push_back(t);
  for (double t1 : t1_grid) runs.cycle(t1, 256.0);

  {
    bool monotone = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (int t = 5; t <= 100; t += 5) {
      const double q = runs.cycle(t, 256.0).q_hot;
      monotone = monotone && q >= prev;
      prev = q;
    }
    const double q100 = runs.cycle(100, 256.0).q_hot;
    const double q80 = runs.cycle(80, 256.0).q_hot;
    const double gap = (q100 - q80) / q100;
    report({3, monotone && gap < 0.01,
            std::string(monotone ? "Q_H nondecreasing" : "Q_H not monotone") +
                fmt(", (Q_H(100) - Q_H(80)) / Q_H(100) = %.3e", gap)});
  }

  {
    const double e20 = runs.cycle(20, 256.0).eta;
    const double e50 = runs.cycle(50, 256.0).eta;
    const double e100 = runs.cycle(100, 256.0).eta;
    // Smallest grid t1 from which the engine stays operational.
    double threshold = std::numeric_limits<double>::quiet_NaN();
    for (auto it = t1_grid.rbegin(); it != t1_grid.rend(); ++it) {
      if (!runs.cycle(*it, 256.0).operational) break;
      threshold = *it;
    }
    const bool ordered = e20 > e50 && e50 > e100 && e100 >= 0.48;
    const bool bracket = threshold > 8.0 && threshold <= 25.0;
    report({4, ordered && bracket,
            fmt("eta(20) = %.4f", e20) + fmt(", eta(50) = %.4f", e50) + fmt(", eta(100) = %.4f", e100) +
                fmt(", operational from t1 = %g", threshold)});
  }

  {
    std::vector<double> fine;
    for (int t = 4; t <= 16; ++t) fine.push_back(t);
    double crossing = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i < fine.size(); ++i) {
      const double a = runs.cycle(100, fine[i - 1]).eta_ir;
      const double b = runs.cycle(100, fine[i]).eta_ir;
      if (std::isnan(crossing) && a < 0.0 && b >= 0.0)
        crossing = fine[i - 1] + (fine[i] - fine[i - 1]) * (-a) / (b - a);
    }
    const std::vector<double> coarse{8, 16, 32, 64, 128, 256};
    bool eta_up = true, wir_down = true;
    for (std::size_t i = 1; i < coarse.size(); ++i) {
      const CycleRecord& a = runs.cycle(100, coarse[i - 1]);
      const CycleRecord& b = runs.cycle(100, coarse[i]);
      eta_up = eta_up && b.eta_ir >= a.eta_ir;
      wir_down = wir_down && b.w_ir_total <= a.w_ir_total;
    }
    const double terminal = runs.cycle(100, 256).eta_ir;
    report({5, crossing >= 4.0 && crossing <= 16.0 && eta_up && wir_down && terminal >= 0.48,
            fmt("eta_ir crosses 0 at tau = %.2f", crossing) + (eta_up ? ", eta_ir nondecreasing" : ", eta_ir not monotone") +
                (wir_down ? ", W_ir nonincreasing" : ", W_ir not monotone") + fmt(", eta_ir(256) = %.6f", terminal)});
  }

  {
    RunSettings feedback = base;
    feedback.measurement = MeasurementPolicy::FeedbackPiPulse;
    multi = run_cycles(20, feedback, {25.0, 11.0});
    const CycleRecord& ref = multi.cycles[2];
    double worst = 0.0;
    for (std::size_t i = 3; i < multi.cycles.size(); ++i) {
      worst = std::max(worst, std::abs(multi.cycles[i].q_hot - ref.q_hot) / std::abs(ref.q_hot));
      worst = std::max(worst, std::abs(multi.cycles[i].w_net - ref.w_net) / std::abs(ref.w_net));
    }
    const double steady = multi.eta_avg_pairwise.back();
    report({6, worst <= 1e-6 && steady >= 0.20 && steady <= 0.30,
            fmt("max relative spread of (Q_H, w_net) over cycles 3-20 = %.3e", worst) +
                fmt(", steady pairwise efficiency = %.4f", steady)});
  }

  double min_wir = std::numeric_limits<double>::infinity();
  double max_drift = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  double max_cost = 0.0;
  auto scan = [&](const CycleRecord& c) {
    min_wir = std::min({min_wir, c.strokes[1].w_ir_entropy, c.strokes[3].w_ir_entropy});
    max_cost = std::max(max_cost, c.meas_cost);
    for (const auto& s : c.strokes) {
      max_drift = std::max(max_drift, s.trace_drift);
      min_eig = std::min(min_eig, s.min_eigenvalue);
    }
  };
  for (const auto& [key, c] : runs.all()) scan(c);
  for (const auto& c : multi.cycles) scan(c);

  report({7, min_wir >= -1e-10, fmt("min W_ir over %g ramps", 2.0 * (runs.all().size() + multi.cycles.size())) +
                                    fmt(" = %.3e", min_wir)});

  {
    EngineParams closed = p;
    closed.gamma = 0.0;
    const Liouvillian l(closed);
    std::mt19937_64 rng(2026);
    double err_fine = 0.0, err_default = 0.0;
    StepPolicy fine;
    fine.step_size = 5e-4;
    for (double b : {p.B_low, p.B_high}) {
      for (int i = 0; i < 3; ++i) {
        const Mat4 rho0 = random_density_matrix<4>(rng);
        const Generator gen = [&](double, const Mat4& r) { return l.apply(b, r); };
        const Mat4 ref = oracle::unitary_evolve(h_full(b, closed), rho0, 10.0);
        err_fine = std::max(err_fine, (evolve(rho0, 0.0, 10.0, gen, fine).final_state - ref).max_abs());
        err_default = std::max(err_default, (evolve(rho0, 0.0, 10.0, gen, {}).final_state - ref).max_abs());
      }
    }

    RunSettings quasi = base;
    quasi.params.gamma = 0.0;
    quasi.params.k = 0.0;
    const Mat4 heated = runs.cycle(100, 256).stroke(StrokeKind::Heating).end_state_joint;
    const Mat2 rho_s = partial_trace(heated, Subsystem::Electronic);
    const Spectrum2 sh = eigh2(h_system(p.B_high, p));
    const double pm = expectation(rho_s, sh.projector(0));
    const double pp = expectation(rho_s, sh.projector(1));
    const double closed_form =
        (pm - pp) * (std::sqrt(p.g * p.g + p.B_high * p.B_high) - std::sqrt(p.g * p.g + p.B_low * p.B_low));
    const StrokeRecord r = stroke_ramp(heated, quasi, RampDirection::Expand, 1e4);
    const double rel = std::abs(r.w - closed_form) / std::abs(closed_form);
    report({8, err_fine <= 1e-8 && rel <= 1e-3,
            fmt("closed evolution vs exp(-iHt): %.2e at h = 5e-4", err_fine) +
                fmt(" (%.2e at h = 1e-3)", err_default) + fmt(", quasistatic W1 = %.8f", r.w) +
                fmt(" vs %.8f", closed_form) + fmt(" (rel %.2e)", rel)});
  }

  {
    const ConvergenceProbe probe = convergence_order(p);
    const bool ok = probe.order >= 3.7 && probe.order <= 4.3 && max_drift < 1e-8 && min_eig >= -1e-9;
    report({9, ok, fmt("order = %.4f", probe.order) + fmt(", max trace drift = %.2e", max_drift) +
                       fmt(", min eigenvalue = %.2e", min_eig)});
  }

  {
    const double t_cold = effective_temperature(p.n_cold, p.omega);
    const double bound = t_cold * std::log(2.0);
    const Mat4 mixed = tensor_product(Mat2::diagonal({0.5, 0.5}), ops::lower_projector());
    const double m_mixed = stroke_measurement(mixed, base).meas_cost;
    const bool ok = max_cost <= bound + 1e-12 && std::abs(m_mixed - bound) <= 1e-12;
    report({10, ok, fmt("max M = %.6f", max_cost) + fmt(", T_L ln 2 = %.12f", bound) +
                        fmt(", M(mixed) - T_L ln 2 = %.1e", m_mixed - bound)});
  }

  const auto failed = std::count_if(out.begin(), out.end(), [](const Outcome& o) { return !o.pass; });
  std::printf("%zu/%zu criteria passed in %.1f s\n", out.size() - static_cast<std::size_t>(failed), out.size(),
              seconds_since(start));
  return failed ? 1 : 0;
}
