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

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "otto/integrator.hpp"
#include "otto/model.hpp"

namespace otto {

/// Random positive, unit-trace matrix from a complex Ginibre sample.
template <std::size_t N>
Matrix<N> random_density_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix<N> g;
  for (auto& z : g.data()) z = {normal(rng), normal(rng)};
  Matrix<N> rho = g * g.adjoint();
  return rho * (1.0 / rho.trace().real());
}

/// Random Hermitian matrix with entries of order one.
template <std::size_t N>
Matrix<N> random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix<N> g;
  for (auto& z : g.data()) z = {normal(rng), normal(rng)};
  return (g + g.adjoint()) * 0.5;
}

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The property suite behind `otto-ion validate`: generator structure,
/// integrator accuracy, information inequalities and one short cycle.
std::vector<CheckResult> run_property_suite(const EngineParams& params, const StepPolicy& steps,
                                            std::uint64_t seed = 20260101, std::size_t samples = 200);

}  // namespace otto
