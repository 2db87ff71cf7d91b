// Copyright 2026 The ldpol Authors
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

#ifndef LDPOL_REPORT_HPP_
#define LDPOL_REPORT_HPP_

#include <optional>
#include <string>

#include "json.hpp"

#include "ldpol/metrics.hpp"
#include "ldpol/privacy.hpp"
#include "ldpol/schedules.hpp"
#include "ldpol/simulator.hpp"

namespace ldpol {

// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

// Non-finite values become null.
nlohmann::json finite_or_null(double x);

nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const BudgetReport& b, const NoiseSchedule& noise);
nlohmann::json spectrum_json(const WeightMatrix& W);
nlohmann::json constants_json(const ProblemConstants& pc);

struct TraceFits {
  std::optional<RateFit> V;
  std::optional<RateFit> R;
  double lo = 0.0;
  double hi = 0.0;
};

// Log-log fits of V and R over checkpoints in [lo, hi]; a fit is absent when
// the window holds too few positive points.
TraceFits fit_trace(const RunTrace& trace, double lo, double hi);

// Columns: t, V, R, eps_0..eps_{m-1}, drift, dynamic_regret.
std::string trace_csv(const RunTrace& trace);
nlohmann::json trace_json(const RunTrace& trace, const Experiment& ex);

}  // namespace ldpol

#endif  // LDPOL_REPORT_HPP_
