// Copyright 2026 The flsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLSIM_REPORT_HPP_
#define FLSIM_REPORT_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace flsim {

/// One evaluated inequality: both sides, the Monte Carlo error budget and a
/// verdict.
struct BoundEntry {
  std::string name;
  int round = 0;
  int client = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double std_err = 0.0;
  std::string status;  // "pass", "fail" or "out-of-regime"
};

/// Problem constants resolved for a run. Names follow the fixed bounds.csv /
/// summary.json schema.
struct ConstantsBlock {
  double gap_constant = 1.0;         // C
  double c1_t = 0.0;                 // average sqrt-JS pivot
  double c2 = 0.0;                   // (e^{2 xi} - 1) / 2
  double c3 = 0.0;                   // parameter norm bound
  double c4 = 0.0;                   // bias norm bound
  double c5 = 0.0;                   // bias / TV ratio bound
  bool c5_estimable = true;
  double c6 = 0.0;                   // utility-bound constant
  double c_d = 0.0;                  // trade-off lower-bound weight
  double xi = 0.0;
  double gamma = 1.0;
  std::optional<double> delta;       // configured, never computed
};

struct BoundReport {
  std::vector<BoundEntry> entries;
  ConstantsBlock constants;

  bool all_pass() const;
  void append(BoundEntry entry) { entries.push_back(std::move(entry)); }
};

/// Prints a double with 17 significant digits so CSV reload is bit-faithful.
std::string format_double(double v);

/// Writes bounds.csv: name,t,k,lhs,rhs,stderr,status.
void write_bounds_csv(std::ostream& out, const BoundReport& report);

}  // namespace flsim

#endif  // FLSIM_REPORT_HPP_
