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

#include "flsim/report.hpp"

#include <cstdio>

namespace flsim {

bool BoundReport::all_pass() const {
  for (const BoundEntry& e : entries) {
    if (e.status == "fail") return false;
  }
  return true;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_bounds_csv(std::ostream& out, const BoundReport& report) {
  out << "name,t,k,lhs,rhs,stderr,status\n";
  for (const BoundEntry& e : report.entries) {
    out << e.name << ',' << e.round << ',' << e.client << ','
        << format_double(e.lhs) << ',' << format_double(e.rhs) << ','
        << format_double(e.std_err) << ',' << e.status << '\n';
  }
}

}  // namespace flsim
