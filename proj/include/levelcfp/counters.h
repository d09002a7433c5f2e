// Copyright 2026 The levelcfp Authors
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

#ifndef LEVELCFP_COUNTERS_H_
#define LEVELCFP_COUNTERS_H_

#include <cstdint>

namespace levelcfp {

// Work counters owned by a single run. Problems never hold counters.
//
// Every projection-operator invocation counts, including calls that leave a
// feasible point unchanged.
struct RunCounters {
  std::uint64_t projections = 0;
  std::uint64_t objective_evaluations = 0;
  std::uint64_t sweeps = 0;

  RunCounters& operator+=(const RunCounters& other) {
    projections += other.projections;
    objective_evaluations += other.objective_evaluations;
    sweeps += other.sweeps;
    return *this;
  }
  bool operator==(const RunCounters&) const = default;
};

}  // namespace levelcfp

#endif  // LEVELCFP_COUNTERS_H_
