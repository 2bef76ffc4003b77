// Copyright 2026 The crstates Authors
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

// Builds a shuffle of two realignment-related Werner states that satisfies
// none of the three conditions, then checks each factor for complete
// reducibility.
#include <iostream>
#include <vector>

#include "crstates/crstates.hpp"

int main() {
  using namespace crstates;
  const std::vector<BipartiteState> inputs{werner(3, 1, 0, -1.0 / 3), werner(3, 1, -1, 1)};
  const NewTypeReport report = new_type_state(inputs);

  std::cout << "shuffle: " << report.state.dim() << "x" << report.state.dim()
            << ", rank " << report.flags.rank << "\n";
  std::cout << dump(to_json(report.flags));
  for (const auto& g : inputs) {
    std::cout << "factor verdict: " << to_string(is_completely_reducible(g)) << "\n";
  }
  return report.satisfies_none ? 0 : 1;
}
