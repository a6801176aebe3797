// Copyright 2026 The sagfn Authors
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

#include "json.hpp"
#include "sagfn/state_dag.h"

namespace sagfn {

void StateDag::write_jsonl(std::ostream& out) const {
  for (int s = 0; s < size(); ++s) {
    const DagState& st = states_[s];
    nlohmann::json j;
    j["id"] = s;
    j["hash"] = hash_hex(st.hash);
    j["terminal"] = st.terminal;
    j["aut"] = st.aut;
    if (st.terminal) j["reward"] = st.reward;
    nlohmann::json succ = nlohmann::json::array();
    for (const ForwardClass& c : forward(s)) {
      succ.push_back({{"action", c.representative.expand().to_string()},
                      {"multiplicity", c.multiplicity},
                      {"successor", c.successor}});
    }
    j["successors"] = std::move(succ);
    out << j.dump() << '\n';
  }
}

}  // namespace sagfn
