// Copyright 2026 The mincal Authors.
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

#ifndef MINCAL_CONTEXT_H_
#define MINCAL_CONTEXT_H_

#include <optional>
#include <string>

#include "mincal/avm.h"

namespace mincal {

// Discourse state consulted by construction context constraints.
struct DiscourseContext {
  std::string hr = "system";  // hearer
  std::string sr = "user";    // speaker
  bool attends = true;        // <hr attends> = sr
  std::optional<Term> p_utter;
  std::string lang_code = "english";
  std::string lang_channel = "text";

  // View used for path lookup:
  //   [ [ hr [ [ id system ] [ attends sr ] ] ] [ sr [ [ id user ] ] ]
  //     [ p_utter [ [ cons_n sent(ques, wh_time) ] ] ]
  //     [ lang_code english ] [ lang_channel text ] ]
  Avm ToAvm() const;
};

}  // namespace mincal

#endif  // MINCAL_CONTEXT_H_
