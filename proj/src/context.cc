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

#include "mincal/context.h"

namespace mincal {

Avm DiscourseContext::ToAvm() const {
  Avm hearer{{"id", Atom{hr}}};
  if (attends) hearer.Set("attends", Atom{"sr"});
  Avm out{{"hr", hearer},
          {"sr", Avm{{"id", Atom{sr}}}},
          {"lang_code", Atom{lang_code}},
          {"lang_channel", Atom{lang_channel}}};
  if (p_utter) out.Set("p_utter", Avm{{"cons_n", *p_utter}});
  return out;
}

}  // namespace mincal
