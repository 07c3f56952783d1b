// Copyright 2026 The botnash Authors
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

#ifndef BOTNASH_FORMAT_HPP
#define BOTNASH_FORMAT_HPP

#include <cstdio>
#include <string>

namespace botnash {

// CSV number format: 12 significant digits, '.' decimal separator. Output
// is stable across runs so CSV diffs are byte-exact.
inline std::string format_number(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

}  // namespace botnash

#endif  // BOTNASH_FORMAT_HPP
