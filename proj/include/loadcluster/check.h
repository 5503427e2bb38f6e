// Copyright 2026 The loadcluster Authors.
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

#ifndef LOADCLUSTER_CHECK_H_
#define LOADCLUSTER_CHECK_H_

#include <string>
#include <utility>
#include <vector>

namespace loadcluster {

// Outcome of one verification. `observed` is compared against `limit` in the
// direction the check documents; `reported` carries diagnostic values that
// are recorded but not asserted.
struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double limit = 0.0;
  std::string detail;
  std::vector<std::pair<std::string, double>> reported;
};

}  // namespace loadcluster

#endif  // LOADCLUSTER_CHECK_H_
