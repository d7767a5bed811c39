// Copyright 2026 The AdaSR Authors. All Rights Reserved.
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

#pragma once

#include <iosfwd>
#include <string>

#include "adasr/report.hpp"

namespace adasr::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kValidation = 3,
};

/// Entry point shared by the adasr binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// JSON run report of one inference.
std::string report_json(const std::string& input, int scale, double desired_depth, const std::string& mode,
                        const std::string& ca_pool, const EfficiencyReport& report);

}  // namespace adasr::cli
