// SPDX-License-Identifier: Apache-2.0
//
// rsmimo: statistics of the MIMO Rician shadowed fading channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsmimo::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kValidationError = 2,
  kNumericalConsistencyError = 3,
};

/// Runs the command line `args` (program name first). CSV goes to files;
/// the resolved parameters, seed and reports go to `log`.
int run(const std::vector<std::string>& args, std::ostream& log);

}  // namespace rsmimo::cli
