// Copyright 2026 The collidekit Authors
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

// Command-line front end. Commands: homogenize, decohere, entangle, channel,
// generator, integrate.

#pragma once

#include <ostream>

namespace collidekit::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kCapacityError = 3,
  kNumericalError = 4,
};

/// Parses argv, runs one command and returns the exit code. Primary output
/// goes to --out (or `out`); the JSON summary goes to --summary, else to `out`
/// when --out is given, else to `err`. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace collidekit::cli
