// Copyright 2026 The XXZ Gatesmith Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GATESMITH_TOOLS_CLI_HPP
#define GATESMITH_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gatesmith::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line. args excludes the program name. Payloads go to
/// `out`, diagnostics to `err`; '-' payload arguments read from `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace gatesmith::cli

#endif  // GATESMITH_TOOLS_CLI_HPP
