// Copyright 2026 The needsim Authors
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

#ifndef NEEDSIM_CLI_H_
#define NEEDSIM_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace needsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitRuntimeError = 2;

// args excludes the program name. Default output directory comes from
// NEEDSIM_OUT_DIR, else "out".
int CliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace needsim

#endif  // NEEDSIM_CLI_H_
