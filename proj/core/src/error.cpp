/*
 Copyright 2026 The ddc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "ddc/error.hpp"

namespace ddc {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::SynthesisInfeasible: return "synthesis-infeasible";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::GenerationFailure: return "generation-failure";
    case ErrorKind::SearchFailure: return "search-failure";
    case ErrorKind::DegenerateSystem: return "degenerate-system";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

ParseError::ParseError(const std::string& what, long line)
    : Error(ErrorKind::ParseError,
            line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

void throw_invalid(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

void throw_numerical(const std::string& what) { throw Error(ErrorKind::NumericalFailure, what); }

} // namespace ddc
