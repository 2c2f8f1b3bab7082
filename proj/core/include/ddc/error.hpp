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
#ifndef DDC_ERROR_HPP
#define DDC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ddc {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
    InvalidArgument,     ///< precondition or dimension violation
    NumericalFailure,    ///< eigen/Lyapunov/linear solve broke down or overflowed
    SynthesisInfeasible, ///< the operator's LMI has no solution on this data
    ParseError,          ///< malformed dataset or CSV file
    Io,                  ///< file could not be opened or written
    GenerationFailure,   ///< PE input generation exhausted its retries
    SearchFailure,       ///< kappa line search found no stealthy point
    DegenerateSystem,    ///< zero l2 gain where a positive one is required
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, long line);

    /// 1-based line number inside the offending file, 0 when not line-specific.
    long line() const noexcept { return line_; }

private:
    long line_;
};

[[noreturn]] void throw_invalid(const std::string& what);
[[noreturn]] void throw_numerical(const std::string& what);

} // namespace ddc

#endif // DDC_ERROR_HPP
