// Copyright 2026 The Cislunar SDA Toolkit Authors
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

#ifndef SDA_ERRORS_HPP
#define SDA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sda {

// Error taxonomy; each kind maps onto a process exit code / C API status.
enum class ErrorKind {
  Config,      // bad configuration, missing file, malformed input
  Numerical,   // integrator failure, singular state, singular matrix
  Infeasible,  // problem cannot be posed (e.g. fewer slots than observers)
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& what) {
  return Error(ErrorKind::Config, what);
}
inline Error numerical_error(const std::string& what) {
  return Error(ErrorKind::Numerical, what);
}
inline Error infeasible_error(const std::string& what) {
  return Error(ErrorKind::Infeasible, what);
}

}  // namespace sda

#endif  // SDA_ERRORS_HPP
