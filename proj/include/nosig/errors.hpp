// Copyright 2026 The nosig Authors.
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

#ifndef NOSIG_ERRORS_HPP_
#define NOSIG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nosig {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or space tags do not line up.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the domain of the operation (negative weights,
// non-stochastic strategies, violated construction preconditions, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed. The message names the stage.
class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& stage, const std::string& what)
      : Error(stage + ": " + what), stage_(stage) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Malformed game or strategy file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nosig

#endif  // NOSIG_ERRORS_HPP_
