// Copyright 2026 The conicdist Authors
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

#ifndef CONICDIST_ERROR_HPP_
#define CONICDIST_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace conicdist {

// Base of everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension mismatches and inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A solver was asked for a mode it cannot serve (exact mode with L2 norms).
class ModeError : public Error {
 public:
  using Error::Error;
};

// Mathematically undefined request, e.g. the norming functional of 0.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Instance / report file that does not follow the schema. The message
// starts with the offending field path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// The dichotomy checker found both or neither system solvable.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace conicdist

#endif  // CONICDIST_ERROR_HPP_
