// Copyright 2026 The OptiCollect Authors. All Rights Reserved.
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
// =============================================================================

#ifndef OPTICOLLECT_ERROR_HPP
#define OPTICOLLECT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace opticollect {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument violates a documented precondition or type invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

// arc_path was asked for a route from a node to itself.
class EmptyPath : public DomainError {
 public:
  using DomainError::DomainError;
};

// A wavelength was required on a transfer that has none assigned yet.
class IncompleteAssignment : public Error {
 public:
  using Error::Error;
};

// Malformed experiment configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace opticollect

#endif  // OPTICOLLECT_ERROR_HPP
