// Copyright 2026 The Chronos Authors.
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

#ifndef CHRONOS_ERRORS_HPP
#define CHRONOS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chronos {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in incompatible representations (grid vs basis, or sizes).
class RepresentationError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A declared property (e.g. Hermiticity) does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Collapse support extends past the recorded trajectory.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Requested dense object exceeds the configured size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A numerical kernel (eigensolver, FFT planner) failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Operator cannot be handled by the requested algorithm.
class UnsupportedOperatorError : public Error {
 public:
  using Error::Error;
};

/// Operation is not defined for this distribution variant (e.g. pdf of a delta).
class VariantError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event whose marginal density is (numerically) zero.
class UndefinedConditionalError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario document. `path()` names the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string field_path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Scenario parsed but violates an invariant. `path()` names the field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field_path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace chronos

#endif  // CHRONOS_ERRORS_HPP
