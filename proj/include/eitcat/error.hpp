// Copyright 2026 The eitcat Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace eitcat {

/// Base of every error raised by the library. `code()` doubles as the CLI
/// exit status for the error class.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual int code() const noexcept { return 1; }
};

class ConfigError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 2; }
};

/// Argument outside the physical domain (z outside [0, L], non-positive
/// Rabi frequency, invalid parameter set).
class DomainError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 3; }
};

/// Quadrature non-convergence, integrator blow-up and similar.
class NumericError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 4; }
};

class StabilityError : public NumericError {
public:
  StabilityError(const std::string& what, double required_step)
      : NumericError(what), required_step_(required_step) {}
  double required_step() const noexcept { return required_step_; }
  int code() const noexcept override { return 5; }

private:
  double required_step_;
};

class CalibrationError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 6; }
};

class CutoffError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 7; }
};

class BasisMismatchError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 8; }
};

/// Caller violated a documented precondition (unnormalized state, gate and
/// channel disagree, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
  int code() const noexcept override { return 9; }
};

}  // namespace eitcat
