// Copyright 2026 The qthermo Authors
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

namespace qthermo {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit (square, equal dims, dimension cap).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation needs structure the operand does not carry, e.g. a partial
/// trace on an operator without declared tensor factors.
class StructureError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NotPositiveSemidefiniteError : public Error {
 public:
  using Error::Error;
};

/// Frame or weight vector violating orthonormality / probability constraints.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Weight rates that do not sum to zero.
class InvalidRateError : public Error {
 public:
  using Error::Error;
};

class InvalidTemperatureError : public Error {
 public:
  using Error::Error;
};

/// The requested exchange heat cannot be produced by any admissible rate
/// direction (direction orthogonal to the level energies).
class UnreachableExchangeError : public Error {
 public:
  using Error::Error;
};

class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

/// Time integration failure; carries the simulation time at which it occurred.
class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, double time)
      : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Malformed scenario or trajectory input. `path` names the offending field.
class InputError : public Error {
 public:
  InputError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path), message_(what) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

}  // namespace qthermo
