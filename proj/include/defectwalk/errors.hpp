// Copyright 2026 The defectwalk Authors.
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

#ifndef DEFECTWALK_ERRORS_HPP
#define DEFECTWALK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace defectwalk {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// Lattice window does not satisfy a size or containment requirement.
class WindowError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// |gamma + beta| is below tolerance: the defect node is cut off and the
// closed-form eigensystem is unavailable. Use the oracle propagator instead.
class DisconnectedDefectError : public Error {
 public:
  using Error::Error;
};

// (gamma + 2 beta)^2 - 2 beta^2 vanishes, so the closed-form bound energies
// are singular and the bracketing root finder must be used.
class DegenerateDenominatorError : public Error {
 public:
  using Error::Error;
};

class NoBoundStateError : public Error {
 public:
  using Error::Error;
};

// A numerical result failed its self-check (e.g. norm drift).
class AccuracyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace defectwalk

#endif  // DEFECTWALK_ERRORS_HPP
