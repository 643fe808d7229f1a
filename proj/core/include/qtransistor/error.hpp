// Copyright 2026 The qtransistor Authors
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

namespace qtransistor {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch or a matrix that would exceed the entry cap.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  NotHermitianError(const std::string& what, double asymmetry)
      : Error(what), asymmetry_(asymmetry) {}

  // max |m - m^dagger| measured on the rejected input.
  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

// An iterative routine hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Out-of-range site index, negative rate, inconsistent physical parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf entries, non-normalized states, invalid density matrices.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtransistor
