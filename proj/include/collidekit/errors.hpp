// Copyright 2026 The collidekit Authors
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

namespace collidekit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Matrix has the wrong structure (non-square, non-Hermitian, bad first row).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A state would have a negative eigenvalue or Bloch length above one.
class PositivityError : public Error {
 public:
  using Error::Error;
};

class UnitarityError : public Error {
 public:
  using Error::Error;
};

/// Map does not preserve trace (PTM first row, Kraus normalization).
class TracePreservationError : public Error {
 public:
  using Error::Error;
};

/// Channel (or matrix) is not invertible, so it has no logarithm.
class SingularChannelError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue sits on the negative real axis: the principal log is undefined.
class BranchCutError : public Error {
 public:
  using Error::Error;
};

/// Convergence/stability bounds need 0 < |cos eta| < 1.
class BoundUndefinedError : public Error {
 public:
  using Error::Error;
};

/// Requested register exceeds the qubit cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its domain (negative time, step count above the cap).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

}  // namespace collidekit
