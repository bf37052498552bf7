// Copyright 2026 The psfilter Authors
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

#include <Eigen/Dense>

namespace psfilter {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  InvalidFilter,
  DegeneratePostselection,
  SingularFisher,
  NonUniformAmplification,
  UnboundedAmplification,
  NonFinite,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code is what
/// callers branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by crb() when the QFIM has a (numerically) vanishing eigenvalue.
/// Carries an orthonormal basis of the non-identifiable parameter directions.
class SingularFisherError : public Error {
 public:
  SingularFisherError(const std::string& what, Eigen::MatrixXd null_space)
      : Error(ErrorCode::SingularFisher, what),
        null_space_(std::move(null_space)) {}

  const Eigen::MatrixXd& null_space() const noexcept { return null_space_; }

 private:
  Eigen::MatrixXd null_space_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace psfilter
