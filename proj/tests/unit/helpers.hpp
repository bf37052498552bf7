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

#include <cmath>
#include <optional>

#include <doctest.h>

#include "psfilter/error.hpp"
#include "psfilter/model.hpp"

namespace testing {

using namespace psfilter;

/// Error code thrown by f, or nullopt when it returns normally.
template <class Fn>
std::optional<ErrorCode> error_of(Fn&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline CMatrix pauli_x() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

inline CMatrix pauli_y() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

inline CVector basis(Eigen::Index d, Eigen::Index k) {
  CVector v = CVector::Zero(d);
  v(k) = 1.0;
  return v;
}

/// psi0 = |0>, G = sigma_y / 2: psi(theta) = (cos(theta/2), sin(theta/2)), QFI = 1.
inline ParameterizedModel qubit_y_model() { return ParameterizedModel(PureState(basis(2, 0)), {0.5 * pauli_y()}); }

/// psi0 = (1, 1)/sqrt 2, G = diag(0, 1).
inline ParameterizedModel phase_model() {
  CVector v(2);
  v << 1.0, 1.0;
  CMatrix g = CMatrix::Zero(2, 2);
  g(1, 1) = 1.0;
  return ParameterizedModel(PureState(v / std::sqrt(2.0)), {g});
}

/// d = 3: psi0 = |0>, G = (|0><1| + |1><0|)/2, so the derivative at theta = 0 is -i/2 |1>.
inline ParameterizedModel qutrit_model() {
  CMatrix g = CMatrix::Zero(3, 3);
  g(0, 1) = g(1, 0) = 0.5;
  return ParameterizedModel(PureState(basis(3, 0)), {g});
}

inline RVector vec1(double x) {
  RVector v(1);
  v(0) = x;
  return v;
}

}  // namespace testing
