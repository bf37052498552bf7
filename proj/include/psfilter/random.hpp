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

#include <cstdint>
#include <random>
#include <vector>

#include "psfilter/model.hpp"

namespace psfilter::random {

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream) pairs, e.g. one per restart.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive bounds

CVector gaussian_vector(Rng& rng, Eigen::Index d);
CMatrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
CMatrix hermitian(Rng& rng, Eigen::Index d);
/// Haar-distributed unitary via QR with phase correction.
CMatrix unitary(Rng& rng, Eigen::Index d);
PureState state(Rng& rng, Eigen::Index d);
RVector real_vector(Rng& rng, Eigen::Index n, double lo, double hi);

/// Random POVM element with spectrum drawn uniformly from [0, 1].
CMatrix effect(Rng& rng, Eigen::Index d);

/// k-outcome POVM: E_i = S^{-1/2} A_i S^{-1/2} with random positive A_i and S = sum A_i.
std::vector<CMatrix> povm(Rng& rng, Eigen::Index d, int k);

/// Random blocks (C, D) for which the optimal noiseless filter assembly is a
/// valid POVM element at probability p. Only the psi row of C is non-zero.
void admissible_blocks(Rng& rng, int u, int d, double p, CMatrix& c_block, CMatrix& d_block);

/// Model with a random probe and M random Hermitian generators.
ParameterizedModel model(Rng& rng, Eigen::Index d, int m);

}  // namespace psfilter::random
