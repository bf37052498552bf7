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
#include <exception>
#include <limits>
#include <vector>

#include <omp.h>

namespace psfilter::kernels {

/// Serial is the reference implementation that the OpenMP path must reproduce
/// bit for bit.
enum class Backend { Serial, OpenMP };

struct ArgMax {
  double value = -std::numeric_limits<double>::infinity();
  std::int64_t index = -1;
};

/// Larger value wins; equal values resolve to the lower index. Associative and
/// commutative, so any reduction order gives the serial answer.
inline ArgMax better(const ArgMax& a, const ArgMax& b) {
  if (b.index < 0) return a;
  if (a.index < 0) return b;
  if (b.value > a.value) return b;
  if (a.value > b.value) return a;
  return a.index <= b.index ? a : b;
}

inline int resolve_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

/// argmax over i in [0, n) of f(i). Entries with non-finite f(i) are ignored.
template <class Fn>
ArgMax argmax_range(std::int64_t n, Fn&& f, Backend backend = Backend::Serial, int jobs = 0) {
  ArgMax best;
  if (backend == Backend::Serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      const double v = f(i);
      if (v == v && v > -std::numeric_limits<double>::infinity()) best = better(best, {v, i});
    }
    return best;
  }
  const int nt = resolve_jobs(jobs);
  std::vector<ArgMax> partial(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
  {
    ArgMax local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const double v = f(i);
      if (v == v && v > -std::numeric_limits<double>::infinity()) local = better(local, {v, i});
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  for (const ArgMax& p : partial) best = better(best, p);
  return best;
}

/// out[i] = f(i), evaluated in parallel when requested. Output order is the
/// index order regardless of the schedule.
template <class T, class Fn>
std::vector<T> parallel_map(std::int64_t n, Fn&& f, Backend backend = Backend::Serial, int jobs = 0) {
  std::vector<T> out(static_cast<std::size_t>(n));
  if (backend == Backend::Serial) {
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
    return out;
  }
  const int nt = resolve_jobs(jobs);
  // Exceptions must not escape a parallel region; the lowest failing index wins.
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace psfilter::kernels
