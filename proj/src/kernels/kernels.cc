// Copyright 2026 The sagfn Authors
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

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "sagfn/kernels.h"

namespace sagfn::kernels {

bool avx2_supported() {
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return ok;
}

const KernelTable& table(Backend backend) {
  if (backend == Backend::kScalar) return detail::kScalarTable;
  if (!avx2_supported()) throw std::runtime_error("CPU lacks AVX2/FMA");
  return detail::kAvx2Table;
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("SAGFN_KERNELS");
    if ((env && std::strcmp(env, "scalar") == 0) || !avx2_supported()) {
      return &detail::kScalarTable;
    }
    return &detail::kAvx2Table;
  }();
  return *chosen;
}

double logsumexp(const double* x, std::size_t n) {
  const double m = max(x, n);
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] - m);
  return m + std::log(s);
}

}  // namespace sagfn::kernels
