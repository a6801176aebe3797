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

#ifndef SAGFN_KERNELS_H_
#define SAGFN_KERNELS_H_

#include <cstddef>

namespace sagfn::kernels {

// Dense double-precision primitives with a scalar and an AVX2+FMA
// implementation. The AVX2 variants accumulate in four lanes, so sums may
// differ from the scalar ones in the last bits.
struct KernelTable {
  const char* name;
  double (*sum)(const double* x, std::size_t n);
  double (*max)(const double* x, std::size_t n);  // -inf for n == 0
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*l1_distance)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = M x for a row-major rows x cols matrix.
  void (*matvec)(const double* m, const double* x, double* y, std::size_t rows,
                 std::size_t cols);
};

enum class Backend { kScalar, kAvx2 };

bool avx2_supported();
// Throws std::runtime_error for kAvx2 on a CPU without AVX2 and FMA.
const KernelTable& table(Backend backend);
// AVX2 when the CPU has it, unless SAGFN_KERNELS=scalar is set.
const KernelTable& active();

inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double max(const double* x, std::size_t n) { return active().max(x, n); }
inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline double l1_distance(const double* x, const double* y, std::size_t n) {
  return active().l1_distance(x, y, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline void matvec(const double* m, const double* x, double* y,
                   std::size_t rows, std::size_t cols) {
  active().matvec(m, x, y, rows, cols);
}
// Stable log(sum(exp(x))); -inf for n == 0.
double logsumexp(const double* x, std::size_t n);

namespace detail {
extern const KernelTable kScalarTable;
extern const KernelTable kAvx2Table;
}  // namespace detail

}  // namespace sagfn::kernels

#endif  // SAGFN_KERNELS_H_
