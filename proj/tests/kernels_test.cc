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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "sagfn/kernels.h"

namespace sagfn::kernels {
namespace {

constexpr double kRelTol = 1e-12;

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d(0.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

void expect_close(double a, double b, double scale) {
  EXPECT_LE(std::abs(a - b), kRelTol * std::max(1.0, scale)) << a << " vs " << b;
}

TEST(Kernels, ScalarMatchesDefinitions) {
  const KernelTable& s = table(Backend::kScalar);
  const std::vector<double> x = {1, -2, 3, 0.5, -7};
  const std::vector<double> y = {0, 1, 1, 0.5, 1};
  EXPECT_DOUBLE_EQ(s.sum(x.data(), 5), -4.5);
  EXPECT_DOUBLE_EQ(s.max(x.data(), 5), 3);
  EXPECT_DOUBLE_EQ(s.dot(x.data(), y.data(), 5), -2 + 3 + 0.25 - 7);
  EXPECT_DOUBLE_EQ(s.l1_distance(x.data(), y.data(), 5), 1 + 3 + 2 + 0 + 8);
  EXPECT_EQ(s.max(x.data(), 0), -std::numeric_limits<double>::infinity());
}

TEST(Kernels, Avx2MatchesScalar) {
  if (!avx2_supported()) GTEST_SKIP() << "no AVX2 on this CPU";
  const KernelTable& s = table(Backend::kScalar);
  const KernelTable& v = table(Backend::kAvx2);
  std::mt19937_64 rng(9);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto x = random_vector(rng, n);
    const auto y = random_vector(rng, n);
    double mag = 0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i]) + std::abs(y[i]) + std::abs(x[i] * y[i]);
    expect_close(v.sum(x.data(), n), s.sum(x.data(), n), mag);
    EXPECT_EQ(v.max(x.data(), n), s.max(x.data(), n));
    expect_close(v.dot(x.data(), y.data(), n), s.dot(x.data(), y.data(), n), mag);
    expect_close(v.l1_distance(x.data(), y.data(), n),
                 s.l1_distance(x.data(), y.data(), n), mag);
    auto ys = y, yv = y;
    s.axpy(0.7, x.data(), ys.data(), n);
    v.axpy(0.7, x.data(), yv.data(), n);
    for (std::size_t i = 0; i < n; ++i) expect_close(yv[i], ys[i], mag);
  }
  for (std::size_t rows : {1u, 5u, 17u}) {
    for (std::size_t cols : {1u, 4u, 9u, 64u}) {
      const auto m = random_vector(rng, rows * cols);
      const auto x = random_vector(rng, cols);
      std::vector<double> a(rows), b(rows);
      s.matvec(m.data(), x.data(), a.data(), rows, cols);
      v.matvec(m.data(), x.data(), b.data(), rows, cols);
      for (std::size_t r = 0; r < rows; ++r) expect_close(a[r], b[r], 100.0 * cols);
    }
  }
}

TEST(Kernels, LogSumExpIsStable) {
  const std::vector<double> x = {1000, 1000};
  EXPECT_NEAR(logsumexp(x.data(), 2), 1000 + std::log(2.0), 1e-12);
  const std::vector<double> y = {-1e300, std::log(3.0)};
  EXPECT_NEAR(logsumexp(y.data(), 2), std::log(3.0), 1e-12);
  EXPECT_EQ(logsumexp(x.data(), 0), -std::numeric_limits<double>::infinity());
}

TEST(Kernels, ActiveTableIsOneOfTheBackends) {
  const std::string name = active().name;
  EXPECT_TRUE(name == "scalar" || name == "avx2");
  if (!avx2_supported()) {
    EXPECT_THROW(table(Backend::kAvx2), std::runtime_error);
  }
}

}  // namespace
}  // namespace sagfn::kernels
