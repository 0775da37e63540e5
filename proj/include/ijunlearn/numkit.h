// Copyright 2026 The ijunlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IJUNLEARN_NUMKIT_H_
#define IJUNLEARN_NUMKIT_H_

// Dense linear algebra and seeded sampling shared by every other module.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace ijunlearn {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Pivots at or below this value are reported as NotPositiveDefinite.
inline constexpr double kPivotThreshold = 1e-12;

// Symmetric d x d matrix. Only the lower triangle is ever read from inputs;
// the upper triangle is mirrored from it, so symmetry holds exactly.
class SymMatrix {
 public:
  explicit SymMatrix(Index dim);

  static SymMatrix Identity(Index dim);
  static SymMatrix Diagonal(const Vector& diag);
  // Mirrors the lower triangle of `m` (m must be square).
  static SymMatrix FromLower(const Matrix& m);
  // sum_i w_i x_i x_i^T over the rows x_i of `rows`.
  static SymMatrix WeightedGram(const Matrix& rows, const Vector& weights);

  Index dim() const { return dense_.rows(); }
  const Matrix& dense() const { return dense_; }
  double operator()(Index i, Index j) const { return dense_(i, j); }

  SymMatrix& AddDiagonal(double value);
  SymMatrix& AddScaled(const SymMatrix& other, double scale);
  SymMatrix& Scale(double factor);

  Vector operator*(const Vector& v) const;

 private:
  Matrix dense_;
};

// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
class PdFactor {
 public:
  Index dim() const { return llt_.rows(); }
  Matrix lower() const { return llt_.matrixL(); }
  Matrix Reconstruct() const { return llt_.reconstructedMatrix(); }

 private:
  friend PdFactor Factorize(const SymMatrix& h);
  friend Vector Solve(const PdFactor& f, const Vector& b);
  explicit PdFactor(Eigen::LLT<Matrix> llt) : llt_(std::move(llt)) {}

  Eigen::LLT<Matrix> llt_;
};

// Throws NotPositiveDefinite when a pivot is <= kPivotThreshold.
PdFactor Factorize(const SymMatrix& h);

// Solves H x = b for the factored H. Throws DimensionMismatch.
Vector Solve(const PdFactor& f, const Vector& b);

// d i.i.d. N(0, scale^2) draws. Bit-identical across platforms for a seed:
// mt19937_64 feeding a Box-Muller transform.
Vector GaussianSample(double scale, Index d, std::uint64_t seed);

// Uniform integer in [0, bound) by rejection; portable across standard
// libraries, unlike std::uniform_int_distribution.
std::uint64_t UniformBelow(std::mt19937_64& engine, std::uint64_t bound);

// Uniform double in [0, 1) with 53 random bits.
double UniformUnit(std::mt19937_64& engine);

// Fisher-Yates shuffle driven by UniformBelow.
void SeededShuffle(std::vector<Index>& items, std::uint64_t seed);

// SplitMix64 finalizer; derives independent stream seeds from (seed, k).
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t k);

// Smallest eigenvalue of a symmetric matrix.
double MinEigenvalue(const SymMatrix& h);

// Throws NonFinite if `v` holds NaN or Inf; `what` names the quantity.
void RequireFinite(const Vector& v, const char* what);

// Per-thread counters for the expensive O(d^3) / O(n d^2) primitives.
struct OpCounters {
  std::uint64_t factorizations = 0;
  std::uint64_t hessian_assemblies = 0;
};

OpCounters& Counters();
void ResetCounters();

}  // namespace ijunlearn

#endif  // IJUNLEARN_NUMKIT_H_
