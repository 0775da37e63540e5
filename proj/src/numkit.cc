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

#include "ijunlearn/numkit.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "ijunlearn/error.h"

namespace ijunlearn {

SymMatrix::SymMatrix(Index dim) : dense_(Matrix::Zero(dim, dim)) {
  if (dim < 1) {
    throw Error(ErrorCode::kInvalidArgument, "symmetric matrix needs d >= 1");
  }
}

SymMatrix SymMatrix::Identity(Index dim) {
  SymMatrix out(dim);
  out.dense_.diagonal().setOnes();
  return out;
}

SymMatrix SymMatrix::Diagonal(const Vector& diag) {
  SymMatrix out(diag.size());
  out.dense_.diagonal() = diag;
  return out;
}

SymMatrix SymMatrix::FromLower(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
  }
  SymMatrix out(m.rows());
  out.dense_ = m.selfadjointView<Eigen::Lower>();
  return out;
}

SymMatrix SymMatrix::WeightedGram(const Matrix& rows, const Vector& weights) {
  if (rows.rows() != weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one weight per row required");
  }
  SymMatrix out(rows.cols());
  const Matrix weighted = weights.asDiagonal() * rows;
  out.dense_.noalias() = rows.transpose() * weighted;
  // The product is symmetric only up to rounding; mirror to make it exact.
  out.dense_ = out.dense_.selfadjointView<Eigen::Lower>();
  return out;
}

SymMatrix& SymMatrix::AddDiagonal(double value) {
  dense_.diagonal().array() += value;
  return *this;
}

SymMatrix& SymMatrix::AddScaled(const SymMatrix& other, double scale) {
  if (other.dim() != dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix sizes differ");
  }
  dense_ += scale * other.dense_;
  return *this;
}

SymMatrix& SymMatrix::Scale(double factor) {
  dense_ *= factor;
  return *this;
}

Vector SymMatrix::operator*(const Vector& v) const {
  if (v.size() != dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix-vector size mismatch");
  }
  return dense_ * v;
}

PdFactor Factorize(const SymMatrix& h) {
  ++Counters().factorizations;
  Eigen::LLT<Matrix> llt(h.dense());
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite, "Cholesky breakdown");
  }
  const Vector pivots = llt.matrixLLT().diagonal().array().square();
  for (Index i = 0; i < pivots.size(); ++i) {
    if (!(pivots(i) > kPivotThreshold)) {
      throw Error(ErrorCode::kNotPositiveDefinite,
                  "pivot " + std::to_string(i) + " = " +
                      std::to_string(pivots(i)));
    }
  }
  return PdFactor(std::move(llt));
}

Vector Solve(const PdFactor& f, const Vector& b) {
  if (b.size() != f.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "rhs has " + std::to_string(b.size()) + " entries, factor is " +
                    std::to_string(f.dim()));
  }
  Vector x = f.llt_.solve(b);
  RequireFinite(x, "solve result");
  return x;
}

std::uint64_t UniformBelow(std::mt19937_64& engine, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "empty range");
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = engine();
    if (r >= limit) return r % bound;
  }
}

double UniformUnit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

void SeededShuffle(std::vector<Index>& items, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(UniformBelow(engine, i));
    std::swap(items[i - 1], items[j]);
  }
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vector GaussianSample(double scale, Index d, std::uint64_t seed) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidArgument, "noise scale must be >= 0");
  }
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "d must be positive");
  Vector out = Vector::Zero(d);
  if (scale == 0.0) return out;

  std::mt19937_64 engine(seed);
  // 53-bit uniform in (0, 1].
  auto uniform = [&engine]() {
    return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;
  };
  for (Index i = 0; i < d; i += 2) {
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    out(i) = scale * radius * std::cos(angle);
    if (i + 1 < d) out(i + 1) = scale * radius * std::sin(angle);
  }
  return out;
}

double MinEigenvalue(const SymMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.dense(),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

void RequireFinite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + " is not finite");
  }
}

OpCounters& Counters() {
  thread_local OpCounters counters;
  return counters;
}

void ResetCounters() { Counters() = OpCounters{}; }

}  // namespace ijunlearn
