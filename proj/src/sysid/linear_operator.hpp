// Copyright 2026 The sysid Authors.
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

#include "sysid/numeric.hpp"

namespace sysid {

/// A real M x N operator available only through products with blocks of
/// vectors.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index rows() const = 0;
  virtual Index cols() const = 0;

  /// X -> Op * X for X of shape cols() x k.
  virtual Matrix matmat(const Matrix& x) const = 0;
  /// Y -> Op^T * Y for Y of shape rows() x k.
  virtual Matrix rmatmat(const Matrix& y) const = 0;

  Vector matvec(const Vector& x) const { return matmat(Matrix(x)).col(0); }
  Vector rmatvec(const Vector& y) const { return rmatmat(Matrix(y)).col(0); }
};

/// Wraps an explicit matrix. Holds a reference; the matrix must outlive it.
class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(const Matrix& m) : m_(m) {}

  Index rows() const override { return m_.rows(); }
  Index cols() const override { return m_.cols(); }

  Matrix matmat(const Matrix& x) const override {
    require(x.rows() == m_.cols(), ErrorCode::dimension, "DenseOperator: bad input rows");
    return m_ * x;
  }
  Matrix rmatmat(const Matrix& y) const override {
    require(y.rows() == m_.rows(), ErrorCode::dimension, "DenseOperator: bad input rows");
    return m_.transpose() * y;
  }

 private:
  const Matrix& m_;
};

}  // namespace sysid
