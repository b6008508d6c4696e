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

#include <memory>
#include <optional>
#include <vector>

#include "sysid/linear_operator.hpp"
#include "sysid/numeric.hpp"

namespace sysid {

/// Scalar Hankel matrix given by its first row and last column.
/// first_row = (h_1 .. h_s), last_col = (h_s .. h_{2s-1}); they share h_s.
struct HankelSymbol {
  Vector first_row;
  Vector last_col;

  Index size() const { return first_row.size(); }
  void validate() const;
};

/// 2s-periodic circulant generator (h_s..h_{2s-1}, 0, h_1..h_{s-1}).
Vector circulant_symbol(const HankelSymbol& h);

/// H_s * v through a 2s-point circulant embedding of H_s J_s.
Vector hankel_matvec(const HankelSymbol& h, const Vector& v);

/// Dense H_s, for testing.
Matrix hankel_dense(const HankelSymbol& h);

/// Impulse-response blocks h_0 = D, h_k = C A^{k-1} B.
class MarkovSequence {
 public:
  MarkovSequence() = default;
  MarkovSequence(Index ell, Index m, std::vector<Matrix> blocks,
                 std::optional<double> dt = std::nullopt);

  /// Sequence whose data starts at h_1. h_0 is stored as zero and
  /// has_feedthrough() is false.
  static MarkovSequence from_h1(Index ell, Index m, std::vector<Matrix> blocks,
                                std::optional<double> dt = std::nullopt);

  Index ell() const { return ell_; }
  Index m() const { return m_; }
  /// Number of stored blocks, h_0 included.
  Index size() const { return static_cast<Index>(blocks_.size()); }
  /// Largest s with h_{2s-1} available.
  Index max_depth() const { return size() / 2; }

  const Matrix& operator[](Index k) const { return blocks_[static_cast<std::size_t>(k)]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  std::optional<double> dt() const { return dt_; }
  bool has_feedthrough() const { return has_feedthrough_; }

 private:
  Index ell_ = 0;
  Index m_ = 0;
  std::vector<Matrix> blocks_;
  std::optional<double> dt_;
  bool has_feedthrough_ = true;
};

enum class FftLength {
  exact,   // 2s, the plain circulant embedding
  padded,  // smallest 2^a 3^b 5^c 7^d >= 2s - 1
};

Index fast_fft_length(Index min_length);

struct HankelOperatorOptions {
  FftLength fft_length = FftLength::exact;
  /// Workers for the column loop of matmat/rmatmat.
  unsigned threads = 1;
};

/// The s*ell x s*m block Hankel matrix of a Markov sequence, applied through
/// FFTs without ever being formed.
///
/// Every scalar sub-Hankel H(I_i, J_j) (rows i::ell, columns j::m) has its
/// circulant spectrum computed once at construction. A product then costs
/// m + ell real FFTs per column plus ell*m spectral multiply-adds. The
/// transpose uses the same spectra with the roles of i and j exchanged.
class BlockHankelOperator final : public LinearOperator {
 public:
  BlockHankelOperator(const MarkovSequence& markov, Index s,
                      HankelOperatorOptions options = {});
  ~BlockHankelOperator() override;
  BlockHankelOperator(const BlockHankelOperator&);
  BlockHankelOperator& operator=(const BlockHankelOperator&);
  BlockHankelOperator(BlockHankelOperator&&) noexcept;
  BlockHankelOperator& operator=(BlockHankelOperator&&) noexcept;

  Index rows() const override { return s_ * ell_; }
  Index cols() const override { return s_ * m_; }
  Index depth() const { return s_; }
  Index ell() const { return ell_; }
  Index m() const { return m_; }
  Index fft_length() const;

  Matrix matmat(const Matrix& x) const override;
  Matrix rmatmat(const Matrix& y) const override;

 private:
  struct Impl;
  Index s_ = 0;
  Index ell_ = 0;
  Index m_ = 0;
  std::unique_ptr<Impl> impl_;
};

inline constexpr Index kDefaultDenseAssemblyDim = 4096;

/// Explicit H_s. Refuses when s * max(ell, m) exceeds max_dim; pass
/// std::nullopt to lift the cap.
Matrix dense_assembly(const MarkovSequence& markov, Index s,
                      std::optional<Index> max_dim = kDefaultDenseAssemblyDim);

}  // namespace sysid
