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

#include "sysid/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>
#include <thread>

#include <fftw3.h>

namespace sysid {

namespace {

// FFTW's planner is not thread safe; execution with new-array functions is.
std::mutex& planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

template <typename T>
struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)))), size(n) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  FftwBuffer(FftwBuffer&& other) noexcept : data(other.data), size(other.size) {
    other.data = nullptr;
    other.size = 0;
  }
  FftwBuffer& operator=(FftwBuffer&&) = delete;

  T* data;
  std::size_t size;
};

// Real-to-complex and complex-to-real plans for one transform length.
class RealFftPlans {
 public:
  explicit RealFftPlans(Index length) : length_(length) {
    FftwBuffer<double> re(static_cast<std::size_t>(length));
    FftwBuffer<fftw_complex> co(static_cast<std::size_t>(spectrum_size()));
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(length), re.data, co.data, FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_1d(static_cast<int>(length), co.data, re.data, FFTW_ESTIMATE);
    if (forward_ == nullptr || inverse_ == nullptr)
      fail(ErrorCode::numerical, "FFT planning failed for length " + std::to_string(length));
  }
  ~RealFftPlans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward_ != nullptr) fftw_destroy_plan(forward_);
    if (inverse_ != nullptr) fftw_destroy_plan(inverse_);
  }
  RealFftPlans(const RealFftPlans&) = delete;
  RealFftPlans& operator=(const RealFftPlans&) = delete;

  Index length() const { return length_; }
  Index spectrum_size() const { return length_ / 2 + 1; }

  void forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(forward_, in, out); }
  // Destroys `in`. Output is unnormalized (scaled by length()).
  void inverse(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(inverse_, in, out); }

 private:
  Index length_;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

// Writes (h_s..h_{2s-1}, 0.., h_1..h_{s-1}) into out[0..length).
template <typename Getter>
void fill_circulant(Index s, Index length, Getter h, double* out) {
  std::fill(out, out + length, 0.0);
  for (Index t = 0; t < s; ++t) out[t] = h(s + t);
  for (Index u = 0; u + 1 < s; ++u) out[length - s + 1 + u] = h(u + 1);
}

}  // namespace

void HankelSymbol::validate() const {
  require(first_row.size() == last_col.size(), ErrorCode::dimension,
          "HankelSymbol: first row and last column lengths differ");
  require(first_row.size() >= 1, ErrorCode::dimension, "HankelSymbol: empty symbol");
  require(first_row.allFinite() && last_col.allFinite(), ErrorCode::invalid_input,
          "HankelSymbol: non-finite entries");
  require(first_row(first_row.size() - 1) == last_col(0), ErrorCode::invalid_input,
          "HankelSymbol: first row and last column disagree on the shared corner");
}

Vector circulant_symbol(const HankelSymbol& h) {
  h.validate();
  const Index s = h.size();
  Vector x(2 * s);
  // h(k) for k = 1..2s-1
  auto get = [&](Index k) { return k <= s ? h.first_row(k - 1) : h.last_col(k - s); };
  fill_circulant(s, 2 * s, get, x.data());
  return x;
}

Vector hankel_matvec(const HankelSymbol& h, const Vector& v) {
  h.validate();
  const Index s = h.size();
  require(v.size() == s, ErrorCode::dimension,
          "hankel_matvec: vector length " + std::to_string(v.size()) + " != " + std::to_string(s));
  const Index n = 2 * s;
  RealFftPlans plans(n);
  const auto nspec = static_cast<std::size_t>(plans.spectrum_size());
  FftwBuffer<double> real(static_cast<std::size_t>(n));
  FftwBuffer<fftw_complex> symbol(nspec), data(nspec);

  const Vector x = circulant_symbol(h);
  std::copy(x.data(), x.data() + n, real.data);
  plans.forward(real.data, symbol.data);

  // [J_s v; 0]
  std::fill(real.data, real.data + n, 0.0);
  for (Index t = 0; t < s; ++t) real.data[t] = v(s - 1 - t);
  plans.forward(real.data, data.data);

  for (std::size_t k = 0; k < nspec; ++k) {
    const std::complex<double> a(symbol.data[k][0], symbol.data[k][1]);
    const std::complex<double> b(data.data[k][0], data.data[k][1]);
    const std::complex<double> c = a * b;
    data.data[k][0] = c.real();
    data.data[k][1] = c.imag();
  }
  plans.inverse(data.data, real.data);
  Vector y(s);
  for (Index t = 0; t < s; ++t) y(t) = real.data[t] / static_cast<double>(n);
  return y;
}

Matrix hankel_dense(const HankelSymbol& h) {
  h.validate();
  const Index s = h.size();
  Matrix out(s, s);
  for (Index a = 0; a < s; ++a)
    for (Index b = 0; b < s; ++b) {
      const Index k = a + b + 1;
      out(a, b) = k <= s ? h.first_row(k - 1) : h.last_col(k - s);
    }
  return out;
}

MarkovSequence::MarkovSequence(Index ell, Index m, std::vector<Matrix> blocks,
                               std::optional<double> dt)
    : ell_(ell), m_(m), blocks_(std::move(blocks)), dt_(dt) {
  require(ell >= 1 && m >= 1, ErrorCode::dimension, "MarkovSequence: ell and m must be >= 1");
  require(!blocks_.empty(), ErrorCode::dimension, "MarkovSequence: need at least h_0");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    require(blocks_[k].rows() == ell && blocks_[k].cols() == m, ErrorCode::dimension,
            "MarkovSequence: block " + std::to_string(k) + " has wrong shape");
    require(blocks_[k].allFinite(), ErrorCode::invalid_input,
            "MarkovSequence: block " + std::to_string(k) + " has non-finite entries");
  }
  if (dt_) require(std::isfinite(*dt_) && *dt_ > 0.0, ErrorCode::invalid_input,
                   "MarkovSequence: dt must be positive");
}

MarkovSequence MarkovSequence::from_h1(Index ell, Index m, std::vector<Matrix> blocks,
                                       std::optional<double> dt) {
  blocks.insert(blocks.begin(), Matrix::Zero(ell, m));
  MarkovSequence out(ell, m, std::move(blocks), dt);
  out.has_feedthrough_ = false;
  return out;
}

Index fast_fft_length(Index min_length) {
  Index n = std::max<Index>(min_length, 1);
  for (;; ++n) {
    Index r = n;
    for (Index p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return n;
  }
}

struct BlockHankelOperator::Impl {
  std::shared_ptr<const RealFftPlans> plans;
  // spectra[i * m + j]: spectrum of the circulant generator of H(I_i, J_j)
  std::vector<std::vector<std::complex<double>>> spectra;
  unsigned threads = 1;
};

BlockHankelOperator::BlockHankelOperator(const MarkovSequence& markov, Index s,
                                         HankelOperatorOptions options)
    : s_(s), ell_(markov.ell()), m_(markov.m()), impl_(std::make_unique<Impl>()) {
  require(s >= 1, ErrorCode::config, "BlockHankelOperator: s must be >= 1");
  require(2 * s <= markov.size(), ErrorCode::dimension,
          "BlockHankelOperator: s = " + std::to_string(s) + " needs blocks h_0..h_" +
              std::to_string(2 * s - 1) + " but only " + std::to_string(markov.size()) +
              " are available");
  const Index length =
      options.fft_length == FftLength::exact ? 2 * s : fast_fft_length(2 * s - 1);
  impl_->plans = std::make_shared<RealFftPlans>(length);
  impl_->threads = std::max(1u, options.threads);

  const Index nspec = impl_->plans->spectrum_size();
  FftwBuffer<double> real(static_cast<std::size_t>(length));
  FftwBuffer<fftw_complex> spec(static_cast<std::size_t>(nspec));
  impl_->spectra.resize(static_cast<std::size_t>(ell_ * m_));
  for (Index i = 0; i < ell_; ++i)
    for (Index j = 0; j < m_; ++j) {
      fill_circulant(s, length, [&](Index k) { return markov[k](i, j); }, real.data);
      impl_->plans->forward(real.data, spec.data);
      auto& dst = impl_->spectra[static_cast<std::size_t>(i * m_ + j)];
      dst.resize(static_cast<std::size_t>(nspec));
      for (Index k = 0; k < nspec; ++k) dst[static_cast<std::size_t>(k)] = {spec.data[k][0], spec.data[k][1]};
    }
}

BlockHankelOperator::~BlockHankelOperator() = default;
BlockHankelOperator::BlockHankelOperator(BlockHankelOperator&&) noexcept = default;
BlockHankelOperator& BlockHankelOperator::operator=(BlockHankelOperator&&) noexcept = default;

BlockHankelOperator::BlockHankelOperator(const BlockHankelOperator& other)
    : s_(other.s_), ell_(other.ell_), m_(other.m_),
      impl_(std::make_unique<Impl>(*other.impl_)) {}

BlockHankelOperator& BlockHankelOperator::operator=(const BlockHankelOperator& other) {
  if (this != &other) {
    s_ = other.s_;
    ell_ = other.ell_;
    m_ = other.m_;
    impl_ = std::make_unique<Impl>(*other.impl_);
  }
  return *this;
}

Index BlockHankelOperator::fft_length() const { return impl_->plans->length(); }

namespace {

// y = H x for the block Hankel operator, or its transpose: `in_stride`
// interleaved input channels, `out_stride` output channels, spectrum for
// (out, in) channel pair looked up through `spectrum_at`.
template <typename SpectrumAt>
Matrix apply_block_hankel(const RealFftPlans& plans, Index s, Index in_stride, Index out_stride,
                          const Matrix& x, unsigned threads, SpectrumAt spectrum_at) {
  const Index length = plans.length();
  const Index nspec = plans.spectrum_size();
  const Index ncols = x.cols();
  Matrix y(s * out_stride, ncols);
  const double scale = 1.0 / static_cast<double>(length);

  auto work = [&](Index col_begin, Index col_end) {
    FftwBuffer<double> real(static_cast<std::size_t>(length));
    FftwBuffer<fftw_complex> acc(static_cast<std::size_t>(nspec));
    std::vector<FftwBuffer<fftw_complex>> in_spec;
    in_spec.reserve(static_cast<std::size_t>(in_stride));
    for (Index j = 0; j < in_stride; ++j) in_spec.emplace_back(static_cast<std::size_t>(nspec));

    for (Index c = col_begin; c < col_end; ++c) {
      for (Index j = 0; j < in_stride; ++j) {
        std::fill(real.data, real.data + length, 0.0);
        // reversed channel j: J_s x(j::in_stride)
        for (Index t = 0; t < s; ++t) real.data[t] = x((s - 1 - t) * in_stride + j, c);
        plans.forward(real.data, in_spec[static_cast<std::size_t>(j)].data);
      }
      for (Index i = 0; i < out_stride; ++i) {
        for (Index k = 0; k < nspec; ++k) acc.data[k][0] = acc.data[k][1] = 0.0;
        for (Index j = 0; j < in_stride; ++j) {
          const std::complex<double>* sym = spectrum_at(i, j);
          const fftw_complex* v = in_spec[static_cast<std::size_t>(j)].data;
          for (Index k = 0; k < nspec; ++k) {
            const double ar = sym[k].real(), ai = sym[k].imag();
            acc.data[k][0] += ar * v[k][0] - ai * v[k][1];
            acc.data[k][1] += ar * v[k][1] + ai * v[k][0];
          }
        }
        plans.inverse(acc.data, real.data);
        for (Index t = 0; t < s; ++t) y(t * out_stride + i, c) = real.data[t] * scale;
      }
    }
  };

  const Index nthreads = std::min<Index>(static_cast<Index>(threads), ncols);
  if (nthreads <= 1) {
    work(0, ncols);
    return y;
  }
  std::vector<std::thread> pool;
  const Index chunk = (ncols + nthreads - 1) / nthreads;
  for (Index t = 0; t < nthreads; ++t) {
    const Index b = t * chunk, e = std::min(ncols, b + chunk);
    if (b < e) pool.emplace_back(work, b, e);
  }
  for (auto& th : pool) th.join();
  return y;
}

}  // namespace

Matrix BlockHankelOperator::matmat(const Matrix& x) const {
  require(x.rows() == cols(), ErrorCode::dimension,
          "BlockHankelOperator::matmat: input has " + std::to_string(x.rows()) +
              " rows, expected " + std::to_string(cols()));
  const auto& spectra = impl_->spectra;
  const Index m = m_;
  return apply_block_hankel(*impl_->plans, s_, m_, ell_, x, impl_->threads,
                            [&](Index i, Index j) { return spectra[static_cast<std::size_t>(i * m + j)].data(); });
}

Matrix BlockHankelOperator::rmatmat(const Matrix& y) const {
  require(y.rows() == rows(), ErrorCode::dimension,
          "BlockHankelOperator::rmatmat: input has " + std::to_string(y.rows()) +
              " rows, expected " + std::to_string(rows()));
  const auto& spectra = impl_->spectra;
  const Index m = m_;
  // H^T is block Hankel in h_k^T, whose (j, i) symbol is the (i, j) symbol of H.
  return apply_block_hankel(*impl_->plans, s_, ell_, m_, y, impl_->threads,
                            [&](Index j, Index i) { return spectra[static_cast<std::size_t>(i * m + j)].data(); });
}

Matrix dense_assembly(const MarkovSequence& markov, Index s, std::optional<Index> max_dim) {
  require(s >= 1, ErrorCode::config, "dense_assembly: s must be >= 1");
  require(2 * s <= markov.size(), ErrorCode::dimension,
          "dense_assembly: not enough Markov blocks for s = " + std::to_string(s));
  const Index ell = markov.ell(), m = markov.m();
  if (max_dim) {
    require(s * std::max(ell, m) <= *max_dim, ErrorCode::size_cap,
            "dense_assembly: s * max(ell, m) = " + std::to_string(s * std::max(ell, m)) +
                " exceeds the dense cap " + std::to_string(*max_dim));
  }
  Matrix h(s * ell, s * m);
  for (Index a = 0; a < s; ++a)
    for (Index b = 0; b < s; ++b) h.block(a * ell, b * m, ell, m) = markov[a + b + 1];
  return h;
}

}  // namespace sysid
