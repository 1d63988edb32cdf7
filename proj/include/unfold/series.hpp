#pragma once

// Truncated power series in the formal parameter h, i.e. elements of
// V[h]/(h^{N+1}).

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace unfold {

inline constexpr std::size_t kDefaultTruncation = 8;

template <class V>
class HSeries {
 public:
  HSeries() : HSeries(kDefaultTruncation) {}
  explicit HSeries(std::size_t order, V zero = V{}) : coeffs_(order + 1, zero) {
    if (order == 0) throw std::invalid_argument("truncation order must be positive");
  }
  HSeries(std::size_t order, std::vector<V> coeffs, V zero = V{}) : HSeries(order, std::move(zero)) {
    // Terms above the truncation order are discarded.
    for (std::size_t k = 0; k < coeffs.size() && k <= order; ++k) coeffs_[k] = std::move(coeffs[k]);
  }

  /// Truncation order N: coefficients of h^0..h^N are kept.
  std::size_t order() const { return coeffs_.size() - 1; }
  const V& operator[](std::size_t k) const { return coeffs_.at(k); }
  V& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<V>& coeffs() const { return coeffs_; }

  /// Highest k with a nonzero coefficient, or -1.
  long h_degree() const {
    for (std::size_t k = coeffs_.size(); k-- > 0;)
      if (!coeffs_[k].is_zero()) return static_cast<long>(k);
    return -1;
  }
  bool is_zero() const { return h_degree() < 0; }

  HSeries& operator+=(const HSeries& o) {
    check(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  HSeries& operator-=(const HSeries& o) {
    check(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  friend HSeries operator+(HSeries a, const HSeries& b) { return a += b; }
  friend HSeries operator-(HSeries a, const HSeries& b) { return a -= b; }

  /// Truncated Cauchy product with an arbitrary bilinear operation.
  template <class Op>
  HSeries convolve(const HSeries& o, Op&& op) const {
    check(o);
    HSeries out(order(), zero_like());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < coeffs_.size(); ++j) {
        if (o.coeffs_[j].is_zero()) continue;
        out.coeffs_[i + j] += op(coeffs_[i], o.coeffs_[j]);
      }
    }
    return out;
  }

  friend HSeries operator*(const HSeries& a, const HSeries& b) {
    return a.convolve(b, [](const V& x, const V& y) { return x * y; });
  }

  /// Applies a linear map coefficientwise.
  template <class F>
  auto map(F&& fn) const {
    using W = decltype(fn(coeffs_[0]));
    std::vector<W> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(fn(c));
    return HSeries<W>(order(), std::move(out), W{});
  }

  bool operator==(const HSeries& o) const { return coeffs_ == o.coeffs_; }

 private:
  void check(const HSeries& o) const {
    if (o.order() != order()) throw std::invalid_argument("series truncation orders differ");
  }
  V zero_like() const { return coeffs_[0] - coeffs_[0]; }

  std::vector<V> coeffs_;
};

}  // namespace unfold
