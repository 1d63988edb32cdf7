#pragma once

// The graded super-commutative algebra A[E, D_1, ..., D_n]: polynomial
// coefficients, one even generator E (cohomological degree 2) and odd
// generators D_i (degree 1), with the degree -1 Schouten bracket.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "unfold/polynomial.hpp"
#include "unfold/series.hpp"

namespace unfold {

/// Basis key E^eps * D_{i_1} ^ ... ^ D_{i_k}; odd indices as a bitmask over
/// 0-based variable indices, always in increasing order.
struct WedgeKey {
  std::uint32_t eps = 0;
  std::uint64_t odd = 0;

  unsigned wedge_degree() const;
  unsigned degree() const { return 2 * eps + wedge_degree(); }
  std::vector<std::size_t> indices() const;
  static WedgeKey from_indices(const std::vector<std::size_t>& idx, std::uint32_t eps = 0);

  bool operator==(const WedgeKey&) const = default;
};

/// eps first, then wedge degree, then the sorted index lists.
struct WedgeKeyLess {
  bool operator()(const WedgeKey& a, const WedgeKey& b) const;
};

class DegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GElement {
 public:
  using TermMap = std::map<WedgeKey, Polynomial, WedgeKeyLess>;

  GElement() = default;
  explicit GElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  /// Embeds a function (degree 0).
  GElement(const Polynomial& a);  // NOLINT(google-explicit-constructor)

  static GElement term(ContextPtr ctx, WedgeKey key, Polynomial coeff);
  static GElement odd(ContextPtr ctx, std::size_t i);  // D_{i+1}
  static GElement eps(ContextPtr ctx);                 // E
  /// a * D_{i_1} ^ ... ^ D_{i_k} for arbitrary distinct indices; the
  /// permutation sign is folded into the coefficient, repeats give zero.
  static GElement wedge(ContextPtr ctx, const std::vector<std::size_t>& indices, const Polynomial& a);

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Polynomial coefficient(const WedgeKey& k) const;

  bool is_homogeneous() const;
  /// Degree in S_A(T[-1]) (2*eps + wedge degree) of a homogeneous nonzero
  /// element; throws otherwise.
  unsigned degree() const;
  bool is_eps_free() const;
  /// Largest eps power present (0 for zero).
  std::uint32_t max_eps() const;
  /// Part with the given eps power / wedge degree.
  GElement eps_part(std::uint32_t e) const;
  GElement wedge_part(unsigned k) const;
  /// The eps-free component, as a function, if the element is a pure function.
  Polynomial as_function() const;

  GElement operator-() const;
  GElement& operator+=(const GElement& o);
  GElement& operator-=(const GElement& o);
  GElement& operator*=(const Rational& c);
  friend GElement operator+(GElement a, const GElement& b) { return a += b; }
  friend GElement operator-(GElement a, const GElement& b) { return a -= b; }
  friend GElement operator*(GElement a, const Rational& c) { return a *= c; }
  friend GElement operator*(const Rational& c, GElement a) { return a *= c; }
  /// The graded-commutative (wedge) product.
  friend GElement operator*(const GElement& a, const GElement& b);

  bool operator==(const GElement& o) const;

 private:
  void add_term(const WedgeKey& k, const Polynomial& c);

  ContextPtr ctx_;
  TermMap terms_;
};

using PolyVector = GElement;

GElement wedge_mul(const GElement& x, const GElement& y);

/// Schouten bracket of degree -1:
///   [X, Y] = sum_i (d/dD_i from the right X) (d/dx_i Y) - (d/dx_i X) (d/dD_i from the left Y).
/// Satisfies [D_i, a] = da/dx_i, [D_i, D_j] = 0, [E, -] = 0 and
///   [X, Y^Z] = [X,Y]^Z + (-1)^{(|X|-1)|Y|} Y^[X,Z].
GElement schouten_bracket(const GElement& x, const GElement& y);

/// [f, X]: the Koszul differential on eps-free elements.
GElement ad_f(const Polynomial& f, const GElement& x);

/// -[f E, X], the inner differential of the algebroid.
GElement g_differential(const Polynomial& f, const GElement& x);

/// [S, S] for S of wedge degree 2 (eps-free).
GElement bivector_square(const GElement& s);

/// d w + 1/2 [w, w] with d = -[f E, -], truncated at the series order.
/// Every coefficient of w must lie in A E + wedge^2, and w(h^0) must vanish.
HSeries<GElement> mc_residual(const Polynomial& f, const HSeries<GElement>& w);

/// Text form using the shared grammar: "2*x*D(2,3)-E*y".
std::string format(const GElement& x);

}  // namespace unfold
