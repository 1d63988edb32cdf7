#pragma once

// Hochschild cochains of A = Q[x_1..x_n] realized as polydifferential
// operators, with cup product, braces, the Gerstenhaber bracket, the
// differential [mu, -] and the cochain-level HKR map.

#include <map>
#include <string>
#include <vector>

#include "unfold/polynomial.hpp"
#include "unfold/polyvector.hpp"

namespace unfold {

/// (b_1..b_k) -> sum coeff * prod_j d^{alpha_j} b_j, with plain iterated
/// partials d^alpha = d_1^{alpha_1} ... d_n^{alpha_n}.
class PolyDiffOperator {
 public:
  using Key = std::vector<Monomial>;  // alpha_1 .. alpha_k

  PolyDiffOperator() = default;
  PolyDiffOperator(ContextPtr ctx, std::size_t arity) : ctx_(std::move(ctx)), arity_(arity) {}

  /// The 0-cochain a.
  static PolyDiffOperator function(const Polynomial& a);
  static PolyDiffOperator identity(const ContextPtr& ctx);
  /// mu(a, b) = a b.
  static PolyDiffOperator multiplication(const ContextPtr& ctx);
  /// The 1-cochain d^alpha with coefficient c.
  static PolyDiffOperator derivative(const Polynomial& c, const Monomial& alpha);

  const ContextPtr& context() const { return ctx_; }
  std::size_t arity() const { return arity_; }
  const std::map<Key, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest derivative order used in any slot.
  std::uint64_t max_order() const;

  void add_term(const Key& alphas, const Polynomial& coeff);

  PolyDiffOperator operator-() const;
  PolyDiffOperator& operator+=(const PolyDiffOperator& o);
  PolyDiffOperator& operator-=(const PolyDiffOperator& o);
  PolyDiffOperator& operator*=(const Rational& c);
  friend PolyDiffOperator operator+(PolyDiffOperator a, const PolyDiffOperator& b) { return a += b; }
  friend PolyDiffOperator operator-(PolyDiffOperator a, const PolyDiffOperator& b) { return a -= b; }
  friend PolyDiffOperator operator*(PolyDiffOperator a, const Rational& c) { return a *= c; }

  bool operator==(const PolyDiffOperator& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }

 private:
  ContextPtr ctx_;
  std::size_t arity_ = 0;
  std::map<Key, Polynomial> terms_;
};

Polynomial apply(const PolyDiffOperator& p, const std::vector<Polynomial>& args);

/// (P u Q)(b_1..b_{p+q}) = P(b_1..b_p) Q(b_{p+1}..b_{p+q}).
PolyDiffOperator cup(const PolyDiffOperator& p, const PolyDiffOperator& q);

/// P{Q_1, ..., Q_l}: order-preserving insertions into the slots of P with
/// sign (-1)^{sum_j (q_j - 1) i_j}, i_j the number of inputs preceding Q_j.
/// Throws when l > arity(P).
PolyDiffOperator brace(const PolyDiffOperator& p, const std::vector<PolyDiffOperator>& qs);

/// [P, Q] = P{Q} - (-1)^{(p-1)(q-1)} Q{P}; a brace into a 0-cochain is zero.
PolyDiffOperator gerstenhaber_bracket(const PolyDiffOperator& p, const PolyDiffOperator& q);

/// d P = [mu, P]. Equals (-1)^{p-1} times the classical alternating sum
/// a_0 P(a_1..) - P(a_0 a_1, ..) + ... + (-1)^{p+1} P(..a_{p-1}) a_p.
PolyDiffOperator hochschild_differential(const PolyDiffOperator& p);

/// Classical alternating-sum coboundary evaluated on explicit arguments.
Polynomial classical_coboundary(const PolyDiffOperator& p, const std::vector<Polynomial>& args);

/// a D_{i_1}^...^D_{i_k} -> (a/k!) sum_sigma sgn(sigma) prod_j d_{i_sigma(j)} b_j.
PolyDiffOperator hkr(const PolyVector& x);

/// The operator d^alpha applied to the output of P (Leibniz expansion).
PolyDiffOperator differentiate_output(const PolyDiffOperator& p, const Monomial& alpha);

std::string format(const PolyDiffOperator& p);

}  // namespace unfold
