#pragma once

// Exact multivariate polynomials over Q.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace unfold {

using Rational = mpq_class;

std::string to_string(const Rational& q);

class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered list of ring variables x_1..x_n. The names "h", "E" and "D" are
/// reserved by the expression grammar.
class RingContext {
 public:
  explicit RingContext(std::vector<std::string> names);

  static std::shared_ptr<const RingContext> make(std::vector<std::string> names);

  std::size_t n() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  /// Index of a variable name, or nullopt.
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const RingContext& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const RingContext>;

bool same_context(const ContextPtr& a, const ContextPtr& b);

/// Exponent vector.
struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exps(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  std::size_t size() const { return exps.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps[i]; }

  std::uint64_t degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial&) const = default;
  // Plain lexicographic comparison of exponent vectors (storage order only).
  auto operator<=>(const Monomial&) const = default;
};

/// Graded reverse lexicographic comparison with x_1 < x_2 < ... < x_n.
/// Returns <0, 0, >0.
int grevlex_compare(const Monomial& a, const Monomial& b);
/// Lexicographic comparison with x_1 < x_2 < ... < x_n.
int lex_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Rational coeff;
  bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
};

class Polynomial {
 public:
  /// The zero polynomial, not yet bound to a context. It adopts the context
  /// of whatever it is combined with.
  Polynomial() = default;
  explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Polynomial constant(ContextPtr ctx, const Rational& c);
  static Polynomial variable(ContextPtr ctx, std::size_t i);
  static Polynomial monomial(ContextPtr ctx, Monomial m, const Rational& c = 1);
  /// Builds a canonical polynomial from arbitrary (possibly repeated, zero)
  /// terms.
  static Polynomial from_terms(ContextPtr ctx, std::vector<Term> terms);

  const ContextPtr& context() const { return ctx_; }
  std::size_t nvars() const { return ctx_ ? ctx_->n() : 0; }

  /// Terms in descending grevlex order, no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the degree-zero monomial.
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  /// Total degree; -1 for zero.
  long total_degree() const;
  /// Degree in variable i; -1 for zero.
  long degree_in(std::size_t i) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  /// Multiplies by c * m.
  Polynomial mul_term(const Monomial& m, const Rational& c) const;

  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

 private:
  ContextPtr ctx_;
  std::vector<Term> terms_;
};

/// Bind an unbound zero to ctx; check otherwise.
ContextPtr merge_context(const ContextPtr& a, const ContextPtr& b);

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);

/// d f / d x_i with a 0-based index.
Polynomial partial_derivative(const Polynomial& f, std::size_t i);

/// The quotient q with q * b == a, or nullopt if b does not divide a.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);

/// Ring endomorphism x_i -> images[i].
class Substitution {
 public:
  explicit Substitution(std::vector<Polynomial> images);
  static Substitution identity(const ContextPtr& ctx);

  const std::vector<Polynomial>& images() const { return images_; }
  std::size_t arity() const { return images_.size(); }
  bool is_identity() const;

  /// First this, then next: (this.then(next))(f) == next(this(f)).
  Substitution then(const Substitution& next) const;

 private:
  std::vector<Polynomial> images_;
};

Polynomial substitute(const Polynomial& f, const Substitution& sigma);

/// Canonical text form, e.g. "3/2*x*y^2-1". Terms in descending grevlex order.
std::string format(const Polynomial& p);
std::string format_monomial(const ContextPtr& ctx, const Monomial& m);

}  // namespace unfold
