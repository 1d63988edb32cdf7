#pragma once

// Buchberger's algorithm for ideals of A = Q[x_1..x_n] and for submodules of
// free modules A^r, with optional tracking of how each basis element is built
// from the input generators.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "unfold/polynomial.hpp"

namespace unfold {

enum class TermOrder { grevlex, lex };

struct MonomialOrder {
  TermOrder kind = TermOrder::grevlex;

  int compare(const Monomial& a, const Monomial& b) const {
    return kind == TermOrder::grevlex ? grevlex_compare(a, b) : lex_compare(a, b);
  }
  bool operator==(const MonomialOrder&) const = default;
};

struct GroebnerOptions {
  /// Abort with GroebnerAbort once a basis element exceeds this total
  /// degree. Zero disables the guard.
  std::uint64_t max_degree = 0;
};

class GroebnerAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite or infinite dimension / cardinality; nullopt means infinite.
using MaybeFinite = std::optional<std::size_t>;

class GroebnerBasis {
 public:
  const ContextPtr& context() const { return ctx_; }
  const MonomialOrder& order() const { return order_; }
  /// Reduced basis, monic, sorted by increasing leading monomial.
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool reduced() const { return true; }
  std::vector<Monomial> leading_monomials() const;
  /// generators()[i] == sum_j representation()[i][j] * input()[j], when
  /// tracked (empty otherwise).
  const std::vector<std::vector<Polynomial>>& representation() const { return rep_; }
  const std::vector<Polynomial>& input() const { return input_; }

 private:
  friend GroebnerBasis buchberger(const std::vector<Polynomial>&, const MonomialOrder&, const GroebnerOptions&,
                                  bool);
  ContextPtr ctx_;
  MonomialOrder order_;
  std::vector<Polynomial> gens_;
  std::vector<Polynomial> input_;
  std::vector<std::vector<Polynomial>> rep_;
};

/// input == sum_i cofactors[i] * basis[i] + remainder, checked on construction.
struct ReductionTrace {
  Polynomial remainder;
  std::vector<Polynomial> cofactors;
};

/// Reduced Groebner basis. Throws std::invalid_argument when every generator
/// is zero. With track_representation the basis records cofactors over the
/// input.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order = {},
                         const GroebnerOptions& opts = {}, bool track_representation = false);

/// Full reduction: the remainder has no term divisible by a leading term.
ReductionTrace normal_form(const Polynomial& p, const GroebnerBasis& gb);

/// Cofactors c with p == sum c_i gens_i, or nullopt when p is not in the ideal.
std::optional<std::vector<Polynomial>> ideal_membership(const Polynomial& p, const std::vector<Polynomial>& gens,
                                                        const MonomialOrder& order = {},
                                                        const GroebnerOptions& opts = {});

/// Monomials outside the leading-term ideal in increasing grevlex order, or
/// nullopt when there are infinitely many.
std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis& gb);
MaybeFinite quotient_dimension(const GroebnerBasis& gb);

// ---------------------------------------------------------------------------
// Free modules A^r with position-over-term order; lower component index is
// the higher position.

struct ModuleElement {
  std::vector<Polynomial> components;

  ModuleElement() = default;
  explicit ModuleElement(std::vector<Polynomial> c) : components(std::move(c)) {}
  static ModuleElement zero(const ContextPtr& ctx, std::size_t rank);

  std::size_t rank() const { return components.size(); }
  bool is_zero() const;
  bool operator==(const ModuleElement& o) const { return components == o.components; }
};

class ModuleGroebnerBasis {
 public:
  const ContextPtr& context() const { return ctx_; }
  const MonomialOrder& order() const { return order_; }
  std::size_t rank() const { return rank_; }
  const std::vector<ModuleElement>& generators() const { return gens_; }
  const std::vector<std::vector<Polynomial>>& representation() const { return rep_; }
  const std::vector<ModuleElement>& input() const { return input_; }

 private:
  friend ModuleGroebnerBasis module_buchberger(const ContextPtr&, std::size_t, const std::vector<ModuleElement>&,
                                               const MonomialOrder&, const GroebnerOptions&, bool);
  ContextPtr ctx_;
  MonomialOrder order_;
  std::size_t rank_ = 0;
  std::vector<ModuleElement> gens_;
  std::vector<ModuleElement> input_;
  std::vector<std::vector<Polynomial>> rep_;
};

struct ModuleReductionTrace {
  ModuleElement remainder;
  std::vector<Polynomial> cofactors;
};

/// Reduced module basis of the submodule generated by gens (all of rank r).
/// An all-zero generator list yields the empty basis.
ModuleGroebnerBasis module_buchberger(const ContextPtr& ctx, std::size_t rank, const std::vector<ModuleElement>& gens,
                                      const MonomialOrder& order = {}, const GroebnerOptions& opts = {},
                                      bool track_representation = false);

ModuleReductionTrace module_normal_form(const ModuleElement& v, const ModuleGroebnerBasis& gb);

/// Polynomial matrix stored row-major, rows x cols.
struct PolyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Polynomial> entries;

  PolyMatrix() = default;
  PolyMatrix(const ContextPtr& ctx, std::size_t r, std::size_t c);
  Polynomial& at(std::size_t i, std::size_t j) { return entries.at(i * cols + j); }
  const Polynomial& at(std::size_t i, std::size_t j) const { return entries.at(i * cols + j); }
  ModuleElement column(std::size_t j) const;
  ModuleElement apply(const std::vector<Polynomial>& x) const;
};

/// x with M * x == b exactly, or nullopt when b is outside the column module
/// of M. The result is verified by back-multiplication.
std::optional<std::vector<Polynomial>> module_preimage(const ContextPtr& ctx, const PolyMatrix& m,
                                                       const ModuleElement& b, const MonomialOrder& order = {},
                                                       const GroebnerOptions& opts = {});

}  // namespace unfold
