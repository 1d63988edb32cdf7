#pragma once

// Quasiclassical data and Maurer-Cartan solutions w = p(h) E + S(h) for
// noncommutative unfoldings of an isolated hypersurface singularity f.

#include <optional>
#include <stop_token>
#include <string>
#include <variant>
#include <vector>

#include "unfold/groebner.hpp"
#include "unfold/polynomial.hpp"
#include "unfold/polyvector.hpp"
#include "unfold/series.hpp"

namespace unfold {

class LiftError : public std::invalid_argument {
 public:
  enum class Kind { not_a_cycle, not_isolated, bad_degree };
  LiftError(Kind k, const std::string& what) : std::invalid_argument(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Wedge monomials of degree k in n variables, in WedgeKeyLess order.
std::vector<WedgeKey> wedge_basis(std::size_t n, unsigned k);

/// Matrix of ad_f : wedge^{k+1} -> wedge^k in the wedge_basis coordinates
/// (rows: degree k, columns: degree k+1). Entries are +-d_i f.
PolyMatrix koszul_matrix(const Polynomial& f, unsigned k);

/// T of wedge degree k+1 with [f, T] = Z. Throws LiftError when f is not
/// isolated or Z is not an ad_f-cycle; nullopt only if no preimage exists.
std::optional<PolyVector> koszul_lift(const Polynomial& f, const PolyVector& z, const GroebnerOptions& opts = {});

struct QcNormalForm {
  /// Component of p in span(W).
  Polynomial w_part;
  /// p == w_part + sum_i cofactors[i] * d_i f.
  std::vector<Polynomial> cofactors;
};

QcNormalForm qc_normalize(const Polynomial& f, const Polynomial& p, const GroebnerOptions& opts = {});

struct QuasiClassicalDatum {
  Polynomial p;
  Polynomial p_normal;
  PolyVector s;
  /// A bivector S_2 with [f, S_2] = [p, S]; the second-order extension.
  PolyVector s2;
};

struct QcViolation {
  enum class Kind { not_isolated, bad_degree, not_koszul_cycle, not_poisson, not_extendable };
  Kind kind;
  std::string message;
};

using QcResult = std::variant<QuasiClassicalDatum, std::vector<QcViolation>>;

QcResult qc_validate(const Polynomial& f, const Polynomial& p, const PolyVector& s, const GroebnerOptions& opts = {});

/// Truncated or exact Maurer-Cartan solution. Coefficient k of each series is
/// the h^k part.
struct MCSolution {
  HSeries<Polynomial> p;
  HSeries<PolyVector> s;
  std::optional<HSeries<PolyVector>> t;
  /// True when the series are polynomial in h and solve the equation exactly.
  bool exact = false;
};

struct ObstructionReport {
  enum class Kind { lift_failure, poisson_failure };
  std::size_t order;
  PolyVector obstruction;
  Kind kind;
};

/// Per-order residuals of a candidate solution.
struct ResidualReport {
  std::vector<PolyVector> koszul;   // [f - p, S]
  std::vector<PolyVector> poisson;  // [S, S]
  std::vector<GElement> mc;         // d w + 1/2 [w, w]
  /// mc == -E [f - p, S] + 1/2 [S, S] at every order.
  bool consistent = true;
  /// When a witness is present: S == [f - p, T].
  bool witness_ok = true;

  bool all_zero() const;
};

ResidualReport mc_verify(const Polynomial& f, const MCSolution& sol);

class QuantizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact solution for n = 3: T = T_1 h, p = p_1 h, S = [f - p, T].
MCSolution quantize_n3(const Polynomial& f, const Polynomial& p1, const PolyVector& s1,
                       const GroebnerOptions& opts = {});

struct GeneralOptions {
  std::size_t max_order = kDefaultTruncation;
  /// p_k for k >= 2 (index k); missing entries are zero.
  std::vector<Polynomial> p_higher;
  GroebnerOptions groebner;
};

using QuantizeResult = std::variant<MCSolution, ObstructionReport>;

/// Order-by-order extension: S_k solves [f, S_k] = sum_{i=1}^{k-1} [p_i, S_{k-i}] and
/// sum_{i+j=k} [S_i, S_j] must vanish. Stops early (returning the solution so far
/// truncated at the last complete order) if stop is requested.
QuantizeResult quantize_general(const Polynomial& f, const Polynomial& p1, const PolyVector& s1,
                                const GeneralOptions& opts = {}, std::stop_token stop = {});

/// Builds w = p E + S as a g-valued series.
HSeries<GElement> assemble_w(const MCSolution& sol);

}  // namespace unfold
