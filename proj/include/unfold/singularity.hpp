#pragma once

// Jacobian ideal, Milnor number, the standard-monomial complement W and the
// monicizing substitution of a hypersurface f in A = Q[x_1..x_n].

#include <optional>
#include <string>
#include <vector>

#include "unfold/groebner.hpp"
#include "unfold/polynomial.hpp"

namespace unfold {

class NotIsolated : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct JacobianData {
  std::vector<Polynomial> partials;
  GroebnerBasis gb;
  MaybeFinite milnor;
  /// Standard monomials of gb; a basis of W when milnor is finite.
  std::vector<Monomial> w_basis;
  /// Set when f has a nonzero constant term.
  std::optional<std::string> warning;
};

JacobianData jacobian(const Polynomial& f, const GroebnerOptions& opts = {});
MaybeFinite milnor_number(const Polynomial& f, const GroebnerOptions& opts = {});
bool is_isolated(const Polynomial& f, const GroebnerOptions& opts = {});
/// Basis of W; throws NotIsolated when f is not isolated.
std::vector<Monomial> qc_subspace(const Polynomial& f, const GroebnerOptions& opts = {});

struct Monicization {
  Substitution sigma;
  /// N_i for i < n (0-based); empty for the identity.
  std::vector<std::uint32_t> exponents;
  Polynomial image;
};

/// True when the x_n-leading coefficient of f is a nonzero constant.
bool is_monic_in_last(const Polynomial& f);

/// Finds x_i -> x_i + x_n^{N_i} (i < n), x_n -> x_n making f monic in x_n.
Monicization monicize(const Polynomial& f);

/// Named singularities A_k, D_k, E_6, E_7, E_8 in variables x, y, z.
struct CatalogEntry {
  std::string name;
  std::string equation;
};
std::vector<CatalogEntry> ade_catalog();

}  // namespace unfold
