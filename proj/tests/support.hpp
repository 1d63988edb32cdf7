#pragma once

// Random generators and independent oracles shared by the test suites.
// Nothing here calls the Groebner engine or the Schouten bracket.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "unfold/hochschild.hpp"
#include "unfold/polynomial.hpp"
#include "unfold/polyvector.hpp"

namespace unfold::testing {

using Rng = std::mt19937_64;

inline ContextPtr xyz() { return RingContext::make({"x", "y", "z"}); }
inline ContextPtr ring(std::size_t n) {
  static const char* names[] = {"x", "y", "z", "w", "u", "v"};
  std::vector<std::string> v(names, names + n);
  return RingContext::make(v);
}

inline Rational small_rational(Rng& rng, int range = 3, bool allow_fractions = true) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, allow_fractions ? 3 : 1);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Monomial random_monomial(Rng& rng, std::size_t n, unsigned max_deg) {
  std::uniform_int_distribution<unsigned> d(0, max_deg);
  unsigned total = d(rng);
  Monomial m(n);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  for (unsigned i = 0; i < total; ++i) m[var(rng)] += 1;
  return m;
}

inline Polynomial random_poly(Rng& rng, const ContextPtr& ctx, unsigned max_deg, unsigned max_terms = 4) {
  std::uniform_int_distribution<unsigned> nt(0, max_terms);
  std::vector<Term> terms;
  unsigned k = nt(rng);
  for (unsigned i = 0; i < k; ++i) terms.push_back({random_monomial(rng, ctx->n(), max_deg), small_rational(rng)});
  return Polynomial::from_terms(ctx, std::move(terms));
}

inline Polynomial random_nonzero_poly(Rng& rng, const ContextPtr& ctx, unsigned max_deg, unsigned max_terms = 4) {
  for (;;) {
    auto p = random_poly(rng, ctx, max_deg, max_terms);
    if (!p.is_zero()) return p;
  }
}

/// Homogeneous element of the form E^eps * (sum of wedge-degree-k terms).
inline GElement random_homogeneous(Rng& rng, const ContextPtr& ctx, std::uint32_t eps, unsigned k, unsigned coeff_deg,
                                   unsigned max_terms = 3) {
  const std::size_t n = ctx->n();
  GElement g(ctx);
  std::uniform_int_distribution<unsigned> nt(1, max_terms);
  unsigned count = nt(rng);
  for (unsigned t = 0; t < count; ++t) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    g += GElement::term(ctx, WedgeKey::from_indices(idx, eps), random_poly(rng, ctx, coeff_deg, 2));
  }
  return g;
}

/// Polydifferential operator with derivative order <= 2 in every slot.
inline PolyDiffOperator random_op(Rng& rng, const ContextPtr& ctx, std::size_t arity, unsigned terms = 3) {
  PolyDiffOperator op(ctx, arity);
  for (unsigned t = 0; t < terms; ++t) {
    PolyDiffOperator::Key k;
    for (std::size_t a = 0; a < arity; ++a) k.push_back(random_monomial(rng, ctx->n(), 2));
    op.add_term(k, random_poly(rng, ctx, 2, 2));
  }
  return op;
}

// ---------------------------------------------------------------------------
// Dense brute-force polynomial arithmetic (term-by-term expansion oracle).

using Dense = std::map<std::vector<int>, Rational>;

inline Dense dense(const Polynomial& p) {
  Dense d;
  for (const auto& t : p.terms()) d[std::vector<int>(t.mono.exps.begin(), t.mono.exps.end())] = t.coeff;
  return d;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::vector<int> m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out[m] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline Dense dense_add(Dense a, const Dense& b) {
  for (const auto& [m, c] : b) a[m] += c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

// ---------------------------------------------------------------------------
// Exact rank over Q by Gaussian elimination.

inline std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rational factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Milnor number of a quasi-homogeneous f with integer weights w and weighted
/// degree d, by enumerating monomials per weighted degree and computing the
/// rank of the Jacobian ideal in each graded piece. Returns 0 if the top
/// degree bound is exceeded (caller error).
inline std::size_t milnor_by_enumeration(const Polynomial& f, const std::vector<int>& w, int d) {
  const std::size_t n = w.size();
  std::vector<Polynomial> partials;
  for (std::size_t i = 0; i < n; ++i) partials.push_back(partial_derivative(f, i));
  // The socle of the Milnor algebra sits in weighted degree sum (d - 2 w_i).
  int top = 0;
  for (auto wi : w) top += d - 2 * wi;
  std::size_t total = 0;
  for (int deg = 0; deg <= top + 1; ++deg) {
    // All monomials of weighted degree deg.
    std::vector<Monomial> monos;
    Monomial cur(n);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == n) {
        if (left == 0) monos.push_back(cur);
        return;
      }
      for (int e = 0; e * w[i] <= left; ++e) {
        cur[i] = static_cast<std::uint32_t>(e);
        rec(i + 1, left - e * w[i]);
      }
      cur[i] = 0;
    };
    rec(0, deg);
    std::map<Monomial, std::size_t> col;
    for (std::size_t k = 0; k < monos.size(); ++k) col[monos[k]] = k;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      int shift = deg - (d - w[i]);
      if (shift < 0) continue;
      std::vector<Monomial> multipliers;
      Monomial c2(n);
      std::function<void(std::size_t, int)> rec2 = [&](std::size_t j, int left) {
        if (j == n) {
          if (left == 0) multipliers.push_back(c2);
          return;
        }
        for (int e = 0; e * w[j] <= left; ++e) {
          c2[j] = static_cast<std::uint32_t>(e);
          rec2(j + 1, left - e * w[j]);
        }
        c2[j] = 0;
      };
      rec2(0, shift);
      for (const auto& m : multipliers) {
        std::vector<Rational> row(monos.size());
        for (const auto& t : partials[i].terms()) row[col.at(t.mono * m)] += t.coeff;
        rows.push_back(std::move(row));
      }
    }
    std::size_t piece = monos.size() - rank_of(rows);
    if (deg == top + 1 && piece != 0) return 0;
    total += piece;
  }
  return total;
}

/// Milnor-Orlik: mu = prod (d / w_i - 1) for quasi-homogeneous isolated f.
inline Rational milnor_orlik(const std::vector<int>& w, int d) {
  Rational mu = 1;
  for (auto wi : w) {
    Rational q(d, wi);
    q.canonicalize();
    mu *= q - 1;
  }
  return mu;
}

/// Quasi-homogeneous data for the ADE list: f is weighted homogeneous of
/// degree d for the weights w.
struct WeightedSingularity {
  const char* name;
  const char* equation;
  std::vector<int> weights;
  int degree;
  std::size_t expected_mu;
};

inline std::vector<WeightedSingularity> ade_weighted() {
  std::vector<WeightedSingularity> out;
  static const char* a_eq[] = {"x^2+y^2+z^2", "x^3+y^2+z^2", "x^4+y^2+z^2",
                               "x^5+y^2+z^2", "x^6+y^2+z^2", "x^7+y^2+z^2"};
  static const char* a_name[] = {"A1", "A2", "A3", "A4", "A5", "A6"};
  for (int k = 1; k <= 6; ++k) out.push_back({a_name[k - 1], a_eq[k - 1], {2, k + 1, k + 1}, 2 * (k + 1), std::size_t(k)});
  out.push_back({"D4", "x^3+x*y^2+z^2", {2, 2, 3}, 6, 4});
  out.push_back({"D5", "x^4+x*y^2+z^2", {2, 3, 4}, 8, 5});
  out.push_back({"E6", "x^3+y^4+z^2", {4, 3, 6}, 12, 6});
  out.push_back({"E7", "x^3+x*y^3+z^2", {6, 4, 9}, 18, 7});
  out.push_back({"E8", "x^3+y^5+z^2", {10, 6, 15}, 30, 8});
  return out;
}

// ---------------------------------------------------------------------------
// Vector fields as derivations.

/// Applies the eps-free 1-vector X = sum a_i D_i to g: sum a_i dg/dx_i.
inline Polynomial derive(const GElement& x, const Polynomial& g) {
  Polynomial out(g.context());
  for (const auto& [k, a] : x.terms()) {
    auto idx = k.indices();
    out += a * partial_derivative(g, idx.at(0));
  }
  return out;
}

/// Bracket of functions from a bivector: {a, b} = sum_{i<j} pi_ij (d_i a d_j b - d_j a d_i b).
inline Polynomial poisson_bracket(const GElement& pi, const Polynomial& a, const Polynomial& b) {
  Polynomial out(a.context());
  for (const auto& [k, c] : pi.terms()) {
    auto idx = k.indices();
    auto i = idx.at(0), j = idx.at(1);
    out += c * (partial_derivative(a, i) * partial_derivative(b, j) - partial_derivative(a, j) * partial_derivative(b, i));
  }
  return out;
}

inline Polynomial jacobiator(const GElement& pi, const Polynomial& a, const Polynomial& b, const Polynomial& c) {
  return poisson_bracket(pi, a, poisson_bracket(pi, b, c)) + poisson_bracket(pi, b, poisson_bracket(pi, c, a)) +
         poisson_bracket(pi, c, poisson_bracket(pi, a, b));
}

}  // namespace unfold::testing
