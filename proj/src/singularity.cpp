#include "unfold/singularity.hpp"

namespace unfold {

namespace {

void require_nonconstant(const Polynomial& f) {
  if (f.is_constant()) throw std::invalid_argument("f must be nonconstant");
}

}  // namespace

JacobianData jacobian(const Polynomial& f, const GroebnerOptions& opts) {
  require_nonconstant(f);
  JacobianData d;
  for (std::size_t i = 0; i < f.nvars(); ++i) d.partials.push_back(partial_derivative(f, i));
  d.gb = buchberger(d.partials, MonomialOrder{}, opts);
  auto sm = standard_monomials(d.gb);
  if (sm) {
    d.milnor = sm->size();
    d.w_basis = std::move(*sm);
  }
  if (f.constant_term() != 0) d.warning = "f has a nonzero constant term; the Jacobian ideal ignores it";
  return d;
}

MaybeFinite milnor_number(const Polynomial& f, const GroebnerOptions& opts) { return jacobian(f, opts).milnor; }

bool is_isolated(const Polynomial& f, const GroebnerOptions& opts) { return milnor_number(f, opts).has_value(); }

std::vector<Monomial> qc_subspace(const Polynomial& f, const GroebnerOptions& opts) {
  auto d = jacobian(f, opts);
  if (!d.milnor) throw NotIsolated("f does not define an isolated singularity (infinite Milnor number)");
  return d.w_basis;
}

bool is_monic_in_last(const Polynomial& f) {
  if (f.is_zero()) return false;
  const std::size_t last = f.nvars() - 1;
  long top = f.degree_in(last);
  std::size_t count = 0;
  for (const auto& t : f.terms()) {
    if (static_cast<long>(t.mono[last]) != top) continue;
    ++count;
    if (t.mono.degree() != t.mono[last]) return false;
  }
  return count == 1 && top > 0;
}

namespace {

Monicization apply_exponents(const Polynomial& f, const std::vector<std::uint32_t>& ns) {
  const auto& ctx = f.context();
  const std::size_t n = ctx->n();
  std::vector<Polynomial> imgs;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial img = Polynomial::variable(ctx, i);
    if (i + 1 < n) {
      Monomial m(n);
      m[n - 1] = ns[i];
      img += Polynomial::monomial(ctx, m);
    }
    imgs.push_back(std::move(img));
  }
  Substitution s(std::move(imgs));
  Polynomial image = substitute(f, s);
  return {std::move(s), ns, std::move(image)};
}

}  // namespace

Monicization monicize(const Polynomial& f) {
  require_nonconstant(f);
  const auto& ctx = f.context();
  const std::size_t n = ctx->n();
  if (is_monic_in_last(f)) return {Substitution::identity(ctx), {}, f};
  if (n == 1) throw std::logic_error("a nonconstant univariate polynomial is always monic up to scaling");

  // Uniform exponents starting just above deg_{x_n} f. A uniform choice can
  // fail when several x_i tie; the base-D exponents N_i = D^i, D = 1 + deg f,
  // give every monomial of f a distinct x_n-degree and always succeed.
  const auto base = static_cast<std::uint32_t>(f.degree_in(n - 1) + 1);
  const auto total = static_cast<std::uint32_t>(f.total_degree());
  for (std::uint32_t e = std::max<std::uint32_t>(base, 1); e <= base + total + 1; ++e) {
    auto r = apply_exponents(f, std::vector<std::uint32_t>(n - 1, e));
    if (is_monic_in_last(r.image)) return r;
  }
  const std::uint32_t d = total + 1;
  std::vector<std::uint32_t> ns(n - 1);
  std::uint64_t p = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    p *= d;
    if (p > 1u << 20) throw std::overflow_error("monicize exponents too large");
    ns[i] = static_cast<std::uint32_t>(p);
  }
  auto r = apply_exponents(f, ns);
  if (!is_monic_in_last(r.image)) throw std::logic_error("base-D monicization failed");
  return r;
}

std::vector<CatalogEntry> ade_catalog() {
  std::vector<CatalogEntry> out;
  for (int k = 1; k <= 6; ++k) out.push_back({"A" + std::to_string(k), "x^" + std::to_string(k + 1) + "+y^2+z^2"});
  out.push_back({"D4", "x^3+x*y^2+z^2"});
  out.push_back({"D5", "x^4+x*y^2+z^2"});
  out.push_back({"E6", "x^3+y^4+z^2"});
  out.push_back({"E7", "x^3+x*y^3+z^2"});
  out.push_back({"E8", "x^3+y^5+z^2"});
  return out;
}

}  // namespace unfold
