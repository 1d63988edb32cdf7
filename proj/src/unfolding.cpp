#include "unfold/unfolding.hpp"

#include "unfold/singularity.hpp"

namespace unfold {

namespace {

GElement bracket(const GElement& a, const GElement& b) { return schouten_bracket(a, b); }

// Copy of s with a larger truncation order (zero padded).
template <class V>
HSeries<V> extend(const HSeries<V>& s, std::size_t order, const V& zero) {
  std::vector<V> c = s.coeffs();
  c.resize(order + 1, zero);
  return HSeries<V>(order, std::move(c), zero);
}

void require_eps_free_degree(const PolyVector& x, unsigned k, const char* what) {
  for (const auto& [key, c] : x.terms())
    if (key.eps != 0 || key.wedge_degree() != k)
      throw LiftError(LiftError::Kind::bad_degree, std::string(what) + " must be an eps-free " + std::to_string(k) +
                                                       "-vector");
}

}  // namespace

std::vector<WedgeKey> wedge_basis(std::size_t n, unsigned k) {
  std::vector<WedgeKey> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(WedgeKey::from_indices(idx));
    // Next combination in lexicographic order.
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (unsigned j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

PolyMatrix koszul_matrix(const Polynomial& f, unsigned k) {
  const auto& ctx = f.context();
  const std::size_t n = ctx->n();
  auto rows = wedge_basis(n, k);
  auto cols = wedge_basis(n, k + 1);
  PolyMatrix m(ctx, rows.size(), cols.size());
  auto one = Polynomial::constant(ctx, 1);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    GElement image = ad_f(f, GElement::term(ctx, cols[j], one));
    for (std::size_t i = 0; i < rows.size(); ++i) m.at(i, j) = image.coefficient(rows[i]);
  }
  return m;
}

std::optional<PolyVector> koszul_lift(const Polynomial& f, const PolyVector& z, const GroebnerOptions& opts) {
  const auto& ctx = f.context();
  if (!z.is_zero() && !z.is_homogeneous())
    throw LiftError(LiftError::Kind::bad_degree, "lift target must be homogeneous");
  if (!is_isolated(f, opts)) throw LiftError(LiftError::Kind::not_isolated, "f is not an isolated singularity");
  if (z.is_zero()) return PolyVector(ctx);
  const unsigned k = z.terms().begin()->first.wedge_degree();
  require_eps_free_degree(z, k, "lift target");
  if (k == 0) throw LiftError(LiftError::Kind::bad_degree, "lift target must have wedge degree >= 1");
  if (!ad_f(f, z).is_zero()) throw LiftError(LiftError::Kind::not_a_cycle, "lift target is not a Koszul cycle");

  auto rows = wedge_basis(ctx->n(), k);
  auto cols = wedge_basis(ctx->n(), k + 1);
  PolyMatrix m = koszul_matrix(f, k);
  ModuleElement b;
  for (const auto& r : rows) b.components.push_back(z.coefficient(r));
  auto x = module_preimage(ctx, m, b, MonomialOrder{}, opts);
  if (!x) return std::nullopt;
  PolyVector t(ctx);
  for (std::size_t j = 0; j < cols.size(); ++j) t += GElement::term(ctx, cols[j], (*x)[j]);
  if (!(ad_f(f, t) == z)) throw std::logic_error("Koszul lift failed verification");
  return t;
}

QcNormalForm qc_normalize(const Polynomial& f, const Polynomial& p, const GroebnerOptions& opts) {
  if (!is_isolated(f, opts)) throw NotIsolated("qc_normalize requires an isolated singularity");
  std::vector<Polynomial> partials;
  for (std::size_t i = 0; i < f.nvars(); ++i) partials.push_back(partial_derivative(f, i));
  GroebnerBasis gb = buchberger(partials, MonomialOrder{}, opts, true);
  ReductionTrace t = normal_form(p, gb);
  QcNormalForm out{t.remainder.context() ? t.remainder : Polynomial(f.context()),
                   std::vector<Polynomial>(partials.size(), Polynomial(f.context()))};
  for (std::size_t i = 0; i < gb.generators().size(); ++i)
    for (std::size_t j = 0; j < partials.size(); ++j) out.cofactors[j] += t.cofactors[i] * gb.representation()[i][j];
  Polynomial check = out.w_part;
  for (std::size_t j = 0; j < partials.size(); ++j) check += out.cofactors[j] * partials[j];
  if (!(check == p)) throw std::logic_error("qc_normalize cofactor identity failed");
  return out;
}

QcResult qc_validate(const Polynomial& f, const Polynomial& p, const PolyVector& s, const GroebnerOptions& opts) {
  using K = QcViolation::Kind;
  std::vector<QcViolation> bad;
  if (!is_isolated(f, opts)) {
    bad.push_back({K::not_isolated, "f is not an isolated singularity"});
    return bad;
  }
  for (const auto& [key, c] : s.terms()) {
    if (key.eps != 0 || key.wedge_degree() != 2) {
      bad.push_back({K::bad_degree, "S must be an eps-free bivector"});
      return bad;
    }
  }
  bool cycle = ad_f(f, s).is_zero();
  if (!cycle) bad.push_back({K::not_koszul_cycle, "[f, S] != 0: " + format(ad_f(f, s))});
  if (!bivector_square(s).is_zero()) bad.push_back({K::not_poisson, "[S, S] != 0: " + format(bivector_square(s))});
  std::optional<PolyVector> s2;
  if (cycle) {
    GElement z = bracket(GElement(p), s);
    try {
      s2 = koszul_lift(f, z, opts);
    } catch (const LiftError& e) {
      bad.push_back({K::not_extendable, std::string("no S_2 with [f, S_2] = [p, S]: ") + e.what()});
    }
    if (!s2 && bad.empty()) bad.push_back({K::not_extendable, "no S_2 with [f, S_2] = [p, S]"});
  }
  if (!bad.empty()) return bad;
  QcNormalForm nf = qc_normalize(f, p, opts);
  return QuasiClassicalDatum{p, nf.w_part, s, *s2};
}

bool ResidualReport::all_zero() const {
  auto zero = [](const auto& v) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  };
  return consistent && witness_ok && zero(koszul) && zero(poisson) && zero(mc);
}

HSeries<GElement> assemble_w(const MCSolution& sol) {
  const auto& ctx = sol.p[0].context() ? sol.p[0].context() : sol.s[0].context();
  std::vector<GElement> w;
  for (std::size_t k = 0; k <= sol.p.order(); ++k) {
    GElement term = sol.s[k];
    if (!sol.p[k].is_zero()) term += GElement(sol.p[k]) * GElement::eps(sol.p[k].context());
    w.push_back(std::move(term));
  }
  return HSeries<GElement>(sol.p.order(), std::move(w), GElement(ctx));
}

ResidualReport mc_verify(const Polynomial& f, const MCSolution& sol) {
  const auto& ctx = f.context();
  std::size_t order = sol.p.order();
  if (sol.s.order() != order || (sol.t && sol.t->order() != order))
    throw std::invalid_argument("solution series have different truncation orders");
  MCSolution work = sol;
  if (sol.exact) {
    // Polynomial in h: check every power that can appear in a product.
    long deg = std::max({sol.p.h_degree(), sol.s.h_degree(), sol.t ? sol.t->h_degree() : -1L, 1L});
    order = std::max<std::size_t>(order, 2 * static_cast<std::size_t>(deg));
    work.p = extend(sol.p, order, Polynomial(ctx));
    work.s = extend(sol.s, order, GElement(ctx));
    if (sol.t) work.t = extend(*sol.t, order, GElement(ctx));
  }
  HSeries<GElement> fmp(order, GElement(ctx));
  fmp[0] = GElement(f);
  for (std::size_t k = 1; k <= order; ++k) fmp[k] = -GElement(work.p[k]);
  if (!work.p[0].is_zero()) throw DegreeError("p must have zero h^0 coefficient");

  auto koszul = fmp.convolve(work.s, bracket);
  auto poisson = work.s.convolve(work.s, bracket);
  auto mc = mc_residual(f, assemble_w(work));

  ResidualReport r;
  auto e = GElement::eps(ctx);
  for (std::size_t k = 0; k <= order; ++k) {
    r.koszul.push_back(koszul[k]);
    r.poisson.push_back(poisson[k]);
    r.mc.push_back(mc[k]);
    GElement expect = -(e * koszul[k]) + poisson[k] * Rational(1, 2);
    if (!(expect == mc[k])) r.consistent = false;
  }
  if (work.t) {
    auto image = fmp.convolve(*work.t, bracket);
    for (std::size_t k = 0; k <= order; ++k)
      if (!(image[k] == work.s[k])) r.witness_ok = false;
  }
  return r;
}

namespace {

void require_valid(const Polynomial& f, const Polynomial& p1, const PolyVector& s1, const GroebnerOptions& opts) {
  auto v = qc_validate(f, p1, s1, opts);
  if (auto* bad = std::get_if<std::vector<QcViolation>>(&v)) {
    std::string msg = "invalid quasiclassical datum:";
    for (const auto& b : *bad) msg += " " + b.message + ";";
    throw QuantizationError(msg);
  }
}

}  // namespace

MCSolution quantize_n3(const Polynomial& f, const Polynomial& p1, const PolyVector& s1, const GroebnerOptions& opts) {
  const auto& ctx = f.context();
  if (ctx->n() != 3) throw QuantizationError("quantize_n3 requires exactly three variables");
  require_valid(f, p1, s1, opts);
  auto t1 = koszul_lift(f, s1, opts);
  if (!t1) throw std::logic_error("Koszul lift failed for an isolated singularity");

  constexpr std::size_t order = 2;
  MCSolution sol{HSeries<Polynomial>(order, Polynomial(ctx)), HSeries<PolyVector>(order, GElement(ctx)),
                 HSeries<PolyVector>(order, GElement(ctx)), true};
  sol.p[1] = p1.context() ? p1 : Polynomial(ctx);
  (*sol.t)[1] = *t1;
  // S = [f - p_1 h, T_1 h] = S_1 h - [p_1, T_1] h^2
  sol.s[1] = ad_f(f, *t1);
  sol.s[2] = -schouten_bracket(GElement(p1), *t1);
  if (!mc_verify(f, sol).all_zero()) throw std::logic_error("quantize_n3 produced a non-solution");
  return sol;
}

QuantizeResult quantize_general(const Polynomial& f, const Polynomial& p1, const PolyVector& s1,
                                const GeneralOptions& opts, std::stop_token stop) {
  const auto& ctx = f.context();
  const std::size_t order = opts.max_order;
  if (order < 1) throw std::invalid_argument("max_order must be positive");
  if (!is_isolated(f, opts.groebner)) throw QuantizationError("f is not an isolated singularity");
  for (const auto& [key, c] : s1.terms())
    if (key.eps != 0 || key.wedge_degree() != 2) throw QuantizationError("S_1 must be an eps-free bivector");
  if (!ad_f(f, s1).is_zero()) throw QuantizationError("[f, S_1] != 0");
  if (!bivector_square(s1).is_zero()) throw QuantizationError("[S_1, S_1] != 0");

  HSeries<Polynomial> p(order, Polynomial(ctx));
  HSeries<PolyVector> s(order, GElement(ctx));
  p[1] = p1.context() ? p1 : Polynomial(ctx);
  for (std::size_t k = 2; k <= order && k < opts.p_higher.size(); ++k)
    if (opts.p_higher[k].context()) p[k] = opts.p_higher[k];
  s[1] = s1;

  auto finish = [&](std::size_t reached) -> MCSolution {
    MCSolution sol{extend(HSeries<Polynomial>(reached, {p.coeffs().begin(), p.coeffs().begin() + reached + 1},
                                              Polynomial(ctx)),
                          reached, Polynomial(ctx)),
                   HSeries<PolyVector>(reached, {s.coeffs().begin(), s.coeffs().begin() + reached + 1},
                                       GElement(ctx)),
                   std::nullopt, false};
    if (!mc_verify(f, sol).all_zero()) throw std::logic_error("quantize_general produced a non-solution");
    return sol;
  };

  for (std::size_t k = 2; k <= order; ++k) {
    if (stop.stop_requested()) return finish(k - 1);
    GElement z(ctx);
    for (std::size_t i = 1; i < k; ++i) z += schouten_bracket(GElement(p[i]), s[k - i]);
    std::optional<PolyVector> lift;
    try {
      lift = koszul_lift(f, z, opts.groebner);
    } catch (const LiftError& e) {
      if (e.kind() != LiftError::Kind::not_a_cycle) throw;
    }
    if (!lift) return ObstructionReport{k, z, ObstructionReport::Kind::lift_failure};
    s[k] = *lift;
    GElement square(ctx);
    for (std::size_t i = 1; i < k; ++i) square += schouten_bracket(s[i], s[k - i]);
    if (!square.is_zero()) return ObstructionReport{k, square, ObstructionReport::Kind::poisson_failure};
  }
  return finish(order);
}

}  // namespace unfold
