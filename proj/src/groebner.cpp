#include "unfold/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace unfold {

namespace {

// ---------------------------------------------------------------------------
// Sparse module vectors, terms sorted by decreasing position-over-term order.

struct ModTerm {
  std::uint32_t comp;
  Monomial mono;
  Rational coeff;
};

struct Engine {
  ContextPtr ctx;
  MonomialOrder order;
  std::size_t rank;
  std::size_t ninput;
  bool track;
  GroebnerOptions opts;

  using Vec = std::vector<ModTerm>;

  // >0 when a is larger.
  int cmp(const ModTerm& a, std::uint32_t comp, const Monomial& m) const {
    if (a.comp != comp) return a.comp < comp ? 1 : -1;
    return order.compare(a.mono, m);
  }
  int cmp(const ModTerm& a, const ModTerm& b) const { return cmp(a, b.comp, b.mono); }

  Vec from_element(const ModuleElement& e) const {
    Vec v;
    for (std::uint32_t c = 0; c < e.components.size(); ++c)
      for (const auto& t : e.components[c].terms()) v.push_back({c, t.mono, t.coeff});
    std::sort(v.begin(), v.end(), [&](const ModTerm& a, const ModTerm& b) { return cmp(a, b) > 0; });
    return v;
  }

  ModuleElement to_element(const Vec& v) const {
    std::vector<std::vector<Term>> parts(rank);
    for (const auto& t : v) parts[t.comp].push_back({t.mono, t.coeff});
    ModuleElement e;
    for (auto& p : parts) e.components.push_back(Polynomial::from_terms(ctx, std::move(p)));
    return e;
  }

  // a - c * m * b
  Vec sub_mul(const Vec& a, const Rational& c, const Monomial& m, const Vec& b) const {
    Vec out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
      if (j == b.end()) {
        out.push_back(*i++);
        continue;
      }
      Monomial jm = j->mono * m;
      int s = i == a.end() ? -1 : cmp(*i, j->comp, jm);
      if (s > 0) {
        out.push_back(*i++);
      } else if (s < 0) {
        out.push_back({j->comp, std::move(jm), -c * j->coeff});
        ++j;
      } else {
        Rational r = i->coeff - c * j->coeff;
        if (r != 0) out.push_back({i->comp, i->mono, r});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void scale(Vec& v, const Rational& c) const {
    for (auto& t : v) t.coeff *= c;
  }

  std::vector<Polynomial> zero_rep() const { return std::vector<Polynomial>(ninput, Polynomial(ctx)); }

  void rep_sub_mul(std::vector<Polynomial>& r, const Rational& c, const Monomial& m,
                   const std::vector<Polynomial>& b) const {
    for (std::size_t k = 0; k < ninput; ++k)
      if (!b[k].is_zero()) r[k] -= b[k].mul_term(m, c);
  }

  struct Element {
    Vec vec;
    std::vector<Polynomial> rep;
  };

  // Full reduction of v by basis. Returns remainder; cofactors over basis
  // accumulate in cof (if non-null).
  Vec reduce(Vec v, const std::vector<Element>& basis, std::vector<Polynomial>* cof,
             std::vector<Polynomial>* rep = nullptr, std::size_t skip = SIZE_MAX) const {
    Vec rem;
    while (!v.empty()) {
      const ModTerm& lead = v.front();
      std::size_t hit = SIZE_MAX;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (k == skip || basis[k].vec.empty()) continue;
        const ModTerm& bl = basis[k].vec.front();
        if (bl.comp == lead.comp && bl.mono.divides(lead.mono)) {
          hit = k;
          break;
        }
      }
      if (hit == SIZE_MAX) {
        rem.push_back(lead);
        v.erase(v.begin());
        continue;
      }
      const ModTerm& bl = basis[hit].vec.front();
      Rational c = lead.coeff / bl.coeff;
      Monomial m = lead.mono / bl.mono;
      if (cof) (*cof)[hit] += Polynomial::monomial(ctx, m, c);
      if (rep) rep_sub_mul(*rep, c, m, basis[hit].rep);
      v = sub_mul(v, c, m, basis[hit].vec);
    }
    return rem;
  }

  void make_monic(Element& e) const {
    if (e.vec.empty()) return;
    Rational inv = 1 / e.vec.front().coeff;
    if (inv == 1) return;
    scale(e.vec, inv);
    for (auto& p : e.rep) p *= inv;
  }

  void guard(const Vec& v) const {
    if (!opts.max_degree) return;
    for (const auto& t : v)
      if (t.mono.degree() > opts.max_degree)
        throw GroebnerAbort("Groebner computation exceeded maximum degree " + std::to_string(opts.max_degree));
  }

  std::vector<Element> run(const std::vector<ModuleElement>& input) const {
    std::vector<Element> basis;
    for (std::size_t j = 0; j < input.size(); ++j) {
      Element e{from_element(input[j]), {}};
      if (e.vec.empty()) continue;
      if (track) {
        e.rep = zero_rep();
        e.rep[j] = Polynomial::constant(ctx, 1);
      }
      make_monic(e);
      guard(e.vec);
      basis.push_back(std::move(e));
    }

    std::set<std::pair<std::size_t, std::size_t>> pairs;
    auto add_pairs = [&](std::size_t j) {
      for (std::size_t i = 0; i < j; ++i)
        if (basis[i].vec.front().comp == basis[j].vec.front().comp) pairs.insert({i, j});
    };
    for (std::size_t j = 0; j < basis.size(); ++j) add_pairs(j);

    auto pending = [&](std::size_t a, std::size_t b) { return pairs.count({std::min(a, b), std::max(a, b)}) > 0; };

    while (!pairs.empty()) {
      // Normal strategy: least lcm degree, ties broken by (j, i).
      auto best = pairs.end();
      std::tuple<std::uint64_t, std::size_t, std::size_t> best_key{};
      for (auto it = pairs.begin(); it != pairs.end(); ++it) {
        auto l = lcm(basis[it->first].vec.front().mono, basis[it->second].vec.front().mono);
        std::tuple<std::uint64_t, std::size_t, std::size_t> key{l.degree(), it->second, it->first};
        if (best == pairs.end() || key < best_key) {
          best = it;
          best_key = key;
        }
      }
      auto [i, j] = *best;
      pairs.erase(best);

      const ModTerm& li = basis[i].vec.front();
      const ModTerm& lj = basis[j].vec.front();
      Monomial l = lcm(li.mono, lj.mono);

      // Product criterion, valid for ideals only.
      if (rank == 1 && coprime(li.mono, lj.mono)) continue;
      // Chain criterion.
      bool chain = false;
      for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
        if (k == i || k == j) continue;
        const ModTerm& lk = basis[k].vec.front();
        if (lk.comp == li.comp && lk.mono.divides(l) && !pending(i, k) && !pending(j, k)) chain = true;
      }
      if (chain) continue;

      // Basis elements are monic.
      Monomial mi = l / li.mono;
      Monomial mj = l / lj.mono;
      Vec s = sub_mul(Vec{}, Rational(-1), mi, basis[i].vec);
      s = sub_mul(s, Rational(1), mj, basis[j].vec);
      std::vector<Polynomial> srep;
      if (track) {
        srep = zero_rep();
        rep_sub_mul(srep, Rational(-1), mi, basis[i].rep);
        rep_sub_mul(srep, Rational(1), mj, basis[j].rep);
      }
      Vec h = reduce(std::move(s), basis, nullptr, track ? &srep : nullptr);
      if (h.empty()) continue;
      Element e{std::move(h), std::move(srep)};
      make_monic(e);
      guard(e.vec);
      basis.push_back(std::move(e));
      add_pairs(basis.size() - 1);
    }

    // Minimize: drop elements whose leading term is divisible by another's.
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = 0; b < basis.size() && keep[a]; ++b) {
        if (a == b || !keep[b]) continue;
        const ModTerm& la = basis[a].vec.front();
        const ModTerm& lb = basis[b].vec.front();
        if (la.comp == lb.comp && lb.mono.divides(la.mono) && (la.mono != lb.mono || b < a)) keep[a] = false;
      }
    }
    std::vector<Element> minimal;
    for (std::size_t a = 0; a < basis.size(); ++a)
      if (keep[a]) minimal.push_back(std::move(basis[a]));

    // Interreduce the tails.
    for (std::size_t a = 0; a < minimal.size(); ++a) {
      Vec tail(minimal[a].vec.begin() + 1, minimal[a].vec.end());
      std::vector<Polynomial>* rep = track ? &minimal[a].rep : nullptr;
      Vec red = reduce(std::move(tail), minimal, nullptr, rep, a);
      Vec v;
      v.push_back(minimal[a].vec.front());
      v.insert(v.end(), red.begin(), red.end());
      minimal[a].vec = std::move(v);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const Element& x, const Element& y) { return cmp(x.vec.front(), y.vec.front()) < 0; });
    return minimal;
  }
};

void check_trace(const Polynomial& p, const std::vector<Polynomial>& basis, const ReductionTrace& t) {
  Polynomial sum = t.remainder;
  for (std::size_t i = 0; i < basis.size(); ++i) sum += t.cofactors[i] * basis[i];
  if (!(sum == p)) throw std::logic_error("normal form cofactor identity failed");
}

}  // namespace

// ---------------------------------------------------------------------------
// Ideals

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : gens_) {
    const Term* best = &g.terms().front();
    for (const auto& t : g.terms())
      if (order_.compare(t.mono, best->mono) > 0) best = &t;
    out.push_back(best->mono);
  }
  return out;
}

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order, const GroebnerOptions& opts,
                         bool track_representation) {
  ContextPtr ctx;
  for (const auto& g : gens) ctx = merge_context(ctx, g.context());
  if (!ctx || std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_zero(); }))
    throw std::invalid_argument("buchberger needs at least one nonzero generator");
  std::vector<ModuleElement> input;
  for (const auto& g : gens) input.emplace_back(std::vector<Polynomial>{g.context() ? g : Polynomial(ctx)});
  Engine eng{ctx, order, 1, gens.size(), track_representation, opts};
  auto basis = eng.run(input);

  GroebnerBasis gb;
  gb.ctx_ = ctx;
  gb.order_ = order;
  gb.input_ = gens;
  for (auto& e : basis) {
    gb.gens_.push_back(eng.to_element(e.vec).components[0]);
    if (track_representation) gb.rep_.push_back(std::move(e.rep));
  }
  return gb;
}

ReductionTrace normal_form(const Polynomial& p, const GroebnerBasis& gb) {
  ContextPtr ctx = merge_context(p.context(), gb.context());
  Engine eng{ctx, gb.order(), 1, 0, false, {}};
  std::vector<Engine::Element> basis;
  for (const auto& g : gb.generators()) basis.push_back({eng.from_element(ModuleElement({g})), {}});
  std::vector<Polynomial> cof(basis.size(), Polynomial(ctx));
  auto rem = eng.reduce(eng.from_element(ModuleElement({p.context() ? p : Polynomial(ctx)})), basis, &cof);
  ReductionTrace t{eng.to_element(rem).components[0], std::move(cof)};
  check_trace(p, gb.generators(), t);
  return t;
}

std::optional<std::vector<Polynomial>> ideal_membership(const Polynomial& p, const std::vector<Polynomial>& gens,
                                                        const MonomialOrder& order, const GroebnerOptions& opts) {
  ContextPtr ctx = p.context();
  for (const auto& g : gens) ctx = merge_context(ctx, g.context());
  std::vector<Polynomial> cof(gens.size(), Polynomial(ctx));
  if (p.is_zero()) return cof;
  if (std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_zero(); })) return std::nullopt;
  GroebnerBasis gb = buchberger(gens, order, opts, true);
  ReductionTrace t = normal_form(p, gb);
  if (!t.remainder.is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < gb.generators().size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) cof[j] += t.cofactors[i] * gb.representation()[i][j];
  Polynomial check(ctx);
  for (std::size_t j = 0; j < gens.size(); ++j) check += cof[j] * gens[j];
  if (!(check == p)) throw std::logic_error("ideal membership cofactors failed verification");
  return cof;
}

std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis& gb) {
  const auto leads = gb.leading_monomials();
  const std::size_t n = gb.context()->n();
  if (std::any_of(leads.begin(), leads.end(), [](const Monomial& m) { return m.is_one(); }))
    return std::vector<Monomial>{};
  std::vector<std::uint32_t> bound(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& m : leads) {
      if (m.degree() == m[i] && m[i] > 0) bound[i] = bound[i] ? std::min(bound[i], m[i]) : m[i];
    }
    if (!bound[i]) return std::nullopt;
  }
  std::vector<Monomial> out;
  Monomial cur(n);
  // Odometer over the box prod [0, bound_i).
  for (;;) {
    bool divisible = std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(cur); });
    if (!divisible) out.push_back(cur);
    std::size_t i = 0;
    while (i < n && ++cur[i] == bound[i]) cur[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_compare(a, b) < 0; });
  return out;
}

MaybeFinite quotient_dimension(const GroebnerBasis& gb) {
  auto sm = standard_monomials(gb);
  if (!sm) return std::nullopt;
  return sm->size();
}

// ---------------------------------------------------------------------------
// Modules

ModuleElement ModuleElement::zero(const ContextPtr& ctx, std::size_t rank) {
  return ModuleElement(std::vector<Polynomial>(rank, Polynomial(ctx)));
}

bool ModuleElement::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](const Polynomial& p) { return p.is_zero(); });
}

ModuleGroebnerBasis module_buchberger(const ContextPtr& ctx, std::size_t rank, const std::vector<ModuleElement>& gens,
                                      const MonomialOrder& order, const GroebnerOptions& opts,
                                      bool track_representation) {
  for (const auto& g : gens)
    if (g.rank() != rank) throw std::invalid_argument("module generator rank mismatch");
  Engine eng{ctx, order, rank, gens.size(), track_representation, opts};
  auto basis = eng.run(gens);
  ModuleGroebnerBasis gb;
  gb.ctx_ = ctx;
  gb.order_ = order;
  gb.rank_ = rank;
  gb.input_ = gens;
  for (auto& e : basis) {
    gb.gens_.push_back(eng.to_element(e.vec));
    if (track_representation) gb.rep_.push_back(std::move(e.rep));
  }
  return gb;
}

ModuleReductionTrace module_normal_form(const ModuleElement& v, const ModuleGroebnerBasis& gb) {
  if (v.rank() != gb.rank()) throw std::invalid_argument("module element rank mismatch");
  const ContextPtr& ctx = gb.context();
  Engine eng{ctx, gb.order(), gb.rank(), 0, false, {}};
  std::vector<Engine::Element> basis;
  for (const auto& g : gb.generators()) basis.push_back({eng.from_element(g), {}});
  std::vector<Polynomial> cof(basis.size(), Polynomial(ctx));
  auto rem = eng.reduce(eng.from_element(v), basis, &cof);
  ModuleReductionTrace t{eng.to_element(rem), std::move(cof)};
  ModuleElement sum = t.remainder;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t c = 0; c < gb.rank(); ++c) sum.components[c] += t.cofactors[i] * gb.generators()[i].components[c];
  for (std::size_t c = 0; c < gb.rank(); ++c)
    if (!(sum.components[c] == v.components[c])) throw std::logic_error("module normal form identity failed");
  return t;
}

PolyMatrix::PolyMatrix(const ContextPtr& ctx, std::size_t r, std::size_t c)
    : rows(r), cols(c), entries(r * c, Polynomial(ctx)) {}

ModuleElement PolyMatrix::column(std::size_t j) const {
  ModuleElement e;
  for (std::size_t i = 0; i < rows; ++i) e.components.push_back(at(i, j));
  return e;
}

ModuleElement PolyMatrix::apply(const std::vector<Polynomial>& x) const {
  if (x.size() != cols) throw std::invalid_argument("matrix-vector dimension mismatch");
  ModuleElement e;
  for (std::size_t i = 0; i < rows; ++i) {
    Polynomial s;
    for (std::size_t j = 0; j < cols; ++j) s += at(i, j) * x[j];
    e.components.push_back(std::move(s));
  }
  return e;
}

std::optional<std::vector<Polynomial>> module_preimage(const ContextPtr& ctx, const PolyMatrix& m,
                                                       const ModuleElement& b, const MonomialOrder& order,
                                                       const GroebnerOptions& opts) {
  if (b.rank() != m.rows) throw std::invalid_argument("right-hand side has wrong rank");
  std::vector<Polynomial> x(m.cols, Polynomial(ctx));
  if (b.is_zero()) return x;
  std::vector<ModuleElement> cols;
  for (std::size_t j = 0; j < m.cols; ++j) cols.push_back(m.column(j));
  ModuleGroebnerBasis gb = module_buchberger(ctx, m.rows, cols, order, opts, true);
  ModuleReductionTrace t = module_normal_form(b, gb);
  if (!t.remainder.is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < gb.generators().size(); ++i)
    for (std::size_t j = 0; j < m.cols; ++j) x[j] += t.cofactors[i] * gb.representation()[i][j];
  ModuleElement back = m.apply(x);
  for (std::size_t r = 0; r < m.rows; ++r)
    if (!(back.components[r] == b.components[r])) throw std::logic_error("module preimage failed verification");
  return x;
}

}  // namespace unfold
