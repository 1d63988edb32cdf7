#include "unfold/json_io.hpp"

namespace unfold {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonSchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Monomial monomial_from_json(const Json& j, const ContextPtr& ctx) {
  if (!j.is_array() || j.size() != ctx->n()) throw JsonSchemaError("exponent vector has wrong length");
  Monomial m(ctx->n());
  for (std::size_t i = 0; i < ctx->n(); ++i) m[i] = j[i].get<std::uint32_t>();
  return m;
}

const char* order_name(const MonomialOrder& o) { return o.kind == TermOrder::grevlex ? "grevlex" : "lex"; }

}  // namespace

Json monomial_to_json(const Monomial& m) { return Json(m.exps); }

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    terms.push_back(Json{{"exp", monomial_to_json(t.mono)},
                         {"num", t.coeff.get_num().get_str()},
                         {"den", t.coeff.get_den().get_str()}});
  }
  return Json{{"terms", terms}};
}

Polynomial polynomial_from_json(const Json& j, const ContextPtr& ctx) {
  std::vector<Term> terms;
  for (const auto& t : field(j, "terms")) {
    Rational q;
    try {
      q = Rational(mpz_class(field(t, "num").get<std::string>()), mpz_class(field(t, "den").get<std::string>()));
    } catch (const std::invalid_argument&) {
      throw JsonSchemaError("malformed rational coefficient");
    }
    if (q.get_den() == 0) throw JsonSchemaError("zero denominator");
    q.canonicalize();
    terms.push_back({monomial_from_json(field(t, "exp"), ctx), q});
  }
  return Polynomial::from_terms(ctx, std::move(terms));
}

Json to_json(const GElement& g) {
  Json terms = Json::array();
  for (const auto& [k, c] : g.terms()) {
    Json odd = Json::array();
    for (auto i : k.indices()) odd.push_back(i + 1);
    terms.push_back(Json{{"eps", k.eps}, {"odd", odd}, {"coeff", to_json(c)}});
  }
  return Json{{"terms", terms}};
}

GElement gelement_from_json(const Json& j, const ContextPtr& ctx) {
  GElement g(ctx);
  for (const auto& t : field(j, "terms")) {
    std::vector<std::size_t> idx;
    for (const auto& i : field(t, "odd")) {
      auto v = i.get<std::size_t>();
      if (v == 0 || v > ctx->n()) throw JsonSchemaError("odd index out of range");
      idx.push_back(v - 1);
    }
    GElement term = GElement::wedge(ctx, idx, polynomial_from_json(field(t, "coeff"), ctx));
    auto e = field(t, "eps").get<std::uint32_t>();
    for (std::uint32_t i = 0; i < e; ++i) term = term * GElement::eps(ctx);
    g += term;
  }
  return g;
}

Json to_json(const PolyDiffOperator& op) {
  Json terms = Json::array();
  for (const auto& [key, c] : op.terms()) {
    Json alphas = Json::array();
    for (const auto& a : key) alphas.push_back(monomial_to_json(a));
    terms.push_back(Json{{"coeff", to_json(c)}, {"alphas", alphas}});
  }
  return Json{{"arity", op.arity()}, {"terms", terms}};
}

PolyDiffOperator operator_from_json(const Json& j, const ContextPtr& ctx) {
  PolyDiffOperator op(ctx, field(j, "arity").get<std::size_t>());
  for (const auto& t : field(j, "terms")) {
    PolyDiffOperator::Key key;
    for (const auto& a : field(t, "alphas")) key.push_back(monomial_from_json(a, ctx));
    op.add_term(key, polynomial_from_json(field(t, "coeff"), ctx));
  }
  return op;
}

Json to_json(const GroebnerBasis& gb) {
  Json gens = Json::array();
  for (const auto& g : gb.generators()) gens.push_back(to_json(g));
  return Json{{"module_rank", 1}, {"order", order_name(gb.order())}, {"generators", gens}};
}

Json to_json(const ModuleGroebnerBasis& gb) {
  Json gens = Json::array();
  for (const auto& g : gb.generators()) {
    Json comps = Json::array();
    for (const auto& c : g.components) comps.push_back(to_json(c));
    gens.push_back(comps);
  }
  return Json{{"module_rank", gb.rank()}, {"order", order_name(gb.order())}, {"generators", gens}};
}

Json to_json(const JacobianData& d) {
  Json w = Json::array();
  for (const auto& m : d.w_basis) w.push_back(monomial_to_json(m));
  Json out;
  if (d.milnor) {
    out["milnor"] = *d.milnor;
  } else {
    out["milnor"] = "infinite";
  }
  out["w_basis"] = w;
  out["isolated"] = d.milnor.has_value();
  return out;
}

Json to_json(const MCSolution& sol) {
  Json out;
  if (sol.exact) {
    out["order"] = "exact";
  } else {
    out["order"] = sol.p.order();
  }
  // Exact solutions list only up to their h-degree.
  std::size_t len = sol.p.order() + 1;
  Json p = Json::array(), s = Json::array();
  for (std::size_t k = 0; k < len; ++k) {
    p.push_back(to_json(sol.p[k]));
    s.push_back(to_json(sol.s[k]));
  }
  out["p"] = p;
  out["S"] = s;
  if (sol.t) {
    Json t = Json::array();
    for (std::size_t k = 0; k < len; ++k) t.push_back(to_json((*sol.t)[k]));
    out["T"] = t;
  }
  out["residual_checked"] = true;
  return out;
}

MCSolution solution_from_json(const Json& j, const ContextPtr& ctx) {
  const Json& p = field(j, "p");
  const Json& s = field(j, "S");
  if (!p.is_array() || !s.is_array() || p.size() != s.size() || p.size() < 2)
    throw JsonSchemaError("p and S must be arrays of equal length >= 2");
  const std::size_t order = p.size() - 1;
  const Json& ord = field(j, "order");
  bool exact = ord.is_string();
  if (exact && ord.get<std::string>() != "exact") throw JsonSchemaError("order must be an integer or \"exact\"");
  if (!exact && ord.get<std::size_t>() != order) throw JsonSchemaError("order does not match series length");
  MCSolution sol{HSeries<Polynomial>(order, Polynomial(ctx)), HSeries<PolyVector>(order, GElement(ctx)),
                 std::nullopt, exact};
  for (std::size_t k = 0; k <= order; ++k) {
    sol.p[k] = polynomial_from_json(p[k], ctx);
    sol.s[k] = gelement_from_json(s[k], ctx);
  }
  if (j.contains("T")) {
    const Json& t = j.at("T");
    if (!t.is_array() || t.size() != p.size()) throw JsonSchemaError("T must match the length of p");
    HSeries<PolyVector> ts(order, GElement(ctx));
    for (std::size_t k = 0; k <= order; ++k) ts[k] = gelement_from_json(t[k], ctx);
    sol.t = std::move(ts);
  }
  return sol;
}

Json to_json(const ObstructionReport& r) {
  return Json{{"obstruction", true},
              {"order", r.order},
              {"kind", r.kind == ObstructionReport::Kind::lift_failure ? "lift_failure" : "poisson_failure"},
              {"element", to_json(r.obstruction)}};
}

Json to_json(const ResidualReport& r) {
  Json orders = Json::array();
  for (std::size_t k = 0; k < r.mc.size(); ++k) {
    orders.push_back(Json{{"h", k},
                          {"koszul", to_json(r.koszul[k])},
                          {"poisson", to_json(r.poisson[k])},
                          {"residual", to_json(r.mc[k])}});
  }
  return Json{{"all_zero", r.all_zero()},
              {"consistent", r.consistent},
              {"witness_ok", r.witness_ok},
              {"orders", orders}};
}

}  // namespace unfold
