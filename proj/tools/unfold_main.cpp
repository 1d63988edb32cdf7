// unfold: command-line front end.
//
// Exit codes: 0 success, 1 usage or parse error, 2 validation failure,
// 3 Groebner degree guard tripped.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unfold/groebner.hpp"
#include "unfold/hochschild.hpp"
#include "unfold/json_io.hpp"
#include "unfold/parser.hpp"
#include "unfold/singularity.hpp"
#include "unfold/unfolding.hpp"

using namespace unfold;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed input that the mathematics rejects.
// A ParseError tagged with the flag it came from.
struct FlagParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string vars, f, p, s, t;
  std::string op_p;
  std::vector<std::string> op_q;
  std::size_t order = kDefaultTruncation;
  bool general = false;
  std::string monomial_order = "grevlex";
  std::string format = "text";
  std::uint64_t max_degree = 64;
};

// Keeps the JSON report and its text rendering side by side.
class Report {
 public:
  void add(const std::string& key, Json value, std::string text) {
    json_[key] = std::move(value);
    lines_.emplace_back(key, std::move(text));
  }
  void add(const std::string& key, const Json& value) { add(key, value, value.is_string() ? value.get<std::string>() : value.dump()); }
  void add_all(const Json& obj) {
    for (const auto& [k, v] : obj.items()) add(k, v);
  }
  /// The report describes a validation failure (exit 2).
  bool failed = false;

  void print(bool as_json) const {
    if (as_json) {
      std::cout << json_.dump() << "\n";
      return;
    }
    for (const auto& [k, t] : lines_) std::cout << k << ": " << t << "\n";
  }

 private:
  Json json_ = Json::object();
  std::vector<std::pair<std::string, std::string>> lines_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string show(const Polynomial& p) { return format(p); }
std::string show(const GElement& g) { return format(g); }

template <class V>
std::string show_series(const HSeries<V>& s, std::size_t upto) {
  std::vector<std::string> parts;
  for (std::size_t k = 0; k <= upto && k <= s.order(); ++k)
    if (!s[k].is_zero()) parts.push_back("(" + show(s[k]) + ")*h^" + std::to_string(k));
  return parts.empty() ? "0" : join(parts, " + ");
}

class Runner {
 public:
  Runner(const Args& a, std::string sub) : a_(a), sub_(std::move(sub)) {
    opts_.max_degree = a_.max_degree;
    if (a_.monomial_order == "lex") order_.kind = TermOrder::lex;
  }

  Report run();

 private:
  const std::string& need(const std::string& value, const char* flag) const {
    if (value.empty()) throw UsageError(sub_ + " requires " + flag);
    return value;
  }

  ContextPtr ctx() {
    if (!ctx_) ctx_ = parse_variables(need(a_.vars, "--vars"));
    return ctx_;
  }

  template <class F>
  auto parsed(const char* flag, F&& fn) {
    try {
      return fn();
    } catch (const ParseError& e) {
      throw FlagParseError(std::string(flag) + ": " + e.what());
    }
  }

  Polynomial poly(const std::string& text, const char* flag) {
    need(text, flag);
    return parsed(flag, [&] { return parse_polynomial(text, ctx()); });
  }
  GElement gel(const std::string& text, const char* flag) {
    need(text, flag);
    return parsed(flag, [&] { return parse_gelement(text, ctx()); });
  }

  // "mu", an operator JSON object, or a polyvector taken through HKR.
  PolyDiffOperator op(const std::string& text, const char* flag) {
    need(text, flag);
    if (text == "mu") return PolyDiffOperator::multiplication(ctx());
    if (!text.empty() && text.front() == '{') {
      try {
        return operator_from_json(Json::parse(text), ctx());
      } catch (const Json::exception& e) {
        throw UsageError(std::string(flag) + ": invalid operator JSON: " + e.what());
      } catch (const JsonSchemaError& e) {
        throw UsageError(std::string(flag) + ": invalid operator JSON: " + e.what());
      }
    }
    return hkr(gel(text, flag));
  }

  JacobianData jac(const Polynomial& f) {
    if (order_.kind == TermOrder::grevlex) return jacobian(f, opts_);
    JacobianData d;
    for (std::size_t i = 0; i < f.nvars(); ++i) d.partials.push_back(partial_derivative(f, i));
    d.gb = buchberger(d.partials, order_, opts_);
    if (auto sm = standard_monomials(d.gb)) {
      d.milnor = sm->size();
      d.w_basis = std::move(*sm);
    }
    return d;
  }

  void add_monomials(Report& r, const std::string& key, const std::vector<Monomial>& ms) {
    Json j = Json::array();
    std::vector<std::string> t;
    for (const auto& m : ms) {
      j.push_back(monomial_to_json(m));
      t.push_back(format_monomial(ctx_, m));
    }
    r.add(key, j, "[" + join(t, ", ") + "]");
  }

  void add_jacobian(Report& r, const JacobianData& d) {
    r.add("milnor", d.milnor ? Json(*d.milnor) : Json("infinite"));
    add_monomials(r, "w_basis", d.w_basis);
    r.add("isolated", Json(d.milnor.has_value()));
  }

  template <class V>
  void add_value(Report& r, const std::string& key, const V& v) {
    r.add(key, to_json(v), format(v));
  }

  void add_solution(Report& r, const MCSolution& sol, std::size_t upto) {
    Json j = to_json(sol);
    r.add("order", j["order"]);
    r.add("p", j["p"], show_series(sol.p, upto));
    r.add("S", j["S"], show_series(sol.s, upto));
    if (sol.t) r.add("T", j["T"], show_series(*sol.t, upto));
    r.add("residual_checked", j["residual_checked"]);
  }

  Report milnor();
  Report jacobian_cmd();
  Report qc_subspace_cmd();
  Report monicize_cmd();
  Report schouten();
  Report koszul();
  Report qc_check();
  Report qc_norm();
  Report quantize();
  Report mc_verify_cmd();
  Report hh(const std::string& which);
  Report hkr_cmd();

  const Args& a_;
  std::string sub_;
  GroebnerOptions opts_;
  MonomialOrder order_;
  ContextPtr ctx_;
};

Report Runner::milnor() {
  Report r;
  add_jacobian(r, jac(poly(a_.f, "--f")));
  return r;
}

Report Runner::jacobian_cmd() {
  Report r;
  auto d = jac(poly(a_.f, "--f"));
  Json partials = Json::array();
  std::vector<std::string> pt;
  for (const auto& p : d.partials) {
    partials.push_back(to_json(p));
    pt.push_back(format(p));
  }
  r.add("partials", partials, "[" + join(pt, ", ") + "]");
  std::vector<std::string> gt;
  for (const auto& g : d.gb.generators()) gt.push_back(format(g));
  r.add("groebner_basis", to_json(d.gb), "[" + join(gt, ", ") + "]");
  add_jacobian(r, d);
  if (d.warning) std::cerr << "warning: " << *d.warning << "\n";
  return r;
}

Report Runner::qc_subspace_cmd() {
  Report r;
  auto d = jac(poly(a_.f, "--f"));
  if (!d.milnor) throw NotIsolated("f does not define an isolated singularity (infinite Milnor number)");
  r.add("dimension", Json(*d.milnor));
  add_monomials(r, "w_basis", d.w_basis);
  return r;
}

Report Runner::monicize_cmd() {
  Report r;
  auto f = poly(a_.f, "--f");
  auto m = monicize(f);
  Json imgs = Json::array();
  std::vector<std::string> it;
  for (std::size_t i = 0; i < m.sigma.images().size(); ++i) {
    imgs.push_back(to_json(m.sigma.images()[i]));
    it.push_back(ctx_->name(i) + " -> " + format(m.sigma.images()[i]));
  }
  r.add("substitution", imgs, join(it, ", "));
  Json ex = Json::array();
  std::vector<std::string> et;
  for (auto e : m.exponents) {
    ex.push_back(e);
    et.push_back(std::to_string(e));
  }
  r.add("exponents", ex, "[" + join(et, ", ") + "]");
  add_value(r, "image", m.image);
  r.add("monic", Json(is_monic_in_last(m.image)));
  return r;
}

Report Runner::schouten() {
  Report r;
  auto x = gel(a_.s, "--S"), y = gel(a_.t, "--T");
  add_value(r, "bracket", schouten_bracket(x, y));
  return r;
}

Report Runner::koszul() {
  Report r;
  auto f = poly(a_.f, "--f");
  auto z = gel(a_.s, "--S");
  auto t = koszul_lift(f, z, opts_);
  if (!t) throw LiftError(LiftError::Kind::not_a_cycle, "no preimage under ad_f");
  add_value(r, "T", *t);
  return r;
}

Report Runner::qc_check() {
  Report r;
  auto f = poly(a_.f, "--f");
  auto p = poly(a_.p, "--p");
  auto s = gel(a_.s, "--S");
  auto v = qc_validate(f, p, s, opts_);
  if (auto* ok = std::get_if<QuasiClassicalDatum>(&v)) {
    r.add("valid", Json(true));
    add_value(r, "p_normal", ok->p_normal);
    add_value(r, "S2", ok->s2);
    return r;
  }
  static const char* kinds[] = {"not_isolated", "bad_degree", "not_koszul_cycle", "not_poisson", "not_extendable"};
  r.add("valid", Json(false));
  Json list = Json::array();
  std::vector<std::string> lt;
  for (const auto& b : std::get<std::vector<QcViolation>>(v)) {
    list.push_back(Json{{"kind", kinds[static_cast<int>(b.kind)]}, {"message", b.message}});
    lt.push_back(b.message);
  }
  r.add("violations", list, join(lt, "; "));
  r.failed = true;
  return r;
}

Report Runner::qc_norm() {
  Report r;
  auto f = poly(a_.f, "--f");
  auto n = qc_normalize(f, poly(a_.p, "--p"), opts_);
  add_value(r, "w_part", n.w_part);
  Json cof = Json::array();
  std::vector<std::string> ct;
  for (const auto& c : n.cofactors) {
    cof.push_back(to_json(c));
    ct.push_back(format(c));
  }
  r.add("cofactors", cof, "[" + join(ct, ", ") + "]");
  return r;
}

Report Runner::quantize() {
  Report r;
  auto f = poly(a_.f, "--f");
  auto s1 = gel(a_.s, "--S");
  if (!a_.general) {
    auto sol = quantize_n3(f, poly(a_.p, "--p"), s1, opts_);
    add_solution(r, sol, sol.p.order());
    r.add("residual_zero", Json(mc_verify(f, sol).all_zero()));
    return r;
  }
  // The prober accepts p as a series in h; its h^1 part is p_1.
  auto ps = parsed("--p", [&] { return parse_poly_series(need(a_.p, "--p"), ctx(), a_.order); });
  if (!ps[0].is_zero()) {
    // A bare polynomial without h is read as p_1.
    for (std::size_t k = 1; k <= a_.order; ++k)
      if (!ps[k].is_zero()) throw UsageError("--p: the h^0 coefficient of p must vanish");
    ps[1] = ps[0];
    ps[0] = Polynomial(ctx_);
  }
  GeneralOptions go;
  go.max_order = a_.order;
  go.groebner = opts_;
  go.p_higher.assign(a_.order + 1, Polynomial(ctx_));
  for (std::size_t k = 2; k <= a_.order; ++k) go.p_higher[k] = ps[k];
  auto res = quantize_general(f, ps[1], s1, go);
  if (auto* ob = std::get_if<ObstructionReport>(&res)) {
    r.add_all(to_json(*ob));
    r.add("element", to_json(ob->obstruction), format(ob->obstruction));
    r.failed = true;
    return r;
  }
  const auto& sol = std::get<MCSolution>(res);
  add_solution(r, sol, sol.p.order());
  r.add("residual_zero", Json(mc_verify(f, sol).all_zero()));
  return r;
}

Report Runner::mc_verify_cmd() {
  Report r;
  auto f = poly(a_.f, "--f");
  auto ps = parsed("--p", [&] { return parse_poly_series(need(a_.p, "--p"), ctx(), a_.order); });
  auto gs = parsed("--S", [&] { return parse_gseries(need(a_.s, "--S"), ctx(), a_.order); });
  MCSolution sol{ps, HSeries<PolyVector>(a_.order, GElement(ctx_)), std::nullopt, false};
  for (std::size_t k = 0; k <= a_.order; ++k) sol.s[k] = gs[k];
  if (!a_.t.empty()) sol.t = parsed("--T", [&] { return parse_gseries(a_.t, ctx_, a_.order); });
  auto rep = mc_verify(f, sol);
  Json j = to_json(rep);
  r.add("all_zero", j["all_zero"]);
  r.add("consistent", j["consistent"]);
  r.add("witness_ok", j["witness_ok"]);
  std::vector<std::string> nz;
  for (std::size_t k = 0; k < rep.mc.size(); ++k)
    if (!rep.mc[k].is_zero()) nz.push_back("h^" + std::to_string(k) + ": " + format(rep.mc[k]));
  r.add("orders", j["orders"], nz.empty() ? "all residuals vanish" : join(nz, "; "));
  if (!rep.all_zero()) r.failed = true;
  return r;
}

Report Runner::hh(const std::string& which) {
  Report r;
  auto p = op(a_.op_p, "--P");
  PolyDiffOperator out;
  if (which == "hh-d") {
    out = hochschild_differential(p);
  } else {
    if (a_.op_q.empty()) throw UsageError(sub_ + " requires --Q");
    std::vector<PolyDiffOperator> qs;
    for (const auto& q : a_.op_q) qs.push_back(op(q, "--Q"));
    if (which != "hh-brace" && qs.size() != 1) throw UsageError(sub_ + " takes exactly one --Q");
    if (which == "hh-cup") out = cup(p, qs[0]);
    if (which == "hh-bracket") out = gerstenhaber_bracket(p, qs[0]);
    if (which == "hh-brace") {
      if (qs.size() > p.arity()) throw ValidationFailure("more insertions than the arity of P");
      out = brace(p, qs);
    }
  }
  r.add("arity", Json(out.arity()));
  add_value(r, "operator", out);
  return r;
}

Report Runner::hkr_cmd() {
  Report r;
  auto out = hkr(gel(a_.s, "--S"));
  r.add("arity", Json(out.arity()));
  add_value(r, "operator", out);
  return r;
}

}  // namespace

namespace {

Report Runner::run() {
  if (sub_ == "milnor") return milnor();
  if (sub_ == "jacobian") return jacobian_cmd();
  if (sub_ == "qc-subspace") return qc_subspace_cmd();
  if (sub_ == "monicize") return monicize_cmd();
  if (sub_ == "schouten") return schouten();
  if (sub_ == "koszul-lift") return koszul();
  if (sub_ == "qc-check") return qc_check();
  if (sub_ == "qc-normalize") return qc_norm();
  if (sub_ == "quantize") return quantize();
  if (sub_ == "mc-verify") return mc_verify_cmd();
  if (sub_ == "hkr") return hkr_cmd();
  return hh(sub_);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncommutative unfoldings of isolated hypersurface singularities"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--vars", a.vars, "Comma-separated variable names");
  app.add_option("--f", a.f, "The singularity f");
  app.add_option("--p", a.p, "Function p (a series in h for --general and mc-verify)");
  app.add_option("--S", a.s, "Polyvector S (a series in h for mc-verify)");
  app.add_option("--T", a.t, "Polyvector T");
  app.add_option("--P", a.op_p, "Hochschild cochain: mu, operator JSON, or a polyvector mapped by HKR");
  app.add_option("--Q", a.op_q, "Hochschild cochain(s), same forms as --P");
  app.add_option("--order", a.order, "h-truncation order")->check(CLI::PositiveNumber);
  app.add_flag("--general", a.general, "quantize: order-by-order prober");
  app.add_option("--monomial-order", a.monomial_order)->check(CLI::IsMember({"grevlex", "lex"}));
  app.add_option("--format", a.format)->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-degree", a.max_degree, "Groebner degree guard");

  const std::vector<std::pair<const char*, const char*>> subs = {
      {"milnor", "Milnor number and W basis of f"},
      {"jacobian", "Partials, Groebner basis and Milnor number of f"},
      {"qc-subspace", "Monomial basis of W"},
      {"monicize", "Substitution making f monic in the last variable"},
      {"schouten", "Schouten bracket [S, T]"},
      {"koszul-lift", "T with [f, T] = S"},
      {"qc-check", "Check the quasiclassical conditions on (p, S)"},
      {"qc-normalize", "Split p into its W part and Jacobian cofactors"},
      {"quantize", "Maurer-Cartan solution from (p, S)"},
      {"mc-verify", "Residuals of w = p E + S"},
      {"hh-cup", "Cup product P u Q"},
      {"hh-brace", "Brace P{Q...}"},
      {"hh-bracket", "Gerstenhaber bracket [P, Q]"},
      {"hh-d", "Hochschild differential of P"},
      {"hkr", "HKR image of the polyvector S"},
  };
  for (const auto& [name, desc] : subs) app.add_subcommand(name, desc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    Runner runner(a, sub);
    Report r = runner.run();
    r.print(a.format == "json");
    return r.failed ? 2 : 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const FlagParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const GroebnerAbort& e) {
    std::cerr << "error: " << e.what() << " (raise --max-degree)\n";
    return 3;
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotIsolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const LiftError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const QuantizationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // DegreeError and friends: the input has the wrong shape.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
