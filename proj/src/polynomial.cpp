#include "unfold/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace unfold {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

}  // namespace

RingContext::RingContext(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("ring needs at least one variable");
  std::set<std::string> seen;
  for (const auto& v : names_) {
    if (!valid_identifier(v)) throw std::invalid_argument("invalid variable name '" + v + "'");
    if (v == "h" || v == "E" || v == "D")
      throw std::invalid_argument("variable name '" + v + "' is reserved");
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate variable name '" + v + "'");
  }
}

std::shared_ptr<const RingContext> RingContext::make(std::vector<std::string> names) {
  return std::make_shared<const RingContext>(std::move(names));
}

std::optional<std::size_t> RingContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

ContextPtr merge_context(const ContextPtr& a, const ContextPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (!same_context(a, b)) throw ContextMismatch("polynomials live in different rings");
  return a;
}

// ---------------------------------------------------------------------------
// Monomials

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] > other.exps[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.exps[i] = a.exps[i] + b.exps[i];
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.exps[i] = a.exps[i] - b.exps[i];
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.exps[i] = std::max(a.exps[i], b.exps[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.exps[i] && b.exps[i]) return false;
  return true;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // x_1 is the smallest variable: the monomial with the smaller x_1 power wins.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? 1 : -1;
  }
  return 0;
}

int lex_compare(const Monomial& a, const Monomial& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial Polynomial::constant(ContextPtr ctx, const Rational& c) {
  Polynomial p(ctx);
  if (c != 0) p.terms_.push_back({Monomial(ctx->n()), c});
  return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, std::size_t i) {
  if (i >= ctx->n()) throw std::out_of_range("variable index out of range");
  Monomial m(ctx->n());
  m.exps[i] = 1;
  return monomial(std::move(ctx), std::move(m));
}

Polynomial Polynomial::monomial(ContextPtr ctx, Monomial m, const Rational& c) {
  if (m.size() != ctx->n()) throw std::invalid_argument("monomial length does not match ring");
  Polynomial p(std::move(ctx));
  if (c != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

Polynomial Polynomial::from_terms(ContextPtr ctx, std::vector<Term> terms) {
  std::map<Monomial, Rational, GrevlexGreater> acc;
  for (auto& t : terms) {
    if (t.mono.size() != ctx->n()) throw std::invalid_argument("monomial length does not match ring");
    acc[std::move(t.mono)] += t.coeff;
  }
  Polynomial p(std::move(ctx));
  for (auto& [m, c] : acc)
    if (c != 0) p.terms_.push_back({m, c});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return 0;
}

long Polynomial::total_degree() const {
  return terms_.empty() ? -1 : static_cast<long>(terms_.front().mono.degree());
}

long Polynomial::degree_in(std::size_t i) const {
  long d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<long>(t.mono[i]));
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  ctx_ = merge_context(ctx_, o.ctx_);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    int c = grevlex_compare(i->mono, j->mono);
    if (c > 0) {
      out.push_back(std::move(*i++));
    } else if (c < 0) {
      out.push_back(*j++);
    } else {
      Rational s = i->coeff + j->coeff;
      if (s != 0) out.push_back({std::move(i->mono), s});
      ++i;
      ++j;
    }
  }
  for (; i != terms_.end(); ++i) out.push_back(std::move(*i));
  for (; j != o.terms_.end(); ++j) out.push_back(*j);
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r(merge_context(a.ctx_, b.ctx_));
  if (a.is_zero() || b.is_zero()) return r;
  std::map<Monomial, Rational, GrevlexGreater> acc;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coeff * t.coeff;
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, c});
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial r(ctx_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // Multiplication by a monomial preserves the (multiplicative) order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  if (!ctx_) return e == 0 ? Polynomial() : *this;
  Polynomial result = constant(ctx_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial partial_derivative(const Polynomial& f, std::size_t i) {
  if (f.context() && i >= f.nvars()) throw std::out_of_range("partial derivative index out of range");
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (t.mono[i] == 0) continue;
    Term d = t;
    d.coeff *= t.mono[i];
    d.mono[i] -= 1;
    out.push_back(std::move(d));
  }
  if (!f.context()) return f;
  return Polynomial::from_terms(f.context(), std::move(out));
}

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  ContextPtr ctx = merge_context(a.context(), b.context());
  Polynomial q(ctx);
  Polynomial r = a;
  const Term& lead = b.terms().front();
  // Grevlex is a monomial order, so the leading term of r must be produced
  // by lead(q) * lead(b) when b | r.
  while (!r.is_zero()) {
    const Term& t = r.terms().front();
    if (!lead.mono.divides(t.mono)) return std::nullopt;
    Monomial m = t.mono / lead.mono;
    Rational c = t.coeff / lead.coeff;
    q += Polynomial::monomial(ctx, m, c);
    r -= b.mul_term(m, c);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Substitutions

Substitution::Substitution(std::vector<Polynomial> images) : images_(std::move(images)) {
  ContextPtr ctx;
  for (const auto& p : images_) ctx = merge_context(ctx, p.context());
}

Substitution Substitution::identity(const ContextPtr& ctx) {
  std::vector<Polynomial> imgs;
  for (std::size_t i = 0; i < ctx->n(); ++i) imgs.push_back(Polynomial::variable(ctx, i));
  return Substitution(std::move(imgs));
}

bool Substitution::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const auto& t = images_[i].terms();
    if (t.size() != 1 || t[0].coeff != 1 || t[0].mono.degree() != 1 || t[0].mono[i] != 1) return false;
  }
  return true;
}

Substitution Substitution::then(const Substitution& next) const {
  std::vector<Polynomial> imgs;
  imgs.reserve(images_.size());
  for (const auto& p : images_) imgs.push_back(substitute(p, next));
  return Substitution(std::move(imgs));
}

Polynomial substitute(const Polynomial& f, const Substitution& sigma) {
  if (f.is_zero()) return f;
  if (sigma.arity() != f.nvars()) throw ContextMismatch("substitution arity does not match ring");
  ContextPtr ctx = f.context();
  for (const auto& img : sigma.images()) ctx = merge_context(ctx, img.context());
  // Cache powers of each image.
  std::vector<std::vector<Polynomial>> powers(sigma.arity());
  auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(Polynomial::constant(ctx, 1));
    while (v.size() <= e) v.push_back(v.back() * sigma.images()[i]);
    return v[e];
  };
  Polynomial out(ctx);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(ctx, t.coeff);
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      if (t.mono[i]) term *= power(i, t.mono[i]);
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_monomial(const ContextPtr& ctx, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += '*';
    s += ctx->name(i);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string format(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    if (c < 0) {
      out += '-';
      c = -c;
    } else if (!first) {
      out += '+';
    }
    first = false;
    if (t.mono.is_one()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + '*';
      out += format_monomial(p.context(), t.mono);
    }
  }
  return out;
}

}  // namespace unfold
