#include "unfold/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace unfold {

namespace {

// Coefficients of h^0, h^1, ...
using HPoly = std::vector<GElement>;

class Parser {
 public:
  Parser(std::string_view text, ContextPtr ctx, bool allow_h, std::size_t order)
      : text_(text), ctx_(std::move(ctx)), allow_h_(allow_h), order_(order) {}

  HPoly parse() {
    skip_ws();
    if (at_end()) fail("empty expression");
    HPoly v = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  HPoly zero() const { return {}; }
  HPoly scalar(const Rational& q) const { return {GElement(Polynomial::constant(ctx_, q))}; }

  void trim(HPoly& v) const {
    if (allow_h_ && v.size() > order_ + 1) v.resize(order_ + 1);
    while (!v.empty() && v.back().is_zero()) v.pop_back();
  }

  HPoly add(HPoly a, const HPoly& b, bool negate) const {
    if (a.size() < b.size()) a.resize(b.size(), GElement(ctx_));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] += negate ? -b[k] : b[k];
    trim(a);
    return a;
  }

  HPoly mul(const HPoly& a, const HPoly& b) const {
    if (a.empty() || b.empty()) return {};
    HPoly out(a.size() + b.size() - 1, GElement(ctx_));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (allow_h_ && i + j > order_) continue;
        out[i + j] += a[i] * b[j];
      }
    trim(out);
    return out;
  }

  HPoly expr() {
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    HPoly acc = add(zero(), term(), negate);
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      acc = add(std::move(acc), term(), c == '-');
    }
    return acc;
  }

  HPoly term() {
    HPoly acc = factor();
    while (accept('*')) acc = mul(acc, factor());
    return acc;
  }

  HPoly factor() {
    HPoly b = base();
    if (accept('^')) {
      skip_ws();
      unsigned long e = nat();
      HPoly r = scalar(1);
      for (unsigned long i = 0; i < e; ++i) {
        r = mul(r, b);
        if (r.empty()) break;
      }
      return r;
    }
    return b;
  }

  unsigned long nat() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a natural number");
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    auto digits = text_.substr(start, pos_ - start);
    if (digits.size() > 9) {
      pos_ = start;
      fail("number too large");
    }
    return std::stoul(std::string(digits));
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  HPoly base() {
    skip_ws();
    char c = peek();
    if (at_end()) fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer denominator");
        std::size_t at = pos_;
        den = integer();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
      }
      Rational q(num, den);
      q.canonicalize();
      return scalar(q);
    }
    if (c == '(') {
      ++pos_;
      HPoly v = expr();
      expect(')');
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "D") {
        skip_ws();
        if (peek() != '(') fail("expected '(' after D");
        return wedge();
      }
      if (name == "E") return HPoly{GElement::eps(ctx_)};
      if (name == "h") {
        if (!allow_h_) {
          pos_ = start;
          fail("'h' is only allowed in series input");
        }
        return trimmed({GElement(ctx_), GElement(Polynomial::constant(ctx_, 1))});
      }
      auto idx = ctx_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return {GElement(Polynomial::variable(ctx_, *idx))};
    }
    fail(std::string("unexpected '") + c + "'");
  }

  HPoly trimmed(HPoly v) const {
    trim(v);
    return v;
  }

  HPoly wedge() {
    expect('(');
    std::vector<std::size_t> idx;
    std::uint64_t seen = 0;
    do {
      skip_ws();
      std::size_t at = pos_;
      unsigned long i = nat();
      if (i == 0 || i > ctx_->n()) {
        pos_ = at;
        fail("wedge index " + std::to_string(i) + " out of range 1.." + std::to_string(ctx_->n()));
      }
      std::uint64_t bit = std::uint64_t{1} << (i - 1);
      if (seen & bit) {
        pos_ = at;
        fail("repeated wedge index " + std::to_string(i));
      }
      seen |= bit;
      idx.push_back(i - 1);
    } while (accept(','));
    expect(')');
    return {GElement::wedge(ctx_, idx, Polynomial::constant(ctx_, 1))};
  }

  std::string_view text_;
  ContextPtr ctx_;
  bool allow_h_;
  std::size_t order_;
  std::size_t pos_ = 0;
};

}  // namespace

GElement parse_gelement(std::string_view text, const ContextPtr& ctx) {
  HPoly v = Parser(text, ctx, false, 0).parse();
  return v.empty() ? GElement(ctx) : v[0];
}

Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx) {
  GElement g = parse_gelement(text, ctx);
  for (const auto& [k, c] : g.terms())
    if (k.eps != 0 || k.odd != 0) throw ParseError(0, "expected a polynomial, found E or D(...)");
  return g.is_zero() ? Polynomial(ctx) : g.as_function();
}

HSeries<GElement> parse_gseries(std::string_view text, const ContextPtr& ctx, std::size_t order) {
  HPoly v = Parser(text, ctx, true, order).parse();
  v.resize(order + 1, GElement(ctx));
  return HSeries<GElement>(order, std::move(v), GElement(ctx));
}

HSeries<Polynomial> parse_poly_series(std::string_view text, const ContextPtr& ctx, std::size_t order) {
  auto g = parse_gseries(text, ctx, order);
  std::vector<Polynomial> out;
  for (const auto& c : g.coeffs()) {
    for (const auto& [k, p] : c.terms())
      if (k.eps != 0 || k.odd != 0) throw ParseError(0, "expected a polynomial series, found E or D(...)");
    out.push_back(c.is_zero() ? Polynomial(ctx) : c.as_function());
  }
  return HSeries<Polynomial>(order, std::move(out), Polynomial(ctx));
}

ContextPtr parse_variables(std::string_view list) {
  std::vector<std::string> names;
  std::string cur;
  for (char c : list) {
    if (c == ',') {
      names.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  names.push_back(cur);
  return RingContext::make(std::move(names));
}

}  // namespace unfold
