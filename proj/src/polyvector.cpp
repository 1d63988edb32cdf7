#include "unfold/polyvector.hpp"

#include <bit>

namespace unfold {

namespace {

// Number of set bits in mask strictly below bit k.
unsigned bits_below(std::uint64_t mask, std::size_t k) {
  return static_cast<unsigned>(std::popcount(mask & ((std::uint64_t{1} << k) - 1)));
}

// Sign of D_I ^ D_J as a multiple of D_{I u J}; 0 when I and J intersect.
int merge_sign(std::uint64_t a, std::uint64_t b) {
  if (a & b) return 0;
  unsigned inversions = 0;
  for (std::uint64_t rest = b; rest; rest &= rest - 1) {
    auto j = static_cast<std::size_t>(std::countr_zero(rest));
    // elements of a greater than j
    inversions += static_cast<unsigned>(std::popcount(a >> (j + 1)));
  }
  return (inversions & 1u) ? -1 : 1;
}

}  // namespace

unsigned WedgeKey::wedge_degree() const { return static_cast<unsigned>(std::popcount(odd)); }

std::vector<std::size_t> WedgeKey::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t rest = odd; rest; rest &= rest - 1)
    out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  return out;
}

WedgeKey WedgeKey::from_indices(const std::vector<std::size_t>& idx, std::uint32_t eps) {
  WedgeKey k;
  k.eps = eps;
  for (auto i : idx) {
    if (i >= 64) throw std::out_of_range("at most 64 odd generators are supported");
    k.odd |= std::uint64_t{1} << i;
  }
  return k;
}

bool WedgeKeyLess::operator()(const WedgeKey& a, const WedgeKey& b) const {
  if (a.eps != b.eps) return a.eps < b.eps;
  auto da = a.wedge_degree(), db = b.wedge_degree();
  if (da != db) return da < db;
  if (a.odd == b.odd) return false;
  // Compare the sorted index lists lexicographically: the lowest differing
  // bit belongs to the smaller list.
  std::uint64_t diff = a.odd ^ b.odd;
  std::uint64_t low = diff & (~diff + 1);
  return (a.odd & low) != 0;
}

GElement::GElement(const Polynomial& a) : ctx_(a.context()) {
  if (!a.is_zero()) terms_.emplace(WedgeKey{}, a);
}

GElement GElement::term(ContextPtr ctx, WedgeKey key, Polynomial coeff) {
  GElement g(std::move(ctx));
  if (g.ctx_->n() < 64 && (key.odd >> g.ctx_->n()) != 0)
    throw std::out_of_range("odd index exceeds number of variables");
  g.add_term(key, coeff);
  return g;
}

GElement GElement::odd(ContextPtr ctx, std::size_t i) {
  if (i >= ctx->n()) throw std::out_of_range("odd generator index out of range");
  auto one = Polynomial::constant(ctx, 1);
  return term(ctx, WedgeKey::from_indices({i}), one);
}

GElement GElement::eps(ContextPtr ctx) {
  auto one = Polynomial::constant(ctx, 1);
  return term(ctx, WedgeKey{1, 0}, one);
}

GElement GElement::wedge(ContextPtr ctx, const std::vector<std::size_t>& indices, const Polynomial& a) {
  GElement g = a.is_zero() ? GElement(ctx) : GElement(a);
  g.ctx_ = merge_context(ctx, a.context());
  for (auto i : indices) g = g * odd(ctx, i);
  return g;
}

void GElement::add_term(const WedgeKey& k, const Polynomial& c) {
  if (c.is_zero()) return;
  ctx_ = merge_context(ctx_, c.context());
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial GElement::coefficient(const WedgeKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Polynomial(ctx_) : it->second;
}

bool GElement::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned d = terms_.begin()->first.degree();
  for (const auto& [k, c] : terms_)
    if (k.degree() != d) return false;
  return true;
}

unsigned GElement::degree() const {
  if (terms_.empty() || !is_homogeneous()) throw DegreeError("element is zero or not homogeneous");
  return terms_.begin()->first.degree();
}

bool GElement::is_eps_free() const { return max_eps() == 0; }

std::uint32_t GElement::max_eps() const {
  std::uint32_t e = 0;
  for (const auto& [k, c] : terms_) e = std::max(e, k.eps);
  return e;
}

GElement GElement::eps_part(std::uint32_t e) const {
  GElement g(ctx_);
  for (const auto& [k, c] : terms_)
    if (k.eps == e) g.terms_.emplace(k, c);
  return g;
}

GElement GElement::wedge_part(unsigned d) const {
  GElement g(ctx_);
  for (const auto& [k, c] : terms_)
    if (k.wedge_degree() == d) g.terms_.emplace(k, c);
  return g;
}

Polynomial GElement::as_function() const {
  for (const auto& [k, c] : terms_)
    if (k.eps != 0 || k.odd != 0) throw DegreeError("element is not a function");
  return coefficient(WedgeKey{});
}

GElement GElement::operator-() const {
  GElement g = *this;
  for (auto& [k, c] : g.terms_) c = -c;
  return g;
}

GElement& GElement::operator+=(const GElement& o) {
  ctx_ = merge_context(ctx_, o.ctx_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

GElement& GElement::operator-=(const GElement& o) { return *this += -o; }

GElement& GElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, p] : terms_) p *= c;
  return *this;
}

bool GElement::operator==(const GElement& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto i = terms_.begin();
  for (auto j = o.terms_.begin(); j != o.terms_.end(); ++i, ++j)
    if (!(i->first == j->first) || !(i->second == j->second)) return false;
  return true;
}

GElement operator*(const GElement& a, const GElement& b) {
  GElement out(merge_context(a.context(), b.context()));
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      int s = merge_sign(ka.odd, kb.odd);
      if (s == 0) continue;
      WedgeKey k{ka.eps + kb.eps, ka.odd | kb.odd};
      Polynomial c = ca * cb;
      if (s < 0) c = -c;
      out += GElement::term(out.context(), k, c);
    }
  }
  return out;
}

GElement wedge_mul(const GElement& x, const GElement& y) { return x * y; }

GElement schouten_bracket(const GElement& x, const GElement& y) {
  ContextPtr ctx = merge_context(x.context(), y.context());
  GElement out(ctx);
  if (x.is_zero() || y.is_zero()) return out;
  const std::size_t n = ctx->n();
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        // (right derivative of X by D_i) * (d/dx_i of Y)
        if (kx.odd & bit) {
          std::uint64_t rest = kx.odd & ~bit;
          unsigned after = static_cast<unsigned>(std::popcount(kx.odd)) - 1 - bits_below(kx.odd, i);
          int s = merge_sign(rest, ky.odd);
          if (s != 0) {
            Polynomial c = cx * partial_derivative(cy, i);
            if (!c.is_zero()) {
              if (((after & 1u) ? -1 : 1) * s < 0) c = -c;
              out += GElement::term(ctx, WedgeKey{kx.eps + ky.eps, rest | ky.odd}, c);
            }
          }
        }
        // - (d/dx_i of X) * (left derivative of Y by D_i)
        if (ky.odd & bit) {
          std::uint64_t rest = ky.odd & ~bit;
          unsigned before = bits_below(ky.odd, i);
          int s = merge_sign(kx.odd, rest);
          if (s != 0) {
            Polynomial c = partial_derivative(cx, i) * cy;
            if (!c.is_zero()) {
              if (-((before & 1u) ? -1 : 1) * s < 0) c = -c;
              out += GElement::term(ctx, WedgeKey{kx.eps + ky.eps, kx.odd | rest}, c);
            }
          }
        }
      }
    }
  }
  return out;
}

GElement ad_f(const Polynomial& f, const GElement& x) { return schouten_bracket(GElement(f), x); }

GElement g_differential(const Polynomial& f, const GElement& x) {
  GElement fe = GElement(f) * GElement::eps(merge_context(f.context(), x.context()));
  return -schouten_bracket(fe, x);
}

GElement bivector_square(const GElement& s) {
  for (const auto& [k, c] : s.terms())
    if (k.eps != 0 || k.wedge_degree() != 2) throw DegreeError("bivector_square expects an eps-free bivector");
  return schouten_bracket(s, s);
}

HSeries<GElement> mc_residual(const Polynomial& f, const HSeries<GElement>& w) {
  if (!w[0].is_zero()) throw DegreeError("MC element must have zero h^0 coefficient");
  for (std::size_t k = 1; k <= w.order(); ++k) {
    for (const auto& [key, c] : w[k].terms()) {
      bool eps_line = key.eps == 1 && key.odd == 0;
      bool bivector = key.eps == 0 && key.wedge_degree() == 2;
      if (!eps_line && !bivector)
        throw DegreeError("MC element coefficients must lie in A*E + wedge^2 (h^" + std::to_string(k) + ")");
    }
  }
  auto dw = w.map([&](const GElement& x) { return g_differential(f, x); });
  auto ww = w.convolve(w, [](const GElement& a, const GElement& b) { return schouten_bracket(a, b); });
  HSeries<GElement> out = dw;
  for (std::size_t k = 0; k <= w.order(); ++k) out[k] += ww[k] * Rational(1, 2);
  return out;
}

std::string format(const GElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    std::string suffix;
    if (k.eps == 1) suffix += "*E";
    if (k.eps > 1) suffix += "*E^" + std::to_string(k.eps);
    if (k.odd) {
      suffix += "*D(";
      bool f = true;
      for (auto i : k.indices()) {
        if (!f) suffix += ',';
        f = false;
        suffix += std::to_string(i + 1);
      }
      suffix += ')';
    }
    for (const auto& t : c.terms()) {
      Rational q = t.coeff;
      if (q < 0) {
        out += '-';
        q = -q;
      } else if (!first) {
        out += '+';
      }
      first = false;
      std::string body;
      if (q != 1) body = q.get_str();
      if (!t.mono.is_one()) body += (body.empty() ? "" : "*") + format_monomial(x.context(), t.mono);
      if (body.empty()) {
        out += suffix.empty() ? "1" : suffix.substr(1);
      } else {
        out += body + suffix;
      }
    }
  }
  return out;
}

}  // namespace unfold
