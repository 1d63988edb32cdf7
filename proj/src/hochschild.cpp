#include "unfold/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace unfold {

namespace {

Polynomial derivative_of(const Polynomial& b, const Monomial& alpha) {
  Polynomial r = b;
  for (std::size_t v = 0; v < alpha.size(); ++v)
    for (std::uint32_t t = 0; t < alpha[v] && !r.is_zero(); ++t) r = partial_derivative(r, v);
  return r;
}

PolyDiffOperator differentiate_once(const PolyDiffOperator& p, std::size_t v) {
  PolyDiffOperator out(p.context(), p.arity());
  for (const auto& [key, c] : p.terms()) {
    out.add_term(key, partial_derivative(c, v));
    for (std::size_t m = 0; m < key.size(); ++m) {
      auto k2 = key;
      k2[m][v] += 1;
      out.add_term(k2, c);
    }
  }
  return out;
}

// All strictly increasing l-tuples in [0, p).
void for_each_selection(std::size_t p, std::size_t l, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> sel(l);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t from) {
    if (j == l) {
      fn(sel);
      return;
    }
    for (std::size_t s = from; s + (l - j) <= p; ++s) {
      sel[j] = s;
      rec(j + 1, s + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

PolyDiffOperator PolyDiffOperator::function(const Polynomial& a) {
  PolyDiffOperator op(a.context(), 0);
  op.add_term({}, a);
  return op;
}

PolyDiffOperator PolyDiffOperator::identity(const ContextPtr& ctx) {
  return derivative(Polynomial::constant(ctx, 1), Monomial(ctx->n()));
}

PolyDiffOperator PolyDiffOperator::multiplication(const ContextPtr& ctx) {
  PolyDiffOperator op(ctx, 2);
  op.add_term({Monomial(ctx->n()), Monomial(ctx->n())}, Polynomial::constant(ctx, 1));
  return op;
}

PolyDiffOperator PolyDiffOperator::derivative(const Polynomial& c, const Monomial& alpha) {
  PolyDiffOperator op(c.context(), 1);
  op.add_term({alpha}, c);
  return op;
}

std::uint64_t PolyDiffOperator::max_order() const {
  std::uint64_t m = 0;
  for (const auto& [key, c] : terms_)
    for (const auto& a : key) m = std::max(m, a.degree());
  return m;
}

void PolyDiffOperator::add_term(const Key& alphas, const Polynomial& coeff) {
  if (alphas.size() != arity_) throw std::invalid_argument("term arity does not match operator arity");
  if (coeff.is_zero()) return;
  ctx_ = merge_context(ctx_, coeff.context());
  for (const auto& a : alphas)
    if (a.size() != ctx_->n()) throw std::invalid_argument("multi-index length does not match ring");
  auto it = terms_.find(alphas);
  if (it == terms_.end()) {
    terms_.emplace(alphas, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyDiffOperator PolyDiffOperator::operator-() const {
  PolyDiffOperator r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

PolyDiffOperator& PolyDiffOperator::operator+=(const PolyDiffOperator& o) {
  if (o.is_zero() && o.arity_ != arity_ && is_zero()) return *this;
  if (o.arity_ != arity_) throw std::invalid_argument("cannot add cochains of different arity");
  ctx_ = merge_context(ctx_, o.ctx_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

PolyDiffOperator& PolyDiffOperator::operator-=(const PolyDiffOperator& o) { return *this += -o; }

PolyDiffOperator& PolyDiffOperator::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, p] : terms_) p *= c;
  return *this;
}

Polynomial apply(const PolyDiffOperator& p, const std::vector<Polynomial>& args) {
  if (args.size() != p.arity()) throw std::invalid_argument("cochain applied to wrong number of arguments");
  Polynomial out(p.context());
  for (const auto& [key, c] : p.terms()) {
    Polynomial prod = c;
    for (std::size_t j = 0; j < key.size() && !prod.is_zero(); ++j) prod *= derivative_of(args[j], key[j]);
    out += prod;
  }
  return out;
}

PolyDiffOperator cup(const PolyDiffOperator& p, const PolyDiffOperator& q) {
  PolyDiffOperator out(merge_context(p.context(), q.context()), p.arity() + q.arity());
  for (const auto& [kp, cp] : p.terms()) {
    for (const auto& [kq, cq] : q.terms()) {
      auto key = kp;
      key.insert(key.end(), kq.begin(), kq.end());
      out.add_term(key, cp * cq);
    }
  }
  return out;
}

PolyDiffOperator differentiate_output(const PolyDiffOperator& p, const Monomial& alpha) {
  PolyDiffOperator r = p;
  for (std::size_t v = 0; v < alpha.size(); ++v)
    for (std::uint32_t t = 0; t < alpha[v]; ++t) r = differentiate_once(r, v);
  return r;
}

PolyDiffOperator brace(const PolyDiffOperator& p, const std::vector<PolyDiffOperator>& qs) {
  const std::size_t l = qs.size();
  if (l > p.arity()) throw std::invalid_argument("brace has more insertions than slots");
  ContextPtr ctx = p.context();
  std::size_t out_arity = p.arity();
  for (const auto& q : qs) {
    ctx = merge_context(ctx, q.context());
    out_arity = out_arity + q.arity() - 1;
  }
  PolyDiffOperator out(ctx, out_arity);
  if (l == 0) return p;

  for (const auto& [key, c] : p.terms()) {
    for_each_selection(p.arity(), l, [&](const std::vector<std::size_t>& sel) {
      // Sign (-1)^{sum (q_j - 1) i_j}.
      long shift = 0;
      long exponent = 0;
      for (std::size_t j = 0; j < l; ++j) {
        long q = static_cast<long>(qs[j].arity());
        long i = static_cast<long>(sel[j]) + shift;
        exponent += (q - 1) * i;
        shift += q - 1;
      }
      const bool negative = (exponent % 2 + 2) % 2 == 1;

      std::vector<PolyDiffOperator> inserted;
      for (std::size_t j = 0; j < l; ++j) inserted.push_back(differentiate_output(qs[j], key[sel[j]]));

      // Cartesian product over the terms of the inserted operators.
      std::vector<std::pair<PolyDiffOperator::Key, Polynomial>> partial{{{}, c}};
      std::size_t next = 0;
      for (std::size_t slot = 0; slot < p.arity(); ++slot) {
        std::vector<std::pair<PolyDiffOperator::Key, Polynomial>> grown;
        if (next < l && sel[next] == slot) {
          for (const auto& [k0, c0] : partial)
            for (const auto& [kq, cq] : inserted[next].terms()) {
              auto k = k0;
              k.insert(k.end(), kq.begin(), kq.end());
              grown.emplace_back(std::move(k), c0 * cq);
            }
          ++next;
        } else {
          for (auto& [k0, c0] : partial) {
            auto k = k0;
            k.push_back(key[slot]);
            grown.emplace_back(std::move(k), c0);
          }
        }
        partial = std::move(grown);
      }
      for (auto& [k, cc] : partial) out.add_term(k, negative ? -cc : cc);
    });
  }
  return out;
}

PolyDiffOperator gerstenhaber_bracket(const PolyDiffOperator& p, const PolyDiffOperator& q) {
  ContextPtr ctx = merge_context(p.context(), q.context());
  const long pd = static_cast<long>(p.arity()) - 1;
  const long qd = static_cast<long>(q.arity()) - 1;
  const std::size_t arity = p.arity() + q.arity() - 1;
  if (p.arity() + q.arity() == 0) return PolyDiffOperator(ctx, 0);  // both 0-cochains: bracket vanishes
  PolyDiffOperator out(ctx, arity);
  if (p.arity() > 0) out += brace(p, {q});
  if (q.arity() > 0) {
    PolyDiffOperator other = brace(q, {p});
    if (((pd * qd) % 2 + 2) % 2 == 0) {
      out -= other;
    } else {
      out += other;
    }
  }
  return out;
}

PolyDiffOperator hochschild_differential(const PolyDiffOperator& p) {
  return gerstenhaber_bracket(PolyDiffOperator::multiplication(p.context()), p);
}

Polynomial classical_coboundary(const PolyDiffOperator& p, const std::vector<Polynomial>& args) {
  const std::size_t k = p.arity();
  if (args.size() != k + 1) throw std::invalid_argument("coboundary needs arity + 1 arguments");
  Polynomial out = args[0] * unfold::apply(p, {args.begin() + 1, args.end()});
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<Polynomial> merged(args.begin(), args.begin() + i - 1);
    merged.push_back(args[i - 1] * args[i]);
    merged.insert(merged.end(), args.begin() + i + 1, args.end());
    Polynomial v = unfold::apply(p, merged);
    out += (i % 2) ? -v : v;
  }
  Polynomial last = unfold::apply(p, {args.begin(), args.end() - 1}) * args[k];
  out += ((k + 1) % 2) ? -last : last;
  return out;
}

PolyDiffOperator hkr(const PolyVector& x) {
  if (!x.is_eps_free()) throw DegreeError("hkr is defined on eps-free polyvectors only");
  const ContextPtr& ctx = x.context();
  if (x.is_zero()) return PolyDiffOperator(ctx, 0);
  if (!x.is_homogeneous()) throw DegreeError("hkr expects a homogeneous polyvector");
  const std::size_t k = x.degree();
  PolyDiffOperator out(ctx, k);
  Rational fact = 1;
  for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<unsigned long>(i);
  for (const auto& [key, a] : x.terms()) {
    auto idx = key.indices();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      // Parity by counting inversions.
      std::size_t inv = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          if (perm[i] > perm[j]) ++inv;
      PolyDiffOperator::Key alphas;
      for (std::size_t j = 0; j < k; ++j) {
        Monomial m(ctx->n());
        m[idx[perm[j]]] = 1;
        alphas.push_back(std::move(m));
      }
      Polynomial c = a * (Rational(1) / fact);
      out.add_term(alphas, (inv % 2) ? -c : c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

std::string format(const PolyDiffOperator& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    out += "(" + format(c) + ")";
    for (const auto& a : key) out += " d[" + format_monomial(p.context(), a) + "]";
  }
  return out;
}

}  // namespace unfold
