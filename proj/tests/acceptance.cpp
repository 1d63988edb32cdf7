// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "support.hpp"
#include "unfold/hochschild.hpp"
#include "unfold/parser.hpp"
#include "unfold/singularity.hpp"
#include "unfold/unfolding.hpp"

using namespace unfold;
using namespace unfold::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Polynomial P(const std::string& s, const ContextPtr& c) { return parse_polynomial(s, c); }

Rational sign(long e) { return (e % 2 + 2) % 2 ? -1 : 1; }

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

GElement random_trivector(Rng& rng, const ContextPtr& c) {
  for (;;) {
    auto a = random_poly(rng, c, 2, 4);
    if (!a.is_zero()) return GElement::wedge(c, {0, 1, 2}, a);
  }
}

Polynomial random_w_element(Rng& rng, const std::vector<Monomial>& w, const ContextPtr& c) {
  Polynomial p(c);
  for (const auto& m : w) p += Polynomial::monomial(c, m, small_rational(rng));
  return p;
}

GElement random_graded(Rng& rng, const ContextPtr& c, long& degree) {
  std::uniform_int_distribution<unsigned> e(0, 1), k(0, static_cast<unsigned>(c->n()));
  for (;;) {
    unsigned eps = e(rng), wk = k(rng);
    auto g = random_homogeneous(rng, c, eps, wk, 2);
    if (g.is_zero()) continue;
    degree = 2 * eps + wk;
    return g;
  }
}

// 1. Milnor numbers of the ADE list.
Outcome milnor_numbers() {
  Outcome o;
  auto t0 = Clock::now();
  auto c = xyz();
  for (const auto& s : ade_weighted()) {
    auto f = P(s.equation, c);
    auto oracle = milnor_by_enumeration(f, s.weights, s.degree);
    if (oracle != s.expected_mu) o.fail(std::string(s.name) + ": oracle disagrees with the expected value");
    auto mu = milnor_number(f);
    if (!mu || *mu != oracle) o.fail(std::string(s.name) + ": milnor_number disagrees with the oracle");
  }
  double t = seconds_since(t0);
  if (t >= 5.0) o.fail("runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "11 singularities, " + std::to_string(t) + " s";
  return o;
}

// 2. [S, S] = 0 for S = ad_f(T), n = 3.
Outcome poisson_lemma() {
  Outcome o;
  Rng rng(9002);
  auto c = xyz();
  int count = 0;
  for (const auto& s : ade_catalog()) {
    auto f = P(s.equation, c);
    for (int i = 0; i < 100; ++i, ++count) {
      auto sv = ad_f(f, random_trivector(rng, c));
      if (!bivector_square(sv).is_zero()) o.fail(s.name + ": [S,S] != 0 for " + format(sv));
    }
  }
  if (o.pass) o.detail = std::to_string(count) + " bivectors";
  return o;
}

// 3. quantize_n3 on random quasiclassical data.
Outcome quantization() {
  Outcome o;
  Rng rng(9003);
  auto c = xyz();
  double worst = 0;
  int count = 0;
  for (const auto& s : ade_catalog()) {
    auto f = P(s.equation, c);
    auto w = qc_subspace(f);
    for (int i = 0; i < 25; ++i, ++count) {
      auto p1 = random_w_element(rng, w, c);
      auto s1 = ad_f(f, random_trivector(rng, c));
      auto t0 = Clock::now();
      try {
        auto sol = quantize_n3(f, p1, s1);
        if (!sol.exact) o.fail(s.name + ": solution not exact");
        if (sol.s.h_degree() > 2 || sol.p.h_degree() > 2) o.fail(s.name + ": h-degree above 2");
        if (!mc_verify(f, sol).all_zero()) o.fail(s.name + ": nonzero residual");
      } catch (const std::exception& e) {
        o.fail(s.name + ": " + e.what());
      }
      double t = seconds_since(t0);
      worst = std::max(worst, t);
      if (t >= 10.0) o.fail(s.name + ": instance took " + std::to_string(t) + " s");
    }
  }
  if (o.pass) o.detail = std::to_string(count) + " instances, slowest " + std::to_string(worst) + " s";
  return o;
}

// 4. koszul_lift inverts ad_f on trivectors.
Outcome koszul_exactness() {
  Outcome o;
  Rng rng(9004);
  auto c = xyz();
  int count = 0;
  for (const auto& s : ade_catalog()) {
    auto f = P(s.equation, c);
    for (int i = 0; i < 100; ++i, ++count) {
      auto z = ad_f(f, random_trivector(rng, c));
      auto t = koszul_lift(f, z);
      if (!t || !(ad_f(f, *t) == z)) o.fail(s.name + ": lift failed for " + format(z));
    }
  }
  if (o.pass) o.detail = std::to_string(count) + " lifts";
  return o;
}

// 5. Bracket axioms and both differentials.
Outcome bracket_axioms() {
  Outcome o;
  Rng rng(9005);
  for (int i = 0; i < 200; ++i) {
    auto c = ring(1 + i % 4);
    long a, b, d;
    auto x = random_graded(rng, c, a), y = random_graded(rng, c, b), z = random_graded(rng, c, d);
    auto f = random_nonzero_poly(rng, c, 3, 3);
    if (!(schouten_bracket(x, y) == schouten_bracket(y, x) * (-sign((a - 1) * (b - 1)))))
      o.fail("antisymmetry: " + format(x) + ", " + format(y));
    if (!(schouten_bracket(x, schouten_bracket(y, z)) ==
          schouten_bracket(schouten_bracket(x, y), z) +
              schouten_bracket(y, schouten_bracket(x, z)) * sign((a - 1) * (b - 1))))
      o.fail("Jacobi");
    if (!(schouten_bracket(x, y * z) == schouten_bracket(x, y) * z + y * schouten_bracket(x, z) * sign((a - 1) * b)))
      o.fail("Leibniz");
    if (!ad_f(f, ad_f(f, x)).is_zero()) o.fail("ad_f squared");
    if (!g_differential(f, g_differential(f, x)).is_zero()) o.fail("inner differential squared");
  }
  if (o.pass) o.detail = "200 triples";
  return o;
}

// 6. Residual vanishes iff both component equations hold.
Outcome residual_equivalence() {
  Outcome o;
  Rng rng(9006);
  const std::size_t N = 4;
  int satisfying = 0, violating = 0;
  for (int i = 0; i < 50; ++i) {
    ContextPtr c = (i % 5 == 4) ? ring(4) : xyz();
    auto f = c->n() == 3 ? P("x^3+y^2+z^2", c) : P("x^2+y^2+z^2+w^2", c);
    HSeries<Polynomial> p(N, Polynomial(c));
    HSeries<GElement> sv(N, GElement(c));
    p[1] = random_poly(rng, c, 2, 2);
    const int kind = i % 5;
    if (c->n() == 3) {
      auto t = random_trivector(rng, c);
      sv[1] = ad_f(f, t);
      sv[2] = -schouten_bracket(GElement(p[1]), t);
      if (kind == 1) sv[2] = GElement(c);                                 // drop the correction
      if (kind == 2) sv[1] += random_homogeneous(rng, c, 0, 2, 2);        // spoil the cycle
      if (kind == 3) p[2] = random_nonzero_poly(rng, c, 2, 2);            // extra p term
    } else {
      // Cycles that need not be Poisson in four variables.
      sv[1] = ad_f(f, random_homogeneous(rng, c, 0, 3, 1, 3));
    }
    HSeries<GElement> w(N, GElement(c));
    for (std::size_t k = 1; k <= N; ++k) w[k] = GElement(p[k]) * GElement::eps(c) + sv[k];
    bool residual_zero = mc_residual(f, w).is_zero();

    HSeries<GElement> fmp(N, GElement(c));
    fmp[0] = GElement(f);
    for (std::size_t k = 1; k <= N; ++k) fmp[k] = GElement(-p[k]);
    auto br = [](const GElement& a, const GElement& b) { return schouten_bracket(a, b); };
    bool koszul_zero = fmp.convolve(sv, br).is_zero();
    bool poisson_zero = sv.convolve(sv, br).is_zero();
    if (residual_zero != (koszul_zero && poisson_zero)) o.fail("equivalence broken on instance " + std::to_string(i));
    (residual_zero ? satisfying : violating) += 1;
    if (kind == 0 && !residual_zero) o.fail("constructed solution has nonzero residual");
  }
  if (satisfying == 0 || violating == 0) o.fail("only one side of the equivalence was exercised");
  if (o.pass) o.detail = std::to_string(satisfying) + " satisfying, " + std::to_string(violating) + " violating";
  return o;
}

// 7. qc_normalize mechanics.
Outcome normalization() {
  Outcome o;
  Rng rng(9007);
  auto c = xyz();
  int count = 0;
  for (const auto& s : ade_catalog()) {
    auto f = P(s.equation, c);
    std::vector<Polynomial> partials{partial_derivative(f, 0), partial_derivative(f, 1), partial_derivative(f, 2)};
    for (int i = 0; i < 10; ++i, ++count) {
      auto p = random_poly(rng, c, 4, 5);
      Polynomial j(c);
      for (const auto& d : partials) j += random_poly(rng, c, 2, 3) * d;
      auto n1 = qc_normalize(f, p);
      if (!(qc_normalize(f, n1.w_part).w_part == n1.w_part)) o.fail(s.name + ": not idempotent");
      if (!(qc_normalize(f, p + j).w_part == n1.w_part)) o.fail(s.name + ": depends on the Jacobian ideal");
      Polynomial back = n1.w_part;
      for (std::size_t k = 0; k < 3; ++k) back += n1.cofactors[k] * partials[k];
      if (!(back == p)) o.fail(s.name + ": cofactor identity");
    }
  }
  if (o.pass) o.detail = std::to_string(count) + " polynomials";
  return o;
}

// 8. Hochschild identities.
Outcome hochschild() {
  Outcome o;
  auto t0 = Clock::now();
  Rng rng(9008);
  auto br = [](const PolyDiffOperator& a, const PolyDiffOperator& b) {
    return a.arity() == 0 ? PolyDiffOperator(a.context(), b.arity() == 0 ? 0 : b.arity() - 1) : brace(a, {b});
  };
  auto same = [](const PolyDiffOperator& a, const PolyDiffOperator& b) {
    return (a.is_zero() && b.is_zero()) || a == b;
  };
  for (int i = 0; i < 40; ++i) {
    auto c = ring(1 + i % 3);
    long p = i % 4, q = (i / 4) % 4;
    auto pp = random_op(rng, c, p), qq = random_op(rng, c, q), rr = random_op(rng, c, 1 + i % 3);
    if (!hochschild_differential(hochschild_differential(pp)).is_zero()) o.fail("d^2");
    std::vector<Polynomial> args;
    for (long k = 0; k <= p; ++k) args.push_back(random_poly(rng, c, 3, 3));
    if (!(unfold::apply(hochschild_differential(pp), args) == classical_coboundary(pp, args) * sign(p - 1)))
      o.fail("d vs alternating sum");
    if (!(cup(cup(pp, qq), rr) == cup(pp, cup(qq, rr)))) o.fail("cup associativity");
    if (p >= 1 && q >= 1) {
      long r = static_cast<long>(rr.arity());
      auto lhs = brace(brace(pp, {qq}), {rr}) - brace(pp, {brace(qq, {rr})});
      auto rhs = brace(brace(pp, {rr}), {qq}) - brace(pp, {brace(rr, {qq})});
      if (!(lhs == rhs * sign((q - 1) * (r - 1)))) o.fail("pre-Lie");
    }
    if (p + q > 0) {
      auto lhs = (cup(pp, qq) - cup(qq, pp) * sign(p * q)) * sign(p * q + p + 1);
      auto rhs = hochschild_differential(br(pp, qq)) - br(hochschild_differential(pp), qq) +
                 br(pp, hochschild_differential(qq)) * sign(p);
      if (!(lhs == rhs)) o.fail("homotopy commutativity");
    }
    auto x = random_homogeneous(rng, c, 0, 1, 2), y = random_homogeneous(rng, c, 0, 1, 2);
    auto a = GElement(random_poly(rng, c, 3, 3));
    if (!same(gerstenhaber_bracket(hkr(x), hkr(y)), hkr(schouten_bracket(x, y)))) o.fail("hkr on vector fields");
    if (!same(gerstenhaber_bracket(hkr(a), hkr(x)), hkr(schouten_bracket(a, x)))) o.fail("hkr on functions");
  }
  for (int i = 0; i < 50; ++i) {
    auto c = ring(1 + i % 3);
    unsigned k = static_cast<unsigned>(i % (c->n() + 1));
    auto x = random_homogeneous(rng, c, 0, k, 2);
    if (!hochschild_differential(hkr(x)).is_zero()) o.fail("d(hkr X) != 0 for " + format(x));
  }
  double t = seconds_since(t0);
  if (t >= 30.0) o.fail("runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(t) + " s";
  return o;
}

// 9. monicize.
Outcome monicization() {
  Outcome o;
  Rng rng(9009);
  int count = 0;
  GroebnerOptions guard{.max_degree = 200};
  while (count < 20) {
    auto c = ring(2 + count % 2);
    const std::size_t n = c->n();
    auto f = random_poly(rng, c, 3, 4);
    if (f.is_constant() || is_monic_in_last(f)) continue;
    ++count;
    auto m = monicize(f);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Monomial pw(n);
      pw[n - 1] = m.exponents.at(i);
      if (!(m.sigma.images()[i] == Polynomial::variable(c, i) + Polynomial::monomial(c, pw))) o.fail("shape");
    }
    if (!(m.sigma.images()[n - 1] == Polynomial::variable(c, n - 1))) o.fail("last variable moved");
    if (!(substitute(f, m.sigma) == m.image)) o.fail("image");
    if (!is_monic_in_last(m.image)) o.fail("not monic: " + format(m.image));
    if (milnor_number(f, guard) != milnor_number(m.image, guard)) o.fail("Milnor number changed for " + format(f));
  }
  if (o.pass) o.detail = "20 polynomials";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"Milnor numbers of the ADE list", milnor_numbers},
      {"Poisson lemma for ad_f(T), n = 3", poisson_lemma},
      {"exact n = 3 quantization", quantization},
      {"constructive Koszul exactness", koszul_exactness},
      {"bracket axiom suite", bracket_axioms},
      {"Maurer-Cartan residual equivalence", residual_equivalence},
      {"quasiclassical normalization", normalization},
      {"Hochschild suite", hochschild},
      {"monicize", monicization},
  };
  int failures = 0;
  int k = 1;
  for (const auto& cr : criteria) {
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s - %s (%s)\n", k++, o.pass ? "PASS" : "FAIL", cr.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
