#include "doctest.h"
#include "support.hpp"
#include "unfold/groebner.hpp"
#include "unfold/json_io.hpp"
#include "unfold/parser.hpp"
#include "unfold/singularity.hpp"

using namespace unfold;
using namespace unfold::testing;

namespace {
Polynomial P(const char* s, const ContextPtr& ctx) { return parse_polynomial(s, ctx); }

std::vector<std::string> names(const ContextPtr& c, const std::vector<Monomial>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(format_monomial(c, m));
  return out;
}
}  // namespace

TEST_CASE("jacobian examples") {
  auto c = xyz();
  auto a1 = jacobian(P("x^2+y^2+z^2", c));
  CHECK(a1.milnor == 1u);
  CHECK(names(c, a1.w_basis) == std::vector<std::string>{"1"});
  auto a2 = jacobian(P("x^3+y^2+z^2", c));
  CHECK(a2.milnor == 2u);
  CHECK(names(c, a2.w_basis) == std::vector<std::string>{"1", "x"});
  auto cxy = RingContext::make({"x", "y"});
  CHECK_FALSE(jacobian(P("x^2*y", cxy)).milnor.has_value());
  CHECK_THROWS(jacobian(P("3", c)));
  CHECK_FALSE(a1.warning.has_value());
  CHECK(jacobian(P("x^2+y^2+z^2+1", c)).warning.has_value());
}

TEST_CASE("milnor numbers match the enumeration oracle and Milnor-Orlik") {
  auto c = xyz();
  for (const auto& s : ade_weighted()) {
    auto f = P(s.equation, c);
    auto oracle = milnor_by_enumeration(f, s.weights, s.degree);
    CHECK(oracle == s.expected_mu);
    CHECK(Rational(static_cast<long>(oracle)) == milnor_orlik(s.weights, s.degree));
    CHECK(milnor_number(f) == oracle);
  }
  auto fermat = P("x^3+y^3+z^3", c);
  CHECK(milnor_by_enumeration(fermat, {1, 1, 1}, 3) == 8u);
  CHECK(milnor_number(fermat) == 8u);
  CHECK(is_isolated(fermat));
  CHECK(milnor_number(P("x", c)) == 0u);
}

TEST_CASE("isolatedness") {
  auto c = xyz();
  CHECK(is_isolated(P("x^2+y^2+z^2", c)));
  auto cxy = RingContext::make({"x", "y"});
  CHECK_FALSE(is_isolated(P("x^2*y", cxy)));
  CHECK_THROWS_AS(qc_subspace(P("x^2*y", cxy)), NotIsolated);
}

TEST_CASE("qc subspace examples") {
  auto c = xyz();
  CHECK(names(c, qc_subspace(P("x^2+y^2+z^2", c))) == std::vector<std::string>{"1"});
  CHECK(names(c, qc_subspace(P("x^3+y^2+z^2", c))) == std::vector<std::string>{"1", "x"});
  auto e8 = names(c, qc_subspace(P("x^3+y^5+z^2", c)));
  std::vector<std::string> expected{"1", "x", "y", "x*y", "y^2", "x*y^2", "y^3", "x*y^3"};
  std::sort(e8.begin(), e8.end());
  std::sort(expected.begin(), expected.end());
  CHECK(e8 == expected);
}

TEST_CASE("W basis monomials are already reduced") {
  auto c = xyz();
  for (const auto& s : ade_catalog()) {
    auto jd = jacobian(P(s.equation.c_str(), c));
    REQUIRE(jd.milnor.has_value());
    CHECK(*jd.milnor == jd.w_basis.size());
    for (const auto& m : jd.w_basis) {
      auto mono = Polynomial::monomial(c, m);
      CHECK(normal_form(mono, jd.gb).remainder == mono);
    }
  }
}

TEST_CASE("monicize examples") {
  auto cxy = RingContext::make({"x", "y"});
  auto m1 = monicize(P("x*y", cxy));
  CHECK(m1.exponents == std::vector<std::uint32_t>{2});
  CHECK(m1.sigma.images()[0] == P("x+y^2", cxy));
  CHECK(m1.sigma.images()[1] == P("y", cxy));
  CHECK(m1.image == P("x*y+y^3", cxy));
  CHECK(m1.image.degree_in(1) == 3);

  auto c = xyz();
  auto m2 = monicize(P("x^2+y^2+z^2", c));
  CHECK(m2.sigma.is_identity());
  CHECK(m2.exponents.empty());

  auto m3 = monicize(P("x^2*y^2", cxy));
  CHECK(m3.sigma.images()[0] == P("x+y^3", cxy));
  CHECK(m3.image == P("x^2*y^2+2*x*y^5+y^8", cxy));
  CHECK_THROWS(monicize(P("5", cxy)));
}

TEST_CASE("monicize handles mixed-variable leading coefficients") {
  auto c = xyz();
  auto f = P("y-x*z", c);
  auto m = monicize(f);
  CHECK(is_monic_in_last(m.image));
  CHECK(substitute(f, m.sigma) == m.image);
}

TEST_CASE("monicize output is monic and preserves the Milnor number") {
  auto c = xyz();
  for (const auto& s : ade_catalog()) {
    // x -> x + y*z is an automorphism that spoils monicity in z.
    auto f = substitute(P(s.equation.c_str(), c), Substitution({P("x+y*z", c), P("y", c), P("z", c)}));
    CHECK_FALSE(is_monic_in_last(f));
    auto m = monicize(f);
    CHECK(is_monic_in_last(m.image));
    CHECK(milnor_number(m.image) == milnor_number(f));
  }
  Rng rng(3001);
  for (int trial = 0; trial < 40; ++trial) {
    auto r = ring(2 + trial % 2);
    auto f = random_poly(rng, r, 4, 4);
    if (f.is_constant()) continue;
    auto m = monicize(f);
    CHECK(is_monic_in_last(m.image));
    CHECK(substitute(f, m.sigma) == m.image);
    const std::size_t n = r->n();
    for (std::size_t i = 0; i + 1 < n && !m.exponents.empty(); ++i) {
      Monomial pw(n);
      pw[n - 1] = m.exponents[i];
      CHECK(m.sigma.images()[i] == Polynomial::variable(r, i) + Polynomial::monomial(r, pw));
    }
  }
}

TEST_CASE("jacobian report JSON") {
  auto c = xyz();
  auto j = to_json(jacobian(P("x^3+y^2+z^2", c)));
  CHECK(j.dump() == R"({"milnor":2,"w_basis":[[0,0,0],[1,0,0]],"isolated":true})");
  auto cxy = RingContext::make({"x", "y"});
  CHECK(to_json(jacobian(P("x^2*y", cxy)))["milnor"] == "infinite");
}
