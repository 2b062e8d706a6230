#include <catch2/catch_amalgamated.hpp>

#include "integrable/error.hpp"
#include "support.hpp"

using namespace integrable;
using testing_support::close;
using testing_support::JetModel;
using testing_support::P;
using testing_support::PolyGen;

namespace {

const JetContext kdv3(Family::KdV, 3);
const JetContext skk3(Family::SKK, 3);
const JetContext skk4(Family::SKK, 4);
const JetContext skk5(Family::SKK, 5);

DiffPoly D(const DiffPoly& e, const JetContext& ctx) { return total_derivative(e, ctx); }

}  // namespace

TEST_CASE("unsupported contexts") {
  CHECK_THROWS_AS(JetContext(Family::KdV, 4), Unsupported);
  CHECK_THROWS_AS(JetContext(Family::SKK, 6), Unsupported);
  CHECK_THROWS_AS(JetContext(Family::SKK, 2), Unsupported);
  CHECK_THROWS_AS(JetContext(Family::KdV, 2), Unsupported);
  CHECK(parse_family("SKK") == Family::SKK);
  CHECK_THROWS(parse_family("mkdv"));
}

TEST_CASE("partial derivatives and closure rules") {
  CHECK(partial_derivative(P("a"), Var::jet(4), skk4) == P("ab"));
  CHECK(partial_derivative(P("ab"), Var::jet(5), skk5) == P("4*ab^2*a^-1"));
  CHECK(partial_derivative(P("ab"), Var::jet(3), kdv3) == P("2*ab^2*a^-1 + 1/4*P*a^5"));
  CHECK(partial_derivative(P("a*u7"), Var::jet(4), skk5).is_zero());
  CHECK(partial_derivative(P("a^3*u6^2"), Var::jet(6), skk5) == P("2*a^3*u6"));
  CHECK(partial_derivative(P("P*u4"), Var::jet(4), kdv3) == P("P"));
  // formal derivative in a symbol
  CHECK(partial_derivative(P("a^3*ab*u6"), Var::a(), skk5) == P("3*a^2*ab*u6"));
}

TEST_CASE("closure rules against finite differences of the separant root") {
  auto check = [](Family fam, long double p1, long double p2, long double p3, long double ub) {
    JetModel m{fam, 3};
    if (fam == Family::SKK) {
      m.lambda = p1;
      m.mu = p2;
    } else {
      m.alpha = p1;
      m.beta = p2;
      m.gamma = p3;
    }
    const JetContext ctx(fam, 3);
    const DiffPoly second = partial_derivative(P("ab"), Var::jet(3), ctx);
    auto at = [&](Var v) -> long double {
      if (v == Var::a()) return m.a_of(ub);
      if (v == Var::ab()) return m.ab_of(ub);
      if (v == var_P()) return m.beta * m.beta - 4 * m.alpha * m.gamma;
      return 0;
    };
    const long double h = 1e-5L;
    const long double fd1 = (m.a_of(ub + h) - m.a_of(ub - h)) / (2 * h);
    const long double fd2 = (m.a_of(ub + h) - 2 * m.a_of(ub) + m.a_of(ub - h)) / (h * h);
    return close(m.ab_of(ub), fd1) && close(evaluate(second, at), fd2);
  };
  CHECK(check(Family::SKK, 2, 1, 0, 3));
  CHECK(check(Family::KdV, 1, 2, 5, 3));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<long double> pick(0.5L, 3.0L);
  for (int i = 0; i < 100; ++i) {
    CHECK(check(Family::SKK, pick(rng), pick(rng), 0, pick(rng)));
    // alpha, gamma > 0 and beta^2 < 4 alpha gamma keep the radicand positive
    const long double alpha = pick(rng), gamma = pick(rng) + 1;
    CHECK(check(Family::KdV, alpha, pick(rng) * std::sqrt(alpha * gamma), gamma, pick(rng)));
  }
}

TEST_CASE("total derivative") {
  CHECK(D(P("a"), skk4) == P("ab*u5"));
  CHECK(D(P("a"), kdv3) == P("ab*u4"));
  CHECK(D(P("a^5*u5"), skk4) == P("a^5*u6 + 5*a^4*ab*u5^2"));
  CHECK(D(P("1/2*a^6*ab^-1"), skk5) == P("a^5*u6"));
  CHECK(D(P("u0^2"), skk4) == P("2*u0*u1"));
  CHECK(D(DiffPoly(7), skk4).is_zero());
  CHECK(total_derivative(P("u3"), 4, skk3) == P("u7"));
  const JetContext tight(Family::SKK, 3, 8);
  CHECK_THROWS_AS(D(P("u8"), tight), OrderOverflow);
  CHECK_NOTHROW(D(P("u7"), tight));
}

TEST_CASE("total derivative matches numerical differentiation along a jet") {
  for (const JetContext* ctx : {&kdv3, &skk4, &skk5}) {
    PolyGen gen(21 + ctx->base());
    gen.lo = 0;
    gen.hi = 8;
    gen.coeff = true;
    const JetModel model{ctx->family(), ctx->base()};
    for (int i = 0; i < 100; ++i) {
      const DiffPoly e = gen.poly();
      const DiffPoly de = D(e, *ctx);
      for (long double x : {-0.4L, 0.3L}) CHECK(close(model.eval(de, x), model.dx(e, x), 1e-6L));
    }
  }
}

TEST_CASE("time derivative") {
  const DiffPoly F = P("a^5*u5");
  CHECK(time_derivative(P("u1"), F, skk4) == D(F, skk4));
  CHECK(time_derivative(P("a^-1"), F, skk4) == multiply(P("-a^-2*ab"), total_derivative(F, 4, skk4)));
  CHECK(time_derivative(P("c*u5^2"), F, skk4) == multiply(P("2*c*u5"), total_derivative(F, 5, skk4)));
}

TEST_CASE("frechet derivative") {
  const auto f3 = frechet(P("u3"), skk3);
  REQUIRE(f3.local.size() == 1);
  CHECK(f3.local.at(3) == DiffPoly(1));

  const auto f = frechet(P("a^5*u5"), skk4);
  CHECK(f.local.size() == 2);
  CHECK(f.local.at(5) == P("a^5"));
  CHECK(f.local.at(4) == P("5*a^4*ab*u5"));

  const DiffPoly F = P("a^5*u5 + 5*a^4*ab*u4^2");
  CHECK(apply_operator(frechet(F, skk3), P("u1"), skk3) == D(F, skk3));
}

TEST_CASE("adjoint and cosymmetry pairing") {
  CHECK(adjoint_apply(P("u2"), P("u1"), skk3) == P("-u3"));
  CHECK(adjoint_apply(P("u1"), DiffPoly(1), skk3).is_zero());

  const DiffPoly F = P("a^5*u5");
  const DiffPoly gamma = variational_derivative(P("a^-1"), skk4);
  const DiffPoly sigma = P("u1");
  const DiffPoly pairing =
      multiply(gamma, apply_operator(frechet(F, skk4), sigma, skk4)) + multiply(adjoint_apply(F, gamma, skk4), sigma);
  CHECK(is_exact(pairing, skk4));
}

TEST_CASE("variational derivative") {
  CHECK(variational_derivative(P("u1^2"), skk3) == P("-2*u2"));
  CHECK(variational_derivative(P("a^-1"), skk5) == total_derivative(P("a^-2*ab"), 5, skk5));
  CHECK(variational_derivative(P("u0*u1"), skk3).is_zero());
}

TEST_CASE("exactness") {
  CHECK(is_exact(D(P("a*u6"), skk4), skk4));
  CHECK_FALSE(is_exact(P("u1^2"), skk4));
  const DiffPoly F = P("a^5*u5");
  const DiffPoly gamma = variational_derivative(P("a^-1"), skk4);
  CHECK(is_exact(multiply(gamma, F), skk4));
}

TEST_CASE("antiderivative") {
  CHECK(antiderivative(P("ab*u5"), skk4) == P("a"));
  CHECK(antiderivative(P("ab*u4"), kdv3) == P("a"));
  CHECK(antiderivative(D(P("u5^3"), skk4), skk4) == P("u5^3"));
  CHECK(antiderivative(P("a^5*u6"), skk5) == P("1/2*a^6*ab^-1"));
  CHECK(antiderivative(P("u3"), skk4) == P("u2"));
  CHECK_THROWS_AS(antiderivative(P("u1^2"), skk4), NotExact);
  CHECK_THROWS_AS(antiderivative(P("a*u2"), skk4), NotExact);
  CHECK_THROWS_AS(antiderivative(P("u7^2*a"), skk4), NotExact);

  const DiffPoly gamma = variational_derivative(P("a^-1"), skk4);
  const DiffPoly flow5 = P("a^5*u5");
  const DiffPoly e = multiply(gamma, flow5);
  const DiffPoly h = antiderivative(e, skk4);
  CHECK(D(h, skk4) == e);
  CHECK(max_jet_order(h) < max_jet_order(e));
}

TEST_CASE("antiderivative with u_b-constant coefficients") {
  // ab a^-4 is constant along u_4 for the SKK rule
  CHECK(antiderivative(P("ab*a^-4*u2"), skk4) == P("ab*a^-4*u1"));
  const DiffPoly alpha = P("ab^2*a^-4 - 1/4*P*a^2");
  CHECK(D(alpha, kdv3).is_zero());
  CHECK(antiderivative(multiply(alpha, P("u1*u2")), kdv3) == multiply(alpha, P("1/2*u1^2")));
}

TEST_CASE("antiderivative in the KdV coefficient ring") {
  // d/du3 of a^-1 ab^2 needs the P branch of the closure rule
  for (const char* text : {"a^-1*ab^2*u5", "P*a^7*u4^3", "ab^3*a^-3*u4*u5", "a^2*u4 + P*a^3*ab*u6"}) {
    const DiffPoly h = parse(text);
    CHECK(antiderivative(D(h, kdv3), kdv3) - h == DiffPoly());
  }
}

TEST_CASE("apply_operator") {
  PseudoDiffOperator d2;
  d2.local.emplace(2, DiffPoly(1));
  CHECK(apply_operator(d2, P("u4"), skk4) == P("u6"));
  CHECK(d2.order() == 2);

  const DiffPoly F = P("a^5*u5");
  DiffPoly self;
  for (int i : dependency_orders(F, skk4))
    self += multiply(partial_derivative(F, Var::jet(i), skk4), total_derivative(F, i, skk4));
  CHECK(apply_operator(frechet(F, skk4), F, skk4) == self);

  PseudoDiffOperator nl;
  nl.nonlocal.push_back({P("u1"), P("u2")});
  CHECK_THROWS_AS(apply_operator(nl, P("u2"), skk4), NotExact);
  CHECK(apply_operator(nl, P("u1"), skk4) == P("1/2*u1^3"));
}

// ------------------------------------------------------------ properties

TEST_CASE("Leibniz rule") {
  for (const JetContext* ctx : {&kdv3, &skk4}) {
    PolyGen gen(31);
    gen.coeff = true;
    gen.constants = true;
    for (int i = 0; i < 100; ++i) {
      const DiffPoly e = gen.poly(), f = gen.poly();
      CHECK(D(multiply(e, f), *ctx) == multiply(D(e, *ctx), f) + multiply(e, D(f, *ctx)));
    }
  }
}

TEST_CASE("partial derivatives commute with D up to a shift") {
  for (const JetContext* ctx : {&kdv3, &skk5}) {
    PolyGen gen(32);
    gen.coeff = true;
    gen.hi = 8;
    for (int i = 0; i < 100; ++i) {
      const DiffPoly e = gen.poly();
      for (int k = 1; k <= 9; ++k) {
        const Var uk = Var::jet(k), ukm = Var::jet(k - 1);
        CHECK(partial_derivative(D(e, *ctx), uk, *ctx) ==
              D(partial_derivative(e, uk, *ctx), *ctx) + partial_derivative(e, ukm, *ctx));
      }
    }
  }
}

TEST_CASE("Euler operator annihilates total derivatives") {
  for (const JetContext* ctx : {&kdv3, &skk3, &skk4, &skk5}) {
    PolyGen gen(33 + ctx->base());
    gen.coeff = true;
    for (int i = 0; i < 100; ++i) CHECK(variational_derivative(D(gen.poly(), *ctx), *ctx).is_zero());
  }
}

TEST_CASE("antiderivative round trip") {
  for (const JetContext* ctx : {&kdv3, &skk3, &skk4, &skk5}) {
    // catalog mode: jets above the base with coefficient symbols
    PolyGen gen(34 + ctx->base());
    gen.coeff = true;
    gen.with_p = ctx->family() == Family::KdV;
    gen.lo = ctx->base() + 1;
    gen.hi = ctx->base() + 5;
    // plain jet polynomials
    PolyGen plain(44 + ctx->base());
    plain.hi = 9;
    for (int i = 0; i < 100; ++i) {
      for (PolyGen* g : {&gen, &plain}) {
        const DiffPoly h = g->poly();
        const DiffPoly e = D(h, *ctx);
        INFO(to_string(ctx->family()) << " b=" << ctx->base() << " h=" << print(h));
        CHECK(D(antiderivative(e, *ctx), *ctx) == e);
      }
    }
  }
}
