#include <catch2/catch_amalgamated.hpp>

#include "integrable/densities.hpp"
#include "integrable/error.hpp"
#include "integrable/grading.hpp"
#include "integrable/hierarchy.hpp"
#include "support.hpp"

using namespace integrable;
using testing_support::P;

namespace {

const JetContext kdv3(Family::KdV, 3);
const JetContext skk3(Family::SKK, 3);
const JetContext skk4(Family::SKK, 4);
const JetContext skk5(Family::SKK, 5);

DiffPoly rho1(int b) { return P("a^-1*ab^2") * DiffPoly::jet(b + 1, 2); }

// Covers the KdV level-4 density, which needs a^11 and P^-1.
MonomialSpan wide_span() {
  MonomialSpan s;
  s.a_min = -2;
  s.a_max = 12;
  s.ab_max = 4;
  s.p_min = -1;
  return s;
}

}  // namespace

TEST_CASE("canonical rho^(-1)") {
  CHECK(canonical_rho_minus1(P("a^5*u5"), 5, skk4) == P("a^-1"));
  CHECK(canonical_rho_minus1(P("u3"), 3, skk4) == P("1"));
  CHECK(canonical_rho_minus1(P("a^7*u7 + 14*a^6*ab*u6*u5 + 35*a^5*ab^2*u5^3"), 7, skk4) == P("a^-1"));
  // Chain rule through a and ab at the base.
  CHECK(canonical_rho_minus1(P("1/2*a^6*ab^-1"), 5, skk5) == P("a^-1"));
  CHECK(canonical_rho_minus1(P("32*a^5*u5"), 5, skk4) == P("1/2*a^-1"));
  CHECK_THROWS_AS(canonical_rho_minus1(P("a^5*u5 + u5"), 5, skk4), NotAMonomial);
  CHECK_THROWS_AS(canonical_rho_minus1(P("a^4*u5"), 5, skk4), RootNotExact);
  CHECK_THROWS_AS(canonical_rho_minus1(P("2*a^5*u5"), 5, skk4), RootNotExact);
  CHECK_THROWS_AS(canonical_rho_minus1(P("-a^4*u4"), 4, skk3), RootNotExact);
  for (const auto& f : generate_hierarchy(Family::SKK, 4, 13)) {
    if (f.order <= 4) continue;
    CHECK(canonical_rho_minus1(f.rhs, f.order, skk4) == P("a^-1"));
  }
}

TEST_CASE("check_conserved examples") {
  const JetContext plain(Family::SKK, 5);
  auto c = check_conserved(P("u"), P("u3"), plain);
  CHECK(c.conserved);
  REQUIRE(c.flux);
  CHECK(*c.flux == P("u2"));
  CHECK(c.residual.is_zero());

  auto r = check_conserved(P("a^-1"), P("a^5*u5"), skk4);
  CHECK(r.conserved);
  CHECK(r.residual.is_zero());
  auto r1 = check_conserved(rho1(4), P("a^5*u5"), skk4);
  CHECK(r1.conserved);
  CHECK(total_derivative(*r1.flux, skk4) == time_derivative(rho1(4), P("a^5*u5"), skk4));

  CHECK(check_conserved(P("u5^2"), P("u7"), plain).conserved);
  auto no = check_conserved(P("u^3"), P("u1^2"), plain);
  CHECK_FALSE(no.conserved);
  CHECK_FALSE(no.flux);
  CHECK_FALSE(no.residual.is_zero());
}

TEST_CASE("cosymmetries") {
  CHECK(check_cosymmetry(DiffPoly(), P("a^5*u5"), skk4).holds);
  const auto s3 = seed_flow(Family::SKK, 3).rhs;
  CHECK(check_cosymmetry(variational_derivative(P("a^-1"), skk3), s3, skk3).holds);
  CHECK(check_cosymmetry(variational_derivative(rho1(4), skk4), P("a^5*u5"), skk4).holds);
  CHECK_FALSE(check_cosymmetry(P("u5"), P("a^5*u5"), skk4).holds);
}

TEST_CASE("density ansatz shapes") {
  auto d1 = density_ansatz({DensityKind::Rho1}, skk4, "c");
  CHECK(d1.unknowns.size() == 17 * 7);
  CHECK(d1.label.target_level() == 2);
  CHECK(coefficient_of(d1.expr, Var::jet(5), 2).size() == d1.unknowns.size());
  auto d3 = density_ansatz({DensityKind::Rho3}, skk5, "c");
  CHECK(d3.unknowns.size() == 2 * 17 * 7);
  CHECK(coefficient_of(d3.expr, Var::jet(7), 2).size() == 17 * 7);
  CHECK(coefficient_of(d3.expr, Var::jet(6), 4).size() == 17 * 7);
  MonomialSpan tiny{0, 0, 0, 0, 0, 0};
  auto g8 = density_ansatz(DensityLabel::generic(8), skk4, "c", tiny);
  CHECK(g8.unknowns.size() == 22);
  CHECK(is_level_homogeneous(g8.expr, 4, 8));
  auto m1 = density_ansatz({DensityKind::RhoMinus1}, kdv3, "c");
  CHECK(m1.expr == P("a^-1"));
  CHECK(m1.unknowns.empty());
  CHECK_THROWS(density_ansatz(DensityLabel::generic(0), skk4, "c"));
}

TEST_CASE("catalog conservation of rho^(-1) and rho^(1)") {
  for (int b : {3, 4, 5}) {
    const JetContext ctx(Family::SKK, b);
    for (const auto& f : generate_hierarchy(Family::SKK, b, 13)) {
      INFO("SKK b=" << b << " order " << f.order);
      CHECK(check_conserved(P("a^-1"), f.rhs, ctx).conserved);
      const auto c = check_conserved(rho1(b), f.rhs, ctx);
      CHECK(c.conserved);
      if (c.flux) CHECK(total_derivative(*c.flux, ctx) == time_derivative(rho1(b), f.rhs, ctx));
    }
  }
  for (const auto& f : generate_hierarchy(Family::KdV, 3, 9)) {
    INFO("KdV order " << f.order);
    CHECK(check_conserved(P("a^-1"), f.rhs, kdv3).conserved);
    // The level-2 density of this family is a^5 u4^2; the SKK form is not
    // conserved here.
    CHECK(check_conserved(P("a^5*u4^2"), f.rhs, kdv3).conserved);
    CHECK_FALSE(check_conserved(rho1(3), f.rhs, kdv3).conserved);
  }
}

TEST_CASE("rho^(1) ansatz solutions") {
  // In the SKK family ab a^-4 is constant, so the solutions are one density
  // up to that factor.
  auto sk = conserved_instances(density_ansatz({DensityKind::Rho1}, skk4, "c"), P("a^5*u5"), skk4);
  CHECK(sk.size() == 4);
  bool found = false;
  for (const auto& r : sk) found = found || r == rho1(4);
  CHECK(found);
  auto kd = conserved_instances(density_ansatz({DensityKind::Rho1}, kdv3, "c"),
                                P("a^5*u5 + 5/2*a^4*ab*u4^2"), kdv3);
  REQUIRE(kd.size() == 1);
  CHECK(kd[0] == P("a^5*u4^2"));
}

TEST_CASE("rho^(3): nontrivial for KdV, trivial for SKK") {
  const DiffPoly kdv5 = P("a^5*u5 + 5/2*a^4*ab*u4^2");
  const auto d = density_ansatz({DensityKind::Rho3}, kdv3, "c", wide_span());
  const auto nt = nontrivial_conserved_instances(d, kdv5, kdv3);
  REQUIRE(nt.size() == 1);
  CHECK(nt[0] == P("-16/7*a^7*P^-1*u5^2 + a^11*u4^4 + 16*a^5*ab^2*P^-1*u4^4"));
  CHECK(check_conserved(nt[0], kdv5, kdv3).conserved);
  CHECK_FALSE(is_trivial(nt[0], kdv3));
  // The default span misses it.
  CHECK(conserved_instances(density_ansatz({DensityKind::Rho3}, kdv3, "c"), kdv5, kdv3).empty());

  // SKK: whatever the level-4 ansatz conserves is a total derivative.
  MonomialSpan s{-4, 8, 0, 3, 0, 0};
  const auto g = density_ansatz(DensityLabel::generic(4), skk4, "c", s);
  const auto all = conserved_instances(g, P("a^5*u5"), skk4);
  CHECK(all.size() > 50);
  for (const auto& r : all) CHECK(is_trivial(r, skk4));
  CHECK(nontrivial_conserved_instances(g, P("a^5*u5"), skk4).empty());
  CHECK(conserved_instances(density_ansatz({DensityKind::Rho3}, skk5, "c"), seed_flow(Family::SKK, 5).rhs, skk5)
            .empty());
}

TEST_CASE("triviality") {
  CHECK(is_trivial(P("u7"), skk4));
  CHECK(is_trivial(P("a*u6 + ab*u5^2"), skk4));
  CHECK_FALSE(is_trivial(P("a*u6"), skk4));
  CHECK_FALSE(is_trivial(P("a^-1"), skk4));
  CHECK_FALSE(is_trivial(rho1(4), skk4));
}
