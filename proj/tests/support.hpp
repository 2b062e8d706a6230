#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "integrable/jet.hpp"
#include "integrable/parse.hpp"
#include "integrable/ring.hpp"

namespace testing_support {

using namespace integrable;

// Small random polynomials. Jet orders in [lo, hi]; a and ab with exponents in
// [-2, 2] when `coeff` is set; optional constant symbol c.
struct PolyGen {
  std::mt19937_64 rng;
  int lo = 0, hi = 6;
  bool coeff = false;
  bool constants = false;
  bool with_p = false;
  int max_terms = 4;

  explicit PolyGen(std::uint64_t seed) : rng(seed) {}

  int uniform(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

  Monomial monomial() {
    Monomial m;
    const int factors = uniform(0, 3);
    for (int i = 0; i < factors; ++i) m.mul(Var::jet(uniform(lo, hi)), uniform(1, 2));
    if (coeff) {
      m.mul(Var::a(), uniform(-2, 2));
      m.mul(Var::ab(), uniform(-1, 2));
    }
    if (constants && uniform(0, 3) == 0) m.mul(Var::constant("c"), uniform(-1, 1));
    if (with_p) m.mul(var_P(), uniform(-1, 1));
    return m;
  }

  DiffPoly poly() {
    std::vector<Term> raw;
    const int n = uniform(1, max_terms);
    for (int i = 0; i < n; ++i) {
      Rational c(uniform(-9, 9), uniform(1, 4));
      c.canonicalize();
      raw.push_back({c, monomial()});
    }
    return combine_terms(std::move(raw));
  }
};

// Numerical model of a jet: u(x) = sum_j A_j exp(k_j x), with a(u_b) given in
// closed form by the family's separant root. Used as an oracle independent of
// the symbolic closure rules.
struct JetModel {
  Family family;
  int base;
  std::vector<long double> amp{0.3L, -0.2L, 0.15L};
  std::vector<long double> rate{0.7L, -0.5L, 1.1L};
  // SKK: (lambda u_b + mu)^(-1/3); KdV: (alpha u_b^2 + beta u_b + gamma)^(-1/2).
  long double lambda = 2, mu = 5;
  long double alpha = 1, beta = 2, gamma = 5;

  long double jet(int k, long double x) const {
    long double s = 0;
    for (std::size_t j = 0; j < amp.size(); ++j) s += amp[j] * std::pow(rate[j], static_cast<long double>(k)) * std::exp(rate[j] * x);
    return s;
  }

  long double a_of(long double ub) const {
    if (family == Family::SKK) return std::pow(lambda * ub + mu, -1.0L / 3);
    return std::pow(alpha * ub * ub + beta * ub + gamma, -0.5L);
  }

  long double ab_of(long double ub) const {
    if (family == Family::SKK) return -lambda / 3 * std::pow(lambda * ub + mu, -4.0L / 3);
    return -(2 * alpha * ub + beta) / 2 * std::pow(alpha * ub * ub + beta * ub + gamma, -1.5L);
  }

  long double value(Var v, long double x) const {
    if (v == Var::a()) return a_of(jet(base, x));
    if (v == Var::ab()) return ab_of(jet(base, x));
    if (v == var_P()) return beta * beta - 4 * alpha * gamma;
    if (v.is_jet()) return jet(v.order(), x);
    return 1.0L;
  }

  long double eval(const DiffPoly& e, long double x) const {
    return evaluate(e, [&](Var v) { return value(v, x); });
  }

  // Central difference of e along x.
  long double dx(const DiffPoly& e, long double x, long double h = 1e-5L) const {
    return (eval(e, x + h) - eval(e, x - h)) / (2 * h);
  }
};

inline bool close(long double x, long double y, long double rel = 1e-6L) {
  return std::fabs(x - y) <= rel * std::max<long double>(1.0L, std::max(std::fabs(x), std::fabs(y)));
}

inline DiffPoly P(std::string_view text) { return parse(text); }

}  // namespace testing_support

#ifndef INTEGRABLE_SUPPORT_NO_CATCH
#include <catch2/catch_amalgamated.hpp>

template <>
struct Catch::StringMaker<integrable::DiffPoly> {
  static std::string convert(const integrable::DiffPoly& e) { return integrable::print(e); }
};
#endif
