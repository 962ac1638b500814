#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "agler/errors.hpp"
#include "agler/exact.hpp"
#include "agler/polycore.hpp"
#include "agler/sampling.hpp"

using namespace agler;
using C = std::complex<double>;

namespace {

Poly<Complex> P(std::size_t n, std::initializer_list<std::pair<MultiIndex, Complex>> t) { return Poly<Complex>(n, t); }

// Naive evaluation with std::pow, independent of monomial_value.
C naive_eval(const Poly<Complex>& p, const std::vector<C>& z) {
  C s = 0;
  for (const auto& [e, c] : p.terms()) {
    C m = 1;
    for (std::size_t i = 0; i < z.size(); ++i) m *= std::pow(z[i], e[i]);
    s += c * m;
  }
  return s;
}

Poly<Complex> random_poly(Rng& rng, std::size_t n, int maxdeg, int nterms) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  Poly<Complex> p(n);
  for (int k = 0; k < nterms; ++k) {
    std::vector<int> e(n);
    for (auto& x : e) x = deg(rng);
    p.add_term(MultiIndex(e), complex_gaussian(rng));
  }
  return p;
}

}  // namespace

TEST(MultiIndex, RejectsNegativeEntries) {
  EXPECT_THROW(MultiIndex({1, -1}), DimensionError);
  EXPECT_NO_THROW(LaurentIndex({1, -1}));
}

TEST(MultiIndex, GradedLexOrdersByDegreeThenFirstVariable) {
  const Poly<Complex> p = P(2, {{{0, 2}, 1.0}, {{1, 1}, 1.0}, {{2, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 0}, 1.0}, {{0, 0}, 1.0}});
  std::vector<MultiIndex> seen;
  for (const auto& [e, c] : p.terms()) seen.push_back(e);
  const std::vector<MultiIndex> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(seen, want);
}

TEST(Poly, ProductOfLinearFactors) {
  const auto x = Poly<Complex>::variable(1, 0);
  const auto one = Poly<Complex>::constant(1, 1.0);
  const auto prod = (one + x) * (one - x);
  EXPECT_EQ(prod, P(1, {{{0}, 1.0}, {{2}, -1.0}}));
}

TEST(Poly, CancellationPrunesTerms) {
  const auto p = P(2, {{{1, 0}, C(1, 2)}, {{0, 3}, 0.5}});
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).num_terms(), 0u);
  Poly<Complex> q(1);
  q.add_term(MultiIndex{1}, 1e-20);
  EXPECT_TRUE(q.is_zero());
}

TEST(Poly, ArithmeticRejectsMismatchedVariables) {
  EXPECT_THROW(Poly<Complex>(2) + Poly<Complex>(3), DimensionError);
  Poly<Complex> p(2);
  EXPECT_THROW(p.add_term(MultiIndex{1, 0, 0}, 1.0), DimensionError);
  EXPECT_THROW(eval(p, {C(0.1)}), DimensionError);
}

TEST(Poly, EvalMatchesNaiveEvaluation) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_poly(rng, 3, 4, 8);
    const auto z = random_polydisk_point(rng, 3);
    EXPECT_LT(std::abs(eval(p, z) - naive_eval(p, z)), 1e-12);
  }
}

TEST(Poly, RingLawsHoldPointwise) {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_poly(rng, 2, 3, 5), b = random_poly(rng, 2, 3, 5), c = random_poly(rng, 2, 2, 4);
    const auto z = random_polydisk_point(rng, 2);
    EXPECT_LT(std::abs(eval(a * b, z) - eval(a, z) * eval(b, z)), 1e-11);
    EXPECT_LT(std::abs(eval(a + b, z) - eval(a, z) - eval(b, z)), 1e-12);
    EXPECT_LT(((a * (b + c)) - (a * b + a * c)).max_abs_coeff(), 1e-12);
    EXPECT_LT((a * b - b * a).max_abs_coeff(), 1e-14);
  }
}

TEST(Poly, ConjCoeffsIsReflectionOnTheTorus) {
  // conj(p(conj z)) = p~(z) for the coefficient-conjugated polynomial.
  Rng rng(3);
  const auto p = random_poly(rng, 2, 2, 6);
  const auto z = random_polydisk_point(rng, 2);
  const std::vector<C> zc = {std::conj(z[0]), std::conj(z[1])};
  EXPECT_LT(std::abs(eval(p.conj_coeffs(), z) - std::conj(eval(p, zc))), 1e-12);
}

TEST(Poly, MultidegreeAndTotalDegree) {
  const auto p = P(3, {{{1, 1, 1}, 3.0}, {{2, 0, 0}, 1.0}, {{0, 0, 0}, 1.0}});
  EXPECT_EQ(multidegree(p).exponents, (MultiIndex{2, 1, 1}));
  EXPECT_FALSE(multidegree(p).zero);
  EXPECT_EQ(total_degree(p), 3);
  EXPECT_TRUE(multidegree(Poly<Complex>(3)).zero);
}

TEST(Poly, AmplifySubstitutesPower) {
  Rng rng(5);
  const auto p = random_poly(rng, 3, 2, 6);
  for (int M : {1, 2, 3, 4}) {
    const auto pm = amplify(p, 0, M);
    const auto z = random_polydisk_point(rng, 3);
    const std::vector<C> zm = {std::pow(z[0], M), z[1], z[2]};
    EXPECT_LT(std::abs(eval(pm, z) - eval(p, zm)), 1e-12) << "M=" << M;
    EXPECT_EQ(multidegree(pm).exponents[0], M * multidegree(p).exponents[0]);
  }
  EXPECT_THROW(amplify(p, 3, 2), DimensionError);
}

TEST(VecPoly, ComponentsRoundTrip) {
  const auto f = P(2, {{{1, 0}, 1.0}, {{0, 0}, 2.0}});
  const auto g = P(2, {{{0, 1}, C(0, 1)}});
  const auto v = VecPoly<Complex>::from_components(2, {f, g});
  EXPECT_EQ(v.dim(), 2u);
  EXPECT_EQ(v.component(0), f);
  EXPECT_EQ(v.component(1), g);
  const std::vector<C> z = {C(0.3, 0.1), C(-0.2, 0.5)};
  const auto val = v.eval(z);
  EXPECT_LT(std::abs(val[0] - eval(f, z)), 1e-15);
  EXPECT_LT(std::abs(val[1] - eval(g, z)), 1e-15);
  EXPECT_EQ(multidegree(v).exponents, (MultiIndex{1, 1}));
  EXPECT_THROW(v.component(2), DimensionError);
}

TEST(LaurentPoly, EvalAndConjugateSymmetry) {
  // 10 - 3(z + 1/z) + (z/w + w/z): real on the torus.
  LaurentPoly<Complex> f(2);
  f.add_term(LaurentIndex{0, 0}, 10.0);
  f.add_term(LaurentIndex{1, 0}, -3.0);
  f.add_term(LaurentIndex{-1, 0}, -3.0);
  f.add_term(LaurentIndex{1, -1}, 1.0);
  f.add_term(LaurentIndex{-1, 1}, 1.0);
  EXPECT_EQ(f.conjugate_symmetry_defect(), 0.0);
  const C z = std::polar(1.0, 0.7), w = std::polar(1.0, -1.9);
  const C want = 10.0 - 6.0 * z.real() + 2.0 * (z * std::conj(w)).real();
  EXPECT_LT(std::abs(f.eval({z, w}) - want), 1e-13);
  f.add_term(LaurentIndex{0, 1}, C(0, 1));
  EXPECT_GT(f.conjugate_symmetry_defect(), 0.5);
}

TEST(Convert, ExactToFloat) {
  Poly<Surd> p(1);
  p.add_term(MultiIndex{0}, Surd::sqrt(15) * Surd(Rational(1) / 4));
  p.add_term(MultiIndex{2}, Surd::imaginary_unit());
  const auto f = convert<Complex>(p);
  EXPECT_DOUBLE_EQ(f.coeff(MultiIndex{0}).real(), std::sqrt(15.0) / 4);
  EXPECT_EQ(f.coeff(MultiIndex{2}), C(0, 1));
}
