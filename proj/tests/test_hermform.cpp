#include <gtest/gtest.h>

#include <complex>
#include <vector>

#include "agler/demos.hpp"
#include "agler/errors.hpp"
#include "agler/hermform.hpp"
#include "agler/sampling.hpp"
#include "oracles.hpp"

using namespace agler;
using C = std::complex<double>;

namespace {

const DemoBundle& trivar() {
  static const DemoBundle d = demo_trivar();
  return d;
}

}  // namespace

TEST(HermitianForm, ConstructorValidates) {
  const std::vector<MultiIndex> b = {{0}, {1}};
  EXPECT_NO_THROW(HermitianForm<Complex>(1, b, {1.0, C(0, 2), C(0, -2), 3.0}));
  EXPECT_THROW(HermitianForm<Complex>(1, b, {1.0, C(0, 2), C(0, 2), 3.0}), std::invalid_argument);
  EXPECT_THROW(HermitianForm<Complex>(1, b, {1.0, 2.0, 3.0}), DimensionError);
  EXPECT_THROW(HermitianForm<Complex>(1, {{0}, {0}}, {1.0, 0.0, 0.0, 1.0}), DimensionError);
  EXPECT_THROW(HermitianForm<Surd>(1, b, {1, Surd::sqrt(2), Surd::sqrt(3), 1}), std::invalid_argument);
}

TEST(HermitianForm, Mod2DiffEvaluatesToKernelDifference) {
  const auto p = trivar().p_float(), q = trivar().q_float();
  const auto form = mod2diff(p, q);
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const auto z = random_polydisk_point(rng, 3), w = random_polydisk_point(rng, 3);
    const C want = eval(p, z) * std::conj(eval(p, w)) - eval(q, z) * std::conj(eval(q, w));
    EXPECT_LT(std::abs(form.value(z, w) - want), 1e-12);
  }
}

TEST(HermitianForm, Mod2DiffKeepsAllMonomialsInBasis) {
  // p = q gives the zero form but on the full support.
  const auto p = Poly<Complex>(2, {{{0, 0}, 1.0}, {{1, 1}, 2.0}});
  const auto form = mod2diff(p, p);
  EXPECT_TRUE(form.is_zero());
  EXPECT_EQ(form.size(), 2u);
}

TEST(HermitianForm, TorusRestrictionMatchesSampledFourierCoefficients) {
  const auto p = trivar().p_float(), q = trivar().q_float();
  const auto lp = torus_restrict(mod2diff(p, q));
  const auto dft = oracle::torus_fourier(
      [&](const std::vector<C>& z) { return std::norm(eval(p, z)) - std::norm(eval(q, z)); }, 3, 1);
  EXPECT_LT(oracle::coefficient_distance(dft, lp), 1e-12);
  EXPECT_LT(lp.conjugate_symmetry_defect(), 1e-15);
}

TEST(HermitianForm, TrivarCertificateCancelsExactly) {
  const auto& d = trivar();
  const auto rest = subtract_sos(mod2diff(d.p, d.q), *d.certificate);
  EXPECT_TRUE(rest.is_zero());
}

TEST(HermitianForm, KernelFormIsPositive) {
  const auto& d = trivar();
  const auto cert = *d.certificate_float();
  Rng rng(4);
  const auto K = kernel_form(cert.face(0));
  for (int t = 0; t < 20; ++t) {
    const auto z = random_polydisk_point(rng, 3);
    const C v = K.value(z, z);
    EXPECT_GE(v.real(), -1e-14);
    EXPECT_LT(std::abs(v.imag()), 1e-14);
    double direct = 0;
    for (const auto& c : cert.face(0).eval(z)) direct += std::norm(c);
    EXPECT_NEAR(v.real(), direct, 1e-12);
  }
}

TEST(FaceExtract, TrivarFacesHaveStatedCoefficients) {
  // 10 - 6 Re(z + w) + 2 Re(z conj(w)) on each face.
  const auto& d = trivar();
  for (std::size_t j = 0; j < 3; ++j) {
    const auto f = face_extract(d.p, d.q, j);
    EXPECT_EQ(f.nvars(), 2u);
    EXPECT_EQ(f.coeff(LaurentIndex{0, 0}), Surd(10));
    EXPECT_EQ(f.coeff(LaurentIndex{1, 0}), Surd(-3));
    EXPECT_EQ(f.coeff(LaurentIndex{-1, 0}), Surd(-3));
    EXPECT_EQ(f.coeff(LaurentIndex{0, 1}), Surd(-3));
    EXPECT_EQ(f.coeff(LaurentIndex{0, -1}), Surd(-3));
    EXPECT_EQ(f.coeff(LaurentIndex{1, -1}), Surd(1));
    EXPECT_EQ(f.coeff(LaurentIndex{-1, 1}), Surd(1));
    EXPECT_TRUE(f.coeff(LaurentIndex{1, 1}).is_zero());
  }
}

TEST(FaceExtract, MatchesQuotientOracle) {
  // c0(z') = (|p|^2 - |q|^2) / (1 - |z_j|^2) for any interior z_j.
  const auto& d = trivar();
  const auto p = d.p_float(), q = d.q_float();
  for (std::size_t j = 0; j < 3; ++j) {
    const auto lp = face_extract(p, q, j);
    const auto dft = oracle::torus_fourier(
        [&](const std::vector<C>& w) {
          std::vector<C> z;
          for (std::size_t k = 0, i = 0; k < 3; ++k) z.push_back(k == j ? C(0.3, 0.4) : w[i++]);
          return (std::norm(eval(p, z)) - std::norm(eval(q, z))) / (1 - std::norm(z[j]));
        },
        2, 1);
    EXPECT_LT(oracle::coefficient_distance(dft, lp), 1e-11) << "face " << j;
  }
}

TEST(FaceExtract, ErrorCases) {
  // Degree two in z_1.
  const auto p2 = Poly<Complex>(2, {{{0, 0}, 1.0}, {{2, 0}, -0.25}});
  EXPECT_THROW(face_extract(p2, Poly<Complex>(2), 0), UnsupportedDegreeError);
  // 2 / z_1 with q = z_1 is not inner: 4 - |z_1|^2 does not factor.
  const auto p = Poly<Complex>::constant(2, 2.0), q = Poly<Complex>::variable(2, 0);
  EXPECT_THROW(face_extract(p, q, 0), FaceNotFactorableError);
  EXPECT_THROW(face_extract(p, q, 2), DimensionError);
  // A coordinate function: face 1 is the constant 1, face 2 is zero.
  EXPECT_EQ(face_extract(Poly<Complex>::constant(2, 1.0), q, 0).coeff(LaurentIndex{0}), C(1.0));
  EXPECT_TRUE(face_extract(Poly<Complex>::constant(2, 1.0), q, 1).is_zero());
}
