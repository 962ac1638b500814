#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "agler/demos.hpp"
#include "agler/errors.hpp"
#include "agler/realize.hpp"
#include "agler/sampling.hpp"
#include "agler/soscert.hpp"

using namespace agler;
using C = std::complex<double>;

namespace {

Rational Q(int a, int b = 1) { return Rational(a) / Rational(b); }

double max_torus_defect(const Poly<Complex>& p, const Poly<Complex>& q, Rng& rng, int n) {
  double m = 0;
  for (int i = 0; i < n; ++i) {
    const auto z = random_torus_point(rng, p.nvars());
    m = std::max(m, std::abs(std::abs(eval(q, z)) - std::abs(eval(p, z))));
  }
  return m;
}

}  // namespace

TEST(Blaschke, BundledMatrixIsUnitary) {
  const auto d = demo_blaschke();
  EXPECT_TRUE(d.realization->is_unitary());
  EXPECT_LT(d.realization->to_float().unitarity_residual(), 1e-12);
}

TEST(Blaschke, TransferFunctionMatches) {
  const auto r = demo_blaschke().realization->to_float();
  EXPECT_DOUBLE_EQ(transfer_eval(r, {C(0)}).real(), -0.25);
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const C z = random_disk_point(rng);
    EXPECT_LT(std::abs(transfer_eval(r, {z}) - (z * z - 0.25) / (1.0 - z * z / 4.0)), 1e-12);
  }
}

TEST(Blaschke, ToRationalIsExact) {
  const auto pq = to_rational(*demo_blaschke().realization);
  EXPECT_EQ(pq.p, Poly<Surd>(1, {{{0}, Surd(1)}, {{2}, Surd(Q(-1, 4))}}));
  EXPECT_EQ(pq.q, Poly<Surd>(1, {{{0}, Surd(Q(-1, 4))}, {{2}, Surd(1)}}));
}

TEST(Blaschke, SingularAtPole) {
  const auto r = demo_blaschke().realization->to_float();
  EXPECT_THROW(transfer_eval(r, {C(2.0)}), SingularityError);
  EXPECT_THROW(transfer_eval(r, {C(0.1), C(0.1)}), DimensionError);
}

TEST(TwoVariable, BundledMatrixIsUnitary) {
  const auto d = demo_twovar();
  EXPECT_TRUE(d.realization->is_unitary());
  EXPECT_EQ(transfer_eval(d.realization->to_float(), {C(0), C(0)}), C(0));
}

// The printed 3x3 matrix realizes -(2 z1 z2 - z1 - z2) / (2 - z1 - z2): at
// z2 = 0 the realization gives z1 / (2 - z1).
TEST(TwoVariable, PrintedMatrixRealizesNegatedFunction) {
  const auto d = demo_twovar();
  const auto pq = to_rational(*d.realization);
  const Surd h(Q(1, 2));
  EXPECT_EQ(pq.p, Poly<Surd>(2, {{{0, 0}, Surd(1)}, {{1, 0}, -h}, {{0, 1}, -h}}));
  EXPECT_EQ(pq.q, Poly<Surd>(2, {{{1, 0}, h}, {{0, 1}, h}, {{1, 1}, Surd(-1)}}));
  EXPECT_EQ(pq.q * d.p, Surd(-1) * d.q * pq.p);

  const auto r = d.realization->to_float();
  const C z1(0.4, -0.2);
  EXPECT_LT(std::abs(transfer_eval(r, {z1, C(0)}) - z1 / (2.0 - z1)), 1e-15);
}

TEST(TwoVariable, NegatingBRealizesStatedFunction) {
  const auto d = demo_twovar();
  DenseMatrix<Surd> U = d.realization->U();
  U(0, 1) = -U(0, 1);
  U(0, 2) = -U(0, 2);
  const ExactRealization fixed({1, 1}, U);
  EXPECT_TRUE(fixed.is_unitary());
  const auto pq = to_rational(fixed);
  EXPECT_EQ(pq.q * d.p, d.q * pq.p);
}

TEST(Realization, RejectsBadMatrices) {
  EXPECT_THROW(Realization({1}, Eigen::MatrixXcd::Identity(3, 3)), DimensionError);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(2, 2);
  U(0, 1) = 0.1;
  EXPECT_THROW(Realization({1}, U), NotUnitaryError);
}

TEST(PolyDet, MatchesNumericDeterminant) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t N = 1 + trial % 5;
    std::vector<std::vector<Poly<Complex>>> M(N, std::vector<Poly<Complex>>(N, Poly<Complex>(2)));
    for (auto& row : M)
      for (auto& e : row) {
        e.add_term(MultiIndex{0, 0}, complex_gaussian(rng));
        e.add_term(MultiIndex{1, 0}, complex_gaussian(rng));
        e.add_term(MultiIndex{0, 1}, complex_gaussian(rng));
      }
    const auto det = detail::poly_det(M, 2);
    const auto z = random_polydisk_point(rng, 2);
    Eigen::MatrixXcd A(N, N);
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) A(r, c) = eval(M[r][c], z);
    EXPECT_LT(std::abs(eval(det, z) - A.determinant()), 1e-10 * std::max(1.0, std::abs(A.determinant())));
  }
}

// Invariants for random unitary colligations with dims <= (2,2,2).
TEST(RandomRealization, RoundTripInvariants) {
  Rng rng(2024);
  std::uniform_int_distribution<int> dimdist(0, 2);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::size_t> dims(3);
    for (auto& d : dims) d = static_cast<std::size_t>(dimdist(rng));
    const Realization r = random_realization(dims, rng);
    EXPECT_LT(r.unitarity_residual(), 1e-12);

    const auto pq = to_rational(r);
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_LE(multidegree(pq.p).exponents[j], static_cast<int>(dims[j]));
      EXPECT_LE(multidegree(pq.q).exponents[j], static_cast<int>(dims[j]));
    }
    EXPECT_LT(max_torus_defect(pq.p, pq.q, rng, 20), 1e-10);
    for (int i = 0; i < 10; ++i) {
      const auto z = random_polydisk_point(rng, 3);
      EXPECT_LT(std::abs(transfer_eval(r, z) - eval(pq.q, z) / eval(pq.p, z)), 1e-9);
    }

    const auto cert = decomposition_from_realization(r);
    EXPECT_EQ(cert.counts(), dims);
    EXPECT_LT(verify_decomposition(pq.p, pq.q, cert), 1e-9);

    const Realization back = lurking_isometry(pq.p, pq.q, cert);
    EXPECT_LE(back.size(), total_size(dims));
    EXPECT_LT(realization_mismatch(back, pq.q, pq.p, 20, rng), 1e-8);
  }
}

TEST(Lurking, TrivarHasSizeNine) {
  const auto d = demo_trivar();
  const auto r = lurking_isometry(d.p_float(), d.q_float(), *d.certificate_float());
  EXPECT_EQ(r.size(), 9u);
  EXPECT_EQ(r.dims(), (std::vector<std::size_t>{3, 3, 3}));
  EXPECT_LT(r.unitarity_residual(), 1e-10);
  Rng rng(9);
  EXPECT_LT(realization_mismatch(r, d.q_float(), d.p_float(), 200, rng), 1e-8);
}

TEST(Lurking, CoordinateFunctionHasSizeOne) {
  const auto d = demo_coordinate();
  const auto r = lurking_isometry(d.p_float(), d.q_float(), *d.certificate_float());
  EXPECT_EQ(r.size(), 1u);
  EXPECT_NEAR(std::abs(transfer_eval(r, {C(0.3, 0.4)}) - C(0.3, 0.4)), 0.0, 1e-15);
}

TEST(Lurking, RejectsInvalidCertificate) {
  const auto d = demo_trivar();
  const auto bad = convert<Complex>(trivar_certificate({1, 2}));
  EXPECT_THROW(lurking_isometry(d.p_float(), d.q_float(), bad), NotIsometricError);
}

TEST(Lurking, RejectsVanishingDenominatorAtOrigin) {
  const auto p = Poly<Complex>::variable(1, 0), q = Poly<Complex>::constant(1, 1.0);
  SosCertificate<Complex> cert(1, {VecPoly<Complex>(1, 0)});
  EXPECT_THROW(lurking_isometry(p, q, cert), DegenerateInputError);
}

TEST(Stability, MarginDetectsZeros) {
  EXPECT_GT(stability_margin(demo_trivar().p_float()), 0.1);
  EXPECT_GT(stability_margin(demo_blaschke().p_float()), 0.1);
  EXPECT_EQ(stability_margin(Poly<Complex>::variable(2, 1)), 0.0);
}
