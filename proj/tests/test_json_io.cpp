#include <gtest/gtest.h>

#include <complex>
#include <cstdio>
#include <filesystem>
#include <string>

#include "agler/demos.hpp"
#include "agler/errors.hpp"
#include "agler/json_io.hpp"
#include "agler/sampling.hpp"

using namespace agler;
using namespace agler::json_io;
using C = std::complex<double>;

namespace {

json parse(const std::string& s) { return json::parse(s); }

}  // namespace

TEST(JsonIo, PolyRoundTripsBitForBit) {
  const auto q = demo_trivar().q_float();
  EXPECT_EQ(poly_from_json<Complex>(to_json(q)), q);
  const auto d = demo_blaschke();
  EXPECT_EQ(poly_from_json<Surd>(to_json(d.p)), d.p);
  // Through text as well.
  EXPECT_EQ(poly_from_json<Complex>(json::parse(to_json(q).dump())), q);
}

TEST(JsonIo, ExactFieldCarriesSurds) {
  const Surd s = Surd::sqrt(Rational(15)) * Surd(Rational(1) / Rational(4));
  const json j = scalar_to_json(s);
  ASSERT_TRUE(j.contains("exact"));
  EXPECT_EQ(scalar_from_json<Surd>(j), s);
  EXPECT_NEAR(scalar_from_json<Complex>(j).real(), std::sqrt(15.0) / 4, 1e-16);
  // Without the field, the double is read exactly.
  EXPECT_EQ(scalar_from_json<Surd>(parse(R"({"re": 0.5, "im": -0.25})")),
            Surd(GaussianRational(Rational(1) / Rational(2), Rational(-1) / Rational(4))));
}

TEST(JsonIo, CertificateRoundTrip) {
  const auto d = demo_trivar();
  const auto back = certificate_from_json<Surd>(to_json(*d.certificate));
  ASSERT_EQ(back.nvars(), 3u);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(back.face(j), d.certificate->face(j));
  const auto fback = certificate_from_json<Complex>(to_json(*d.certificate_float()));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(fback.face(j), d.certificate_float()->face(j));
}

TEST(JsonIo, RealizationRoundTrip) {
  const auto d = demo_blaschke();
  const auto exact = exact_realization_from_json(to_json(*d.realization));
  EXPECT_EQ(exact.dims(), d.realization->dims());
  for (std::size_t r = 0; r < exact.U().rows(); ++r)
    for (std::size_t c = 0; c < exact.U().cols(); ++c) EXPECT_EQ(exact.U()(r, c), d.realization->U()(r, c));

  const auto f = d.realization->to_float();
  const auto back = realization_from_json(to_json(f));
  EXPECT_EQ((back.U() - f.U()).norm(), 0.0);
}

TEST(JsonIo, HermitianFormAndLaurentRoundTrip) {
  const auto d = demo_trivar();
  const auto form = mod2diff(d.p_float(), d.q_float());
  const auto back = hermform_from_json<Complex>(to_json(form));
  EXPECT_EQ((back - form).max_abs_coeff(), 0.0);
  const auto lp = face_extract(d.p_float(), d.q_float(), 0);
  EXPECT_EQ(laurent_from_json<Complex>(to_json(lp)), lp);
}

TEST(JsonIo, MalformedPolynomialsAreRejected) {
  EXPECT_THROW(poly_from_json<Complex>(parse(R"({"nvars": 2, "terms": [{"exp": [1, 0], "re": 1},
                                                {"exp": [1, 0], "re": 2}]})")),
               ParseError);
  EXPECT_THROW(poly_from_json<Complex>(parse(R"({"nvars": 2, "terms": [{"exp": [1], "re": 1}]})")), ParseError);
  EXPECT_THROW(poly_from_json<Complex>(parse(R"({"nvars": 1, "terms": [{"exp": [-1], "re": 1}]})")), ParseError);
  EXPECT_THROW(poly_from_json<Complex>(parse(R"({"nvars": 0, "terms": []})")), ParseError);
  EXPECT_THROW(poly_from_json<Complex>(parse(R"({"terms": []})")), ParseError);
  EXPECT_THROW(poly_from_json<Complex>(parse(R"({"nvars": 1, "terms": [{"exp": [0], "re": "x"}]})")),
               ParseError);
  // Negative exponents are fine for Laurent data.
  EXPECT_NO_THROW(laurent_from_json<Complex>(parse(R"({"nvars": 1, "terms": [{"exp": [-1], "re": 1}]})")));
}

TEST(JsonIo, MalformedStructuresAreRejected) {
  EXPECT_THROW(realization_from_json(parse(R"({"dims": [1], "U": [[{"re": 1}]]})")), ParseError);
  EXPECT_THROW(realization_from_json(parse(R"({"dims": [-1], "U": []})")), ParseError);
  EXPECT_THROW(vecpoly_from_json<Complex>(parse(R"({"nvars": 1, "dim": 2,
                                                    "terms": [{"exp": [0], "vec": [{"re": 1}]}]})")),
               ParseError);
  EXPECT_THROW(certificate_from_json<Complex>(parse(R"({"faces": [{"nvars": 2, "dim": 0, "terms": []}]})")),
               ParseError);
  EXPECT_THROW(hermform_from_json<Complex>(parse(R"({"basis": [[0], [1]],
                                                     "H": [[{"re": 1}, {"re": 2}], [{"re": 3}, {"re": 1}]]})")),
               ParseError);
}

TEST(JsonIo, NonUnitaryMatrixIsADomainError) {
  EXPECT_THROW(realization_from_json(parse(R"({"dims": [1], "U": [[{"re": 1}, {"re": 0.1}],
                                                                 [{"re": 0}, {"re": 1}]]})")),
               NotUnitaryError);
}

TEST(JsonIo, Files) {
  const auto path = (std::filesystem::temp_directory_path() / "agler_json_io_test.json").string();
  write_file(path, to_json(demo_coordinate().q_float()));
  EXPECT_EQ(poly_from_json<Complex>(read_file(path)), demo_coordinate().q_float());
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("{ not json", f);
    std::fclose(f);
  }
  EXPECT_THROW(read_file(path), ParseError);
  std::filesystem::remove(path);
  EXPECT_THROW(read_file(path), ParseError);
}
