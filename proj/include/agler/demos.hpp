#pragma once

// Bundled examples: a one-variable Blaschke product, a two-variable inner
// function with a 3x3 unitary, the three-variable function
//
//   f = (3 z1 z2 z3 - z1 z2 - z1 z3 - z2 z3) / (3 - z1 - z2 - z3)
//
// with its hand-written sums-of-squares certificate, and f = z1.
// Everything is stored exactly; float versions are obtained by conversion.

#include <optional>
#include <string>
#include <vector>

#include "agler/certificate.hpp"
#include "agler/errors.hpp"
#include "agler/exact.hpp"
#include "agler/polycore.hpp"
#include "agler/realize.hpp"

namespace agler {

struct DemoBundle {
  std::string name;
  std::size_t nvars = 0;
  Poly<Surd> p, q;
  std::optional<SosCertificate<Surd>> certificate;
  std::optional<ExactRealization> realization;
  std::optional<std::size_t> expected_size;         // size of the lurking-isometry realization
  std::optional<std::size_t> expected_lower_bound;  // size_lower_bound(p, q)

  Poly<Complex> p_float() const { return convert<Complex>(p); }
  Poly<Complex> q_float() const { return convert<Complex>(q); }
  std::optional<SosCertificate<Complex>> certificate_float() const {
    if (!certificate) return std::nullopt;
    return convert<Complex>(*certificate);
  }
};

namespace demo_detail {

inline Rational frac(int a, int b) { return Rational(a) / Rational(b); }

inline DenseMatrix<Surd> matrix(std::initializer_list<std::initializer_list<Surd>> rows) {
  const std::size_t n = rows.size();
  DenseMatrix<Surd> m(n, n);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw DimensionError("demo matrix must be square");
    std::size_t c = 0;
    for (const auto& x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

// Embeds a polynomial in (z, w) into n variables with z -> z_a, w -> z_b.
inline Poly<Surd> embed2(const Poly<Surd>& f, std::size_t n, std::size_t a, std::size_t b) {
  Poly<Surd> out(n);
  for (const auto& [e, c] : f.terms()) {
    std::vector<int> x(n, 0);
    x[a] = e[0];
    x[b] = e[1];
    out.add_term(MultiIndex(std::move(x)), c);
  }
  return out;
}

inline VecPoly<Surd> scaled(const VecPoly<Surd>& v, const Surd& s) {
  VecPoly<Surd> out(v.nvars(), v.dim());
  for (const auto& [e, c] : v.terms())
    for (std::size_t k = 0; k < c.size(); ++k) out.add_term(e, k, s * c[k]);
  return out;
}

}  // namespace demo_detail

inline DemoBundle demo_blaschke() {
  using demo_detail::frac;
  const Surd r = Surd::sqrt(15) * Surd(frac(1, 4));
  DemoBundle d;
  d.name = "blaschke";
  d.nvars = 1;
  d.p = Poly<Surd>(1, {{MultiIndex{0}, Surd(1)}, {MultiIndex{2}, Surd(frac(-1, 4))}});
  d.q = Poly<Surd>(1, {{MultiIndex{0}, Surd(frac(-1, 4))}, {MultiIndex{2}, Surd(1)}});
  d.realization = ExactRealization({2}, demo_detail::matrix({{Surd(frac(-1, 4)), 0, r},
                                                             {r, 0, Surd(frac(1, 4))},
                                                             {0, 1, 0}}));
  d.certificate = decomposition_from_realization(d.realization->dims(), d.realization->U());
  d.expected_size = 2;
  return d;
}

inline DemoBundle demo_twovar() {
  using demo_detail::frac;
  const Surd h = Surd::sqrt(2) * Surd(frac(1, 2));
  const Surd half(frac(1, 2));
  DemoBundle d;
  d.name = "twovar";
  d.nvars = 2;
  d.p = Poly<Surd>(2, {{MultiIndex{0, 0}, Surd(2)}, {MultiIndex{1, 0}, Surd(-1)}, {MultiIndex{0, 1}, Surd(-1)}});
  d.q = Poly<Surd>(2, {{MultiIndex{1, 1}, Surd(2)}, {MultiIndex{1, 0}, Surd(-1)}, {MultiIndex{0, 1}, Surd(-1)}});
  d.realization = ExactRealization({1, 1}, demo_detail::matrix({{0, h, h}, {h, half, -half}, {h, -half, half}}));
  // The realization yields (p, q) / 2, so its certificate is scaled by 2.
  const auto base = decomposition_from_realization(d.realization->dims(), d.realization->U());
  std::vector<VecPoly<Surd>> faces;
  for (const auto& f : base.faces()) faces.push_back(demo_detail::scaled(f, Surd(2)));
  d.certificate = SosCertificate<Surd>(2, std::move(faces));
  d.expected_size = 2;
  return d;
}

// Three-variable certificate: face j is S evaluated at the two variables
// other than z_j, where S(z, w) = |P1|^2 + |P2|^2 + |P3|^2 with
//   P1 = sqrt3 (z w - z/2 - w/2),  P2 = sqrt3 (1 - z/2 - w/2),  P3 = (sqrt2/2)(z - w).
inline Poly<Surd> trivar_P(int k) {
  using demo_detail::frac;
  const Surd s3 = Surd::sqrt(3), s3h = s3 * Surd(frac(-1, 2));
  switch (k) {
    case 1:
      return Poly<Surd>(2, {{MultiIndex{1, 1}, s3}, {MultiIndex{1, 0}, s3h}, {MultiIndex{0, 1}, s3h}});
    case 2:
      return Poly<Surd>(2, {{MultiIndex{0, 0}, s3}, {MultiIndex{1, 0}, s3h}, {MultiIndex{0, 1}, s3h}});
    case 3: {
      const Surd h = Surd::sqrt(2) * Surd(frac(1, 2));
      return Poly<Surd>(2, {{MultiIndex{1, 0}, h}, {MultiIndex{0, 1}, -h}});
    }
    default:
      throw std::invalid_argument("trivar_P: k must be 1, 2 or 3");
  }
}

// The certificate with a chosen subset of P1..P3 kept in every face.
inline SosCertificate<Surd> trivar_certificate(const std::vector<int>& keep = {1, 2, 3}) {
  const std::size_t others[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  std::vector<VecPoly<Surd>> faces;
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<Poly<Surd>> comps;
    for (int k : keep) comps.push_back(demo_detail::embed2(trivar_P(k), 3, others[j][0], others[j][1]));
    faces.push_back(VecPoly<Surd>::from_components(3, comps));
  }
  return SosCertificate<Surd>(3, std::move(faces));
}

inline DemoBundle demo_trivar() {
  DemoBundle d;
  d.name = "trivar";
  d.nvars = 3;
  d.p = Poly<Surd>(3, {{MultiIndex{0, 0, 0}, Surd(3)},
                       {MultiIndex{1, 0, 0}, Surd(-1)},
                       {MultiIndex{0, 1, 0}, Surd(-1)},
                       {MultiIndex{0, 0, 1}, Surd(-1)}});
  d.q = Poly<Surd>(3, {{MultiIndex{1, 1, 1}, Surd(3)},
                       {MultiIndex{1, 1, 0}, Surd(-1)},
                       {MultiIndex{1, 0, 1}, Surd(-1)},
                       {MultiIndex{0, 1, 1}, Surd(-1)}});
  d.certificate = trivar_certificate();
  d.expected_size = 9;
  d.expected_lower_bound = 6;
  return d;
}

inline DemoBundle demo_coordinate() {
  DemoBundle d;
  d.name = "coordinate";
  d.nvars = 1;
  d.p = Poly<Surd>::constant(1, Surd(1));
  d.q = Poly<Surd>::variable(1, 0);
  d.realization = ExactRealization({1}, demo_detail::matrix({{0, 1}, {1, 0}}));
  d.certificate = SosCertificate<Surd>(1, {VecPoly<Surd>::from_components(1, {Poly<Surd>::constant(1, Surd(1))})});
  d.expected_size = 1;
  d.expected_lower_bound = 1;
  return d;
}

inline std::vector<std::string> demo_names() { return {"blaschke", "twovar", "trivar", "coordinate"}; }

inline DemoBundle load_demo(const std::string& name) {
  if (name == "blaschke") return demo_blaschke();
  if (name == "twovar") return demo_twovar();
  if (name == "trivar") return demo_trivar();
  if (name == "coordinate") return demo_coordinate();
  throw std::invalid_argument("unknown demo '" + name + "'");
}

}  // namespace agler
