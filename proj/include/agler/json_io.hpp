#pragma once

// JSON formats
//
//   Poly          {"nvars": n, "terms": [{"exp": [a1..an], "re": x, "im": y}, ...]}
//   LaurentPoly   same, exponents may be negative
//   VecPoly       {"nvars": n, "dim": k, "terms": [{"exp": [...], "vec": [{"re","im"}, ...]}]}
//   Certificate   {"faces": [VecPoly, ...]}
//   HermitianForm {"basis": [[exp...], ...], "H": [[{"re","im"}, ...], ...]}
//   Realization   {"dims": [...], "U": [[{"re","im"}, ...], ...]}
//
// A scalar object may carry "exact": "<text>" (see Surd::str) which exact
// readers prefer over re/im.

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "agler/certificate.hpp"
#include "agler/errors.hpp"
#include "agler/hermform.hpp"
#include "agler/polycore.hpp"
#include "agler/realize.hpp"

namespace agler::json_io {

using nlohmann::json;

inline json scalar_to_json(const Complex& c) { return {{"re", c.real()}, {"im", c.imag()}}; }

inline json scalar_to_json(const Surd& c) {
  const Complex v = c.to_complex();
  return {{"re", v.real()}, {"im", v.imag()}, {"exact", c.str()}};
}

namespace detail {

inline double number(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw ParseError(std::string("missing field '") + key + "'");
    return 0.0;
  }
  if (!j.at(key).is_number()) throw ParseError(std::string("field '") + key + "' is not a number");
  return j.at(key).get<double>();
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with field '") + key + "'");
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t positive_count(const json& j, const char* key, bool allow_zero = false) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
  const auto n = v.get<long long>();
  if (n < 0 || (n == 0 && !allow_zero)) throw ParseError(std::string("field '") + key + "' must be positive");
  return static_cast<std::size_t>(n);
}

template <bool Signed>
BasicIndex<Signed> exponent(const json& j, std::size_t nvars) {
  if (!j.is_array()) throw ParseError("exponent must be an array");
  if (j.size() != nvars) throw ParseError("exponent length " + std::to_string(j.size()) + " != nvars " + std::to_string(nvars));
  std::vector<int> e;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError("exponent entries must be integers");
    const int x = v.get<int>();
    if (!Signed && x < 0) throw ParseError("negative exponent in polynomial");
    e.push_back(x);
  }
  return BasicIndex<Signed>(std::move(e));
}

}  // namespace detail

template <class T>
T scalar_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scalar must be an object with re/im");
  if constexpr (std::is_same_v<T, Surd>) {
    if (j.contains("exact")) {
      if (!j.at("exact").is_string()) throw ParseError("'exact' must be a string");
      return Surd::parse(j.at("exact").get<std::string>());
    }
    return Surd::from_double(detail::number(j, "re", true), detail::number(j, "im", false));
  } else {
    return Complex(detail::number(j, "re", true), detail::number(j, "im", false));
  }
}

template <class T>
json to_json(const Poly<T>& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    json t = scalar_to_json(c);
    t["exp"] = e.values();
    terms.push_back(std::move(t));
  }
  return {{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

template <class T>
json to_json(const LaurentPoly<T>& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    json t = scalar_to_json(c);
    t["exp"] = e.values();
    terms.push_back(std::move(t));
  }
  return {{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

template <class T>
Poly<T> poly_from_json(const json& j) {
  const std::size_t n = detail::positive_count(j, "nvars");
  const json& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  Poly<T> p(n);
  std::set<MultiIndex, GradedLex> seen;
  for (const auto& t : terms) {
    const MultiIndex e = detail::exponent<false>(detail::field(t, "exp"), n);
    if (!seen.insert(e).second) throw ParseError("duplicate exponent " + e.str());
    p.add_term(e, scalar_from_json<T>(t));
  }
  return p;
}

template <class T>
LaurentPoly<T> laurent_from_json(const json& j) {
  const std::size_t n = detail::positive_count(j, "nvars", true);
  const json& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  LaurentPoly<T> p(n);
  std::set<LaurentIndex, GradedLex> seen;
  for (const auto& t : terms) {
    const LaurentIndex e = detail::exponent<true>(detail::field(t, "exp"), n);
    if (!seen.insert(e).second) throw ParseError("duplicate exponent " + e.str());
    p.add_term(e, scalar_from_json<T>(t));
  }
  return p;
}

template <class T>
json to_json(const VecPoly<T>& v) {
  json terms = json::array();
  for (const auto& [e, c] : v.terms()) {
    json vec = json::array();
    for (const auto& x : c) vec.push_back(scalar_to_json(x));
    terms.push_back({{"exp", e.values()}, {"vec", std::move(vec)}});
  }
  return {{"nvars", v.nvars()}, {"dim", v.dim()}, {"terms", std::move(terms)}};
}

template <class T>
VecPoly<T> vecpoly_from_json(const json& j) {
  const std::size_t n = detail::positive_count(j, "nvars");
  const std::size_t dim = detail::positive_count(j, "dim", true);
  const json& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  VecPoly<T> v(n, dim);
  std::set<MultiIndex, GradedLex> seen;
  for (const auto& t : terms) {
    const MultiIndex e = detail::exponent<false>(detail::field(t, "exp"), n);
    if (!seen.insert(e).second) throw ParseError("duplicate exponent " + e.str());
    const json& vec = detail::field(t, "vec");
    if (!vec.is_array() || vec.size() != dim) throw ParseError("'vec' must have length dim");
    for (std::size_t k = 0; k < dim; ++k) v.add_term(e, k, scalar_from_json<T>(vec[k]));
  }
  return v;
}

template <class T>
json to_json(const SosCertificate<T>& cert) {
  json faces = json::array();
  for (const auto& f : cert.faces()) faces.push_back(to_json(f));
  return {{"faces", std::move(faces)}};
}

template <class T>
SosCertificate<T> certificate_from_json(const json& j) {
  const json& faces = detail::field(j, "faces");
  if (!faces.is_array() || faces.empty()) throw ParseError("'faces' must be a non-empty array");
  std::vector<VecPoly<T>> out;
  for (const auto& f : faces) out.push_back(vecpoly_from_json<T>(f));
  const std::size_t n = out.front().nvars();
  if (out.size() != n) throw ParseError("certificate needs one face per variable");
  for (const auto& f : out)
    if (f.nvars() != n) throw ParseError("certificate faces disagree on nvars");
  return SosCertificate<T>(n, std::move(out));
}

template <class T>
json to_json(const HermitianForm<T>& form) {
  json basis = json::array(), H = json::array();
  for (const auto& e : form.basis()) basis.push_back(e.values());
  for (std::size_t r = 0; r < form.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < form.size(); ++c) row.push_back(scalar_to_json(form.at(r, c)));
    H.push_back(std::move(row));
  }
  return {{"basis", std::move(basis)}, {"H", std::move(H)}};
}

template <class T>
HermitianForm<T> hermform_from_json(const json& j) {
  const json& basis = detail::field(j, "basis");
  const json& H = detail::field(j, "H");
  if (!basis.is_array() || basis.empty()) throw ParseError("'basis' must be a non-empty array");
  if (!basis.front().is_array()) throw ParseError("basis entries must be arrays");
  const std::size_t n = basis.front().size();
  std::vector<MultiIndex> b;
  for (const auto& e : basis) b.push_back(detail::exponent<false>(e, n));
  if (!H.is_array() || H.size() != b.size()) throw ParseError("'H' must be square with the basis size");
  std::vector<T> h;
  for (const auto& row : H) {
    if (!row.is_array() || row.size() != b.size()) throw ParseError("'H' must be square with the basis size");
    for (const auto& x : row) h.push_back(scalar_from_json<T>(x));
  }
  try {
    return HermitianForm<T>(n, std::move(b), std::move(h));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline json to_json(const Realization& r) {
  json U = json::array();
  for (Eigen::Index i = 0; i < r.U().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < r.U().cols(); ++k) row.push_back(scalar_to_json(r.U()(i, k)));
    U.push_back(std::move(row));
  }
  return {{"dims", r.dims()}, {"U", std::move(U)}};
}

inline json to_json(const ExactRealization& r) {
  json U = json::array();
  for (std::size_t i = 0; i < r.U().rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < r.U().cols(); ++k) row.push_back(scalar_to_json(r.U()(i, k)));
    U.push_back(std::move(row));
  }
  return {{"dims", r.dims()}, {"U", std::move(U)}};
}

namespace detail {

template <class T>
std::pair<std::vector<std::size_t>, DenseMatrix<T>> realization_parts(const json& j) {
  const json& dj = field(j, "dims");
  if (!dj.is_array()) throw ParseError("'dims' must be an array");
  std::vector<std::size_t> dims;
  for (const auto& d : dj) {
    if (!d.is_number_integer() || d.get<long long>() < 0) throw ParseError("dims must be non-negative integers");
    dims.push_back(d.get<std::size_t>());
  }
  const std::size_t n = 1 + total_size(dims);
  const json& U = field(j, "U");
  if (!U.is_array() || U.size() != n) throw ParseError("'U' must be (1+N)x(1+N)");
  DenseMatrix<T> m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!U[r].is_array() || U[r].size() != n) throw ParseError("'U' must be (1+N)x(1+N)");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = scalar_from_json<T>(U[r][c]);
  }
  return {std::move(dims), std::move(m)};
}

}  // namespace detail

inline Realization realization_from_json(const json& j) {
  auto [dims, m] = detail::realization_parts<Complex>(j);
  Eigen::MatrixXcd U(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) U(r, c) = m(r, c);
  return Realization(std::move(dims), std::move(U));
}

inline ExactRealization exact_realization_from_json(const json& j) {
  auto [dims, m] = detail::realization_parts<Surd>(j);
  return ExactRealization(std::move(dims), std::move(m));
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace agler::json_io
