#pragma once

// Sparse multivariate polynomials with complex (or exact) coefficients.
//
// Poly<T>       : map MultiIndex -> T
// VecPoly<T>    : map MultiIndex -> vector<T> of fixed length
// LaurentPoly<T>: map LaurentIndex -> T, exponents may be negative
//
// Variable indices are 0-based throughout the C++ API.  Terms are kept in
// graded lexicographic order and zero coefficients are never stored.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agler/errors.hpp"
#include "agler/exact.hpp"

namespace agler {

using Complex = std::complex<double>;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  // Pruning threshold for stored coefficients.
  static constexpr double prune_tol = 1e-14;
  static bool is_zero(const Complex& c) { return std::abs(c) <= prune_tol; }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static Complex to_complex(const Complex& c) { return c; }
  static Complex from_int(long v) { return Complex(static_cast<double>(v), 0.0); }
};

template <>
struct ScalarTraits<Surd> {
  static constexpr bool exact = true;
  static bool is_zero(const Surd& c) { return c.is_zero(); }
  static Surd conj(const Surd& c) { return c.conj(); }
  static Complex to_complex(const Surd& c) { return c.to_complex(); }
  static Surd from_int(long v) { return Surd(Rational(v)); }
};

template <class T>
double magnitude(const T& c) {
  return std::abs(ScalarTraits<T>::to_complex(c));
}

// ---------------------------------------------------------------------------
// Exponent vectors

template <bool Signed>
class BasicIndex {
 public:
  BasicIndex() = default;
  explicit BasicIndex(std::size_t nvars) : e_(nvars, 0) {}
  BasicIndex(std::initializer_list<int> e) : e_(e) { validate(); }
  explicit BasicIndex(std::vector<int> e) : e_(std::move(e)) { validate(); }

  static BasicIndex unit(std::size_t nvars, std::size_t j) {
    BasicIndex out(nvars);
    out.e_.at(j) = 1;
    return out;
  }

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  const std::vector<int>& values() const { return e_; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  int total_degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

  BasicIndex with(std::size_t i, int v) const {
    BasicIndex out = *this;
    out.e_.at(i) = v;
    out.validate();
    return out;
  }

  friend BasicIndex operator+(const BasicIndex& a, const BasicIndex& b) {
    check_same(a, b);
    BasicIndex out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out.e_[i] += b.e_[i];
    return out;
  }

  friend bool operator==(const BasicIndex&, const BasicIndex&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

 private:
  static void check_same(const BasicIndex& a, const BasicIndex& b) {
    if (a.size() != b.size()) throw DimensionError("exponent vectors of different length");
  }
  void validate() const {
    if constexpr (!Signed) {
      for (int v : e_)
        if (v < 0) throw DimensionError("negative exponent in MultiIndex");
    }
  }

  std::vector<int> e_;
};

using MultiIndex = BasicIndex<false>;
using LaurentIndex = BasicIndex<true>;

// Graded lexicographic: lower total degree first, then z_1 > z_2 > ... within
// a degree, so the degree-one monomials list as z_1, z_2, ..., z_n.
struct GradedLex {
  template <bool S>
  bool operator()(const BasicIndex<S>& a, const BasicIndex<S>& b) const {
    const int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

inline LaurentIndex difference(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw DimensionError("exponent vectors of different length");
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] - b[i];
  return LaurentIndex(std::move(e));
}

// Componentwise a <= b.
inline bool dominated_by(const MultiIndex& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b.at(i)) return false;
  return true;
}

inline Complex int_power(Complex z, int k) {
  if (k < 0) return Complex(1.0) / int_power(z, -k);
  Complex out(1.0);
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

template <bool S>
Complex monomial_value(const BasicIndex<S>& e, std::span<const Complex> z) {
  Complex out(1.0);
  for (std::size_t i = 0; i < e.size(); ++i) out *= int_power(z[i], e[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Poly

template <class T>
class Poly {
 public:
  using Scalar = T;
  using TermMap = std::map<MultiIndex, T, GradedLex>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  Poly(std::size_t nvars, std::initializer_list<std::pair<MultiIndex, T>> terms) : nvars_(nvars) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static Poly constant(std::size_t nvars, const T& c) {
    Poly p(nvars);
    p.add_term(MultiIndex(nvars), c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t j) {
    if (j >= nvars) throw DimensionError("variable index out of range");
    Poly p(nvars);
    p.add_term(MultiIndex::unit(nvars, j), ScalarTraits<T>::from_int(1));
    return p;
  }
  static Poly monomial(const MultiIndex& e, const T& c) {
    Poly p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  T coeff(const MultiIndex& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T{} : it->second;
  }

  // Adds c to the coefficient of z^e.
  void add_term(const MultiIndex& e, const T& c) {
    if (e.size() != nvars_) throw DimensionError("exponent length does not match nvars");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!ScalarTraits<T>::is_zero(c)) terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (ScalarTraits<T>::is_zero(it->second)) terms_.erase(it);
  }

  Poly conj_coeffs() const {
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, ScalarTraits<T>::conj(c));
    return out;
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, magnitude(c));
    return m;
  }

  Poly& operator+=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly out(a.nvars_);
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }
  friend Poly operator*(const T& s, const Poly& a) {
    Poly out(a.nvars_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, s * c);
    return out;
  }
  friend Poly operator*(const Poly& a, const T& s) { return s * a; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_same(const Poly& o) const {
    if (o.nvars_ != nvars_) throw DimensionError("polynomials in different numbers of variables");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

template <class T>
Complex eval(const Poly<T>& p, std::span<const Complex> z) {
  if (z.size() != p.nvars()) throw DimensionError("evaluation point has wrong length");
  Complex out(0.0);
  for (const auto& [e, c] : p.terms()) out += ScalarTraits<T>::to_complex(c) * monomial_value(e, z);
  return out;
}

template <class T>
Complex eval(const Poly<T>& p, std::initializer_list<Complex> z) {
  return eval(p, std::span<const Complex>(z.begin(), z.size()));
}

// Substitutes z_j -> z_j^M.
template <class T>
Poly<T> amplify(const Poly<T>& p, std::size_t j, int M) {
  if (j >= p.nvars()) throw DimensionError("amplify: variable index out of range");
  if (M < 1) throw std::invalid_argument("amplify: M must be positive");
  Poly<T> out(p.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term(e.with(j, e[j] * M), c);
  return out;
}

struct Multidegree {
  MultiIndex exponents;
  bool zero = false;  // set for the zero polynomial, whose exponents are all 0
};

template <class T>
Multidegree multidegree(const Poly<T>& p) {
  std::vector<int> d(p.nvars(), 0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(d[i], e[i]);
  return {MultiIndex(std::move(d)), p.is_zero()};
}

template <class T>
int total_degree(const Poly<T>& p) {
  int d = 0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, e.total_degree());
  return d;
}

inline std::vector<int> componentwise_max(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw DimensionError("componentwise_max: length mismatch");
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

template <class To, class From>
To convert_scalar(const From& c) {
  if constexpr (std::is_same_v<To, From>) {
    return c;
  } else if constexpr (std::is_same_v<To, Complex>) {
    return ScalarTraits<From>::to_complex(c);
  } else {
    static_assert(std::is_same_v<To, Surd> && std::is_same_v<From, Complex>);
    return Surd::from_double(c.real(), c.imag());
  }
}

template <class To, class From>
Poly<To> convert(const Poly<From>& p) {
  Poly<To> out(p.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, convert_scalar<To>(c));
  return out;
}

// ---------------------------------------------------------------------------
// VecPoly

template <class T>
class VecPoly {
 public:
  using Scalar = T;
  using TermMap = std::map<MultiIndex, std::vector<T>, GradedLex>;

  VecPoly() = default;
  VecPoly(std::size_t nvars, std::size_t dim) : nvars_(nvars), dim_(dim) {}

  static VecPoly from_components(std::size_t nvars, const std::vector<Poly<T>>& comps) {
    VecPoly out(nvars, comps.size());
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (comps[k].nvars() != nvars) throw DimensionError("component has wrong nvars");
      for (const auto& [e, c] : comps[k].terms()) out.add_term(e, k, c);
    }
    return out;
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& e, std::size_t k, const T& c) {
    if (e.size() != nvars_) throw DimensionError("exponent length does not match nvars");
    if (k >= dim_) throw DimensionError("component index out of range");
    if (ScalarTraits<T>::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) it = terms_.emplace(e, std::vector<T>(dim_)).first;
    it->second[k] += c;
    prune(it);
  }

  void add_term(const MultiIndex& e, const std::vector<T>& v) {
    if (v.size() != dim_) throw DimensionError("vector coefficient has wrong length");
    for (std::size_t k = 0; k < dim_; ++k) add_term(e, k, v[k]);
  }

  Poly<T> component(std::size_t k) const {
    if (k >= dim_) throw DimensionError("component index out of range");
    Poly<T> out(nvars_);
    for (const auto& [e, v] : terms_) out.add_term(e, v[k]);
    return out;
  }

  std::vector<Poly<T>> components() const {
    std::vector<Poly<T>> out;
    for (std::size_t k = 0; k < dim_; ++k) out.push_back(component(k));
    return out;
  }

  std::vector<Complex> eval(std::span<const Complex> z) const {
    if (z.size() != nvars_) throw DimensionError("evaluation point has wrong length");
    std::vector<Complex> out(dim_, Complex(0.0));
    for (const auto& [e, v] : terms_) {
      const Complex m = monomial_value(e, z);
      for (std::size_t k = 0; k < dim_; ++k) out[k] += ScalarTraits<T>::to_complex(v[k]) * m;
    }
    return out;
  }

  friend bool operator==(const VecPoly& a, const VecPoly& b) {
    return a.nvars_ == b.nvars_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  void prune(typename TermMap::iterator it) {
    for (auto& c : it->second)
      if (ScalarTraits<T>::is_zero(c)) c = T{};
    if (std::all_of(it->second.begin(), it->second.end(),
                    [](const T& c) { return ScalarTraits<T>::is_zero(c); }))
      terms_.erase(it);
  }

  std::size_t nvars_ = 0;
  std::size_t dim_ = 0;
  TermMap terms_;
};

template <class T>
Multidegree multidegree(const VecPoly<T>& v) {
  std::vector<int> d(v.nvars(), 0);
  for (const auto& [e, c] : v.terms())
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(d[i], e[i]);
  return {MultiIndex(std::move(d)), v.is_zero()};
}

template <class T>
int total_degree(const VecPoly<T>& v) {
  int d = 0;
  for (const auto& [e, c] : v.terms()) d = std::max(d, e.total_degree());
  return d;
}

template <class T>
VecPoly<T> amplify(const VecPoly<T>& v, std::size_t j, int M) {
  if (j >= v.nvars()) throw DimensionError("amplify: variable index out of range");
  if (M < 1) throw std::invalid_argument("amplify: M must be positive");
  VecPoly<T> out(v.nvars(), v.dim());
  for (const auto& [e, c] : v.terms()) out.add_term(e.with(j, e[j] * M), c);
  return out;
}

template <class To, class From>
VecPoly<To> convert(const VecPoly<From>& v) {
  VecPoly<To> out(v.nvars(), v.dim());
  for (const auto& [e, c] : v.terms())
    for (std::size_t k = 0; k < c.size(); ++k) out.add_term(e, k, convert_scalar<To>(c[k]));
  return out;
}

// ---------------------------------------------------------------------------
// LaurentPoly

template <class T>
class LaurentPoly {
 public:
  using Scalar = T;
  using TermMap = std::map<LaurentIndex, T, GradedLex>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  T coeff(const LaurentIndex& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T{} : it->second;
  }

  void add_term(const LaurentIndex& e, const T& c) {
    if (e.size() != nvars_) throw DimensionError("exponent length does not match nvars");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!ScalarTraits<T>::is_zero(c)) terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (ScalarTraits<T>::is_zero(it->second)) terms_.erase(it);
  }

  // Evaluation at torus points (or any nonzero point).
  Complex eval(std::span<const Complex> z) const {
    if (z.size() != nvars_) throw DimensionError("evaluation point has wrong length");
    Complex out(0.0);
    for (const auto& [e, c] : terms_) out += ScalarTraits<T>::to_complex(c) * monomial_value(e, z);
    return out;
  }
  Complex eval(std::initializer_list<Complex> z) const {
    return eval(std::span<const Complex>(z.begin(), z.size()));
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, magnitude(c));
    return m;
  }

  // max |c(-g) - conj(c(g))|; zero for a real-valued trigonometric polynomial.
  double conjugate_symmetry_defect() const {
    double m = 0;
    for (const auto& [e, c] : terms_) {
      std::vector<int> neg(e.values());
      for (int& v : neg) v = -v;
      const Complex partner = ScalarTraits<T>::to_complex(coeff(LaurentIndex(neg)));
      m = std::max(m, std::abs(partner - std::conj(ScalarTraits<T>::to_complex(c))));
    }
    return m;
  }

  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly out(a.nvars_);
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("Laurent polynomials in different nvars");
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

template <class To, class From>
LaurentPoly<To> convert(const LaurentPoly<From>& p) {
  LaurentPoly<To> out(p.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, convert_scalar<To>(c));
  return out;
}

}  // namespace agler
