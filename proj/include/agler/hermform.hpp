#pragma once

// Hermitian forms over monomial bases.
//
// A form K(z, zeta) = sum_{a,b} H[b][a] z^{basis[a]} conj(zeta)^{basis[b]}
// = m(zeta)^* H m(z).  Row index is the conj(zeta) side, column index the z
// side, so the kernel p(z) conj(p(zeta)) has H[b][a] = conj(p_b) p_a.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "agler/certificate.hpp"
#include "agler/polycore.hpp"

namespace agler {

struct BiIndexLess {
  bool operator()(const std::pair<MultiIndex, MultiIndex>& x,
                  const std::pair<MultiIndex, MultiIndex>& y) const {
    GradedLex lt;
    if (lt(x.first, y.first)) return true;
    if (lt(y.first, x.first)) return false;
    return lt(x.second, y.second);
  }
};

// Coefficient map (alpha, beta) -> coefficient of z^alpha conj(zeta)^beta.
template <class T>
using BiTermMap = std::map<std::pair<MultiIndex, MultiIndex>, T, BiIndexLess>;

template <class T>
void accumulate(BiTermMap<T>& m, const MultiIndex& a, const MultiIndex& b, const T& c) {
  if (ScalarTraits<T>::is_zero(c)) return;
  auto key = std::make_pair(a, b);
  auto it = m.find(key);
  if (it == m.end()) {
    m.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (ScalarTraits<T>::is_zero(it->second)) m.erase(it);
}

template <class T>
class HermitianForm {
 public:
  using Scalar = T;

  HermitianForm() = default;
  explicit HermitianForm(std::size_t nvars) : nvars_(nvars) {}

  HermitianForm(std::size_t nvars, std::vector<MultiIndex> basis, std::vector<T> H)
      : nvars_(nvars), basis_(std::move(basis)), H_(std::move(H)) {
    if (H_.size() != basis_.size() * basis_.size())
      throw DimensionError("Hermitian matrix size does not match basis");
    std::set<MultiIndex, GradedLex> seen;
    for (const auto& e : basis_) {
      if (e.size() != nvars_) throw DimensionError("basis exponent has wrong length");
      if (!seen.insert(e).second) throw DimensionError("duplicate basis monomial " + e.str());
    }
    const double defect = hermitian_defect();
    if constexpr (ScalarTraits<T>::exact) {
      if (defect != 0.0) throw std::invalid_argument("form matrix is not Hermitian");
    } else {
      if (defect >= 1e-13 * std::max(1.0, max_abs_coeff()))
        throw std::invalid_argument("form matrix is not Hermitian");
    }
  }

  // Builds the form from sparse coefficients; the basis is the union of all
  // exponents that occur, in graded lexicographic order.
  static HermitianForm from_terms(std::size_t nvars, const BiTermMap<T>& terms) {
    std::set<MultiIndex, GradedLex> support;
    for (const auto& [key, c] : terms) {
      support.insert(key.first);
      support.insert(key.second);
    }
    std::vector<MultiIndex> basis(support.begin(), support.end());
    std::map<MultiIndex, std::size_t, GradedLex> pos;
    for (std::size_t i = 0; i < basis.size(); ++i) pos.emplace(basis[i], i);
    std::vector<T> H(basis.size() * basis.size());
    for (const auto& [key, c] : terms) H[pos.at(key.second) * basis.size() + pos.at(key.first)] = c;
    return HermitianForm(nvars, std::move(basis), std::move(H));
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<MultiIndex>& basis() const { return basis_; }
  const std::vector<T>& matrix() const { return H_; }
  const T& at(std::size_t row, std::size_t col) const { return H_[row * basis_.size() + col]; }

  BiTermMap<T> terms() const {
    BiTermMap<T> out;
    const std::size_t n = basis_.size();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) accumulate(out, basis_[c], basis_[r], H_[r * n + c]);
    return out;
  }

  bool is_zero() const {
    return std::all_of(H_.begin(), H_.end(), [](const T& c) { return ScalarTraits<T>::is_zero(c); });
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& c : H_) m = std::max(m, magnitude(c));
    return m;
  }

  double hermitian_defect() const {
    const std::size_t n = basis_.size();
    double m = 0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r; c < n; ++c) {
        const T d = H_[r * n + c] - ScalarTraits<T>::conj(H_[c * n + r]);
        if constexpr (ScalarTraits<T>::exact) {
          if (!d.is_zero()) m = std::max(m, std::max(magnitude(d), 1e-300));
        } else {
          m = std::max(m, magnitude(d));
        }
      }
    return m;
  }

  // m(zeta)^* H m(z)
  Complex value(std::span<const Complex> z, std::span<const Complex> zeta) const {
    if (z.size() != nvars_ || zeta.size() != nvars_) throw DimensionError("form evaluated at wrong length");
    const std::size_t n = basis_.size();
    std::vector<Complex> mz(n), mzeta(n);
    for (std::size_t i = 0; i < n; ++i) {
      mz[i] = monomial_value(basis_[i], z);
      mzeta[i] = monomial_value(basis_[i], zeta);
    }
    Complex out(0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        out += std::conj(mzeta[r]) * ScalarTraits<T>::to_complex(H_[r * n + c]) * mz[c];
    return out;
  }

  friend HermitianForm operator+(const HermitianForm& a, const HermitianForm& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("forms in different numbers of variables");
    BiTermMap<T> t = a.terms();
    for (const auto& [key, c] : b.terms()) accumulate(t, key.first, key.second, c);
    return from_terms(a.nvars_, t);
  }
  friend HermitianForm operator-(const HermitianForm& a, const HermitianForm& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("forms in different numbers of variables");
    BiTermMap<T> t = a.terms();
    for (const auto& [key, c] : b.terms()) accumulate(t, key.first, key.second, T(-c));
    return from_terms(a.nvars_, t);
  }

 private:
  std::size_t nvars_ = 0;
  std::vector<MultiIndex> basis_;
  std::vector<T> H_;
};

// |p|^2 - |q|^2 as a form on the union of the supports of p and q.
template <class T>
HermitianForm<T> mod2diff(const Poly<T>& p, const Poly<T>& q) {
  if (p.nvars() != q.nvars()) throw DimensionError("mod2diff: p and q differ in nvars");
  BiTermMap<T> t;
  for (const auto& [a, pa] : p.terms())
    for (const auto& [b, pb] : p.terms()) accumulate(t, a, b, T(pa * ScalarTraits<T>::conj(pb)));
  for (const auto& [a, qa] : q.terms())
    for (const auto& [b, qb] : q.terms()) accumulate(t, a, b, T(-(qa * ScalarTraits<T>::conj(qb))));
  // Keep every monomial of p and q in the basis even when its row cancels.
  HermitianForm<T> f = HermitianForm<T>::from_terms(p.nvars(), t);
  std::set<MultiIndex, GradedLex> support(f.basis().begin(), f.basis().end());
  for (const auto& [e, c] : p.terms()) support.insert(e);
  for (const auto& [e, c] : q.terms()) support.insert(e);
  if (support.size() == f.size()) return f;
  std::vector<MultiIndex> basis(support.begin(), support.end());
  std::map<MultiIndex, std::size_t, GradedLex> pos;
  for (std::size_t i = 0; i < basis.size(); ++i) pos.emplace(basis[i], i);
  std::vector<T> H(basis.size() * basis.size());
  for (const auto& [key, c] : t) H[pos.at(key.second) * basis.size() + pos.at(key.first)] = c;
  return HermitianForm<T>(p.nvars(), std::move(basis), std::move(H));
}

// <F(z), F(zeta)> = sum_k F_k(z) conj(F_k(zeta)).
template <class T>
BiTermMap<T> kernel_terms(const VecPoly<T>& F) {
  BiTermMap<T> t;
  for (const auto& [a, va] : F.terms())
    for (const auto& [b, vb] : F.terms()) {
      T s{};
      for (std::size_t k = 0; k < F.dim(); ++k) s += va[k] * ScalarTraits<T>::conj(vb[k]);
      accumulate(t, a, b, s);
    }
  return t;
}

template <class T>
HermitianForm<T> kernel_form(const VecPoly<T>& F) {
  return HermitianForm<T>::from_terms(F.nvars(), kernel_terms(F));
}

// form - sum_j (1 - z_j conj(zeta_j)) <F_j(z), F_j(zeta)>
template <class T>
HermitianForm<T> subtract_sos(const HermitianForm<T>& form, const SosCertificate<T>& cert) {
  if (form.nvars() != cert.nvars()) throw DimensionError("subtract_sos: nvars mismatch");
  BiTermMap<T> t = form.terms();
  const std::size_t n = cert.nvars();
  for (std::size_t j = 0; j < n; ++j) {
    const MultiIndex ej = MultiIndex::unit(n, j);
    for (const auto& [key, c] : kernel_terms(cert.face(j))) {
      accumulate(t, key.first, key.second, T(-c));
      accumulate(t, key.first + ej, key.second + ej, c);
    }
  }
  return HermitianForm<T>::from_terms(n, t);
}

// Restriction to the torus: z^a conj(zeta)^b -> z^(a-b).
template <class T>
LaurentPoly<T> torus_restrict(const HermitianForm<T>& form) {
  LaurentPoly<T> out(form.nvars());
  const std::size_t n = form.size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      out.add_term(difference(form.basis()[c], form.basis()[r]), form.at(r, c));
  return out;
}

namespace detail {

template <class T>
bool negligible(const T& c, double scale) {
  if constexpr (ScalarTraits<T>::exact) {
    return ScalarTraits<T>::is_zero(c);
  } else {
    return magnitude(c) <= 1e-11 * scale;
  }
}

}  // namespace detail

// Torus data of the j-th face: sets |z_k| = 1 for k != j in |p|^2 - |q|^2,
// which must then read (1 - |z_j|^2) * c0(z') with c0 independent of z_j.
// Returns c0 as a Laurent polynomial in the remaining n-1 variables (their
// original order).  Requires deg_{z_j} p, q <= 1.
template <class T>
LaurentPoly<T> face_extract(const Poly<T>& p, const Poly<T>& q, std::size_t j) {
  const std::size_t n = p.nvars();
  if (q.nvars() != n) throw DimensionError("face_extract: p and q differ in nvars");
  if (j >= n) throw DimensionError("face_extract: variable index out of range");
  if (multidegree(p).exponents[j] > 1 || multidegree(q).exponents[j] > 1)
    throw UnsupportedDegreeError("face_extract: degree in z_" + std::to_string(j + 1) +
                                 " exceeds 1");

  const HermitianForm<T> form = mod2diff(p, q);
  const double scale = std::max(1.0, form.max_abs_coeff());
  // groups indexed by (alpha_j, beta_j)
  std::vector<LaurentPoly<T>> group(4, LaurentPoly<T>(n - 1));
  for (const auto& [key, c] : form.terms()) {
    const auto& [a, b] = key;
    std::vector<int> g;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) g.push_back(a[k] - b[k]);
    group[2 * a[j] + b[j]].add_term(LaurentIndex(std::move(g)), c);
  }
  const LaurentPoly<T>& c0 = group[0];
  const LaurentPoly<T>& c1 = group[3];
  auto all_negligible = [&](const LaurentPoly<T>& lp) {
    for (const auto& [e, c] : lp.terms())
      if (!detail::negligible(c, scale)) return false;
    return true;
  };
  if (!all_negligible(group[1]) || !all_negligible(group[2]))
    throw FaceNotFactorableError("face " + std::to_string(j + 1) +
                                 ": cross terms in z_j do not cancel on the torus");
  if (!all_negligible(c0 + c1))
    throw FaceNotFactorableError("face " + std::to_string(j + 1) +
                                 ": constant and |z_j|^2 parts are not opposite");
  if constexpr (ScalarTraits<T>::exact) {
    return c0;
  } else {
    LaurentPoly<T> out(n - 1);
    for (const auto& [e, c] : c0.terms())
      if (!detail::negligible(c, scale)) out.add_term(e, c);
    return out;
  }
}

}  // namespace agler
