#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "agler/certificate.hpp"
#include "agler/hermform.hpp"
#include "agler/polycore.hpp"

namespace agler {

struct GramOptions {
  // Eigenvalues below -psd_tol * ||H|| reject the form.
  double psd_tol = 1e-10;
  // Eigenvalues below rank_tol * lambda_max count as zero.
  double rank_tol = 1e-10;
};

inline Eigen::MatrixXcd to_eigen(const HermitianForm<Complex>& form) {
  const auto n = static_cast<Eigen::Index>(form.size());
  Eigen::MatrixXcd H(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) H(r, c) = form.at(r, c);
  return H;
}

// Factors a PSD form as <V(z), V(zeta)> with dim V = numerical rank.
// With H = sum_i lambda_i u_i u_i^*, component i of V is
// sqrt(lambda_i) * u_i^* m(z).
inline VecPoly<Complex> gram_factor(const HermitianForm<Complex>& form, const GramOptions& opt = {}) {
  const std::size_t n = form.size();
  if (n == 0 || form.is_zero()) return VecPoly<Complex>(form.nvars(), 0);

  Eigen::MatrixXcd H = to_eigen(form);
  H = (0.5 * (H + H.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const Eigen::VectorXd& lambda = es.eigenvalues();  // ascending
  const double norm = lambda.cwiseAbs().maxCoeff();
  if (lambda(0) < -opt.psd_tol * norm)
    throw NotPsdError("gram_factor: form is not positive semidefinite (eigenvalue " +
                          std::to_string(lambda(0)) + ")",
                      lambda(0));
  const double lmax = lambda(lambda.size() - 1);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = lambda.size() - 1; i >= 0; --i)
    if (lambda(i) > opt.rank_tol * lmax) kept.push_back(i);

  VecPoly<Complex> V(form.nvars(), kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const double s = std::sqrt(lambda(kept[k]));
    for (std::size_t a = 0; a < n; ++a)
      V.add_term(form.basis()[a], k, s * std::conj(es.eigenvectors()(a, kept[k])));
  }
  return V;
}

// Max coefficient of (|p|^2 - |q|^2) - sum_j (1 - z_j conj(zeta_j)) <F_j, F_j>.
// In exact mode a zero residual means an exact identity.
template <class T>
double verify_decomposition(const Poly<T>& p, const Poly<T>& q, const SosCertificate<T>& cert) {
  if (p.nvars() != cert.nvars() || q.nvars() != cert.nvars())
    throw DimensionError("verify_decomposition: nvars mismatch");
  return subtract_sos(mod2diff(p, q), cert).max_abs_coeff();
}

template <class T>
bool verifies_exactly(const Poly<T>& p, const Poly<T>& q, const SosCertificate<T>& cert) {
  return subtract_sos(mod2diff(p, q), cert).is_zero();
}

struct FaceBoundReport {
  std::size_t face = 0;
  MultiIndex multidegree;
  MultiIndex degree_bound;  // d - e_j, clamped at 0 where d_j = 0
  bool degree_ok = true;
  std::optional<MultiIndex> violating_exponent;
  std::size_t count = 0;
  std::size_t count_bound = 0;  // d_j * prod_{k != j} (d_k + 1)
  bool count_ok = true;

  bool ok() const { return degree_ok && count_ok; }
};

inline std::size_t square_count_bound(const std::vector<int>& d, std::size_t j) {
  std::size_t b = static_cast<std::size_t>(d.at(j));
  for (std::size_t k = 0; k < d.size(); ++k)
    if (k != j) b *= static_cast<std::size_t>(d[k] + 1);
  return b;
}

// Face j must have multidegree <= d - e_j and at most
// d_j * prod_{k != j}(d_k + 1) squares.
template <class T>
std::vector<FaceBoundReport> check_degree_bounds(const SosCertificate<T>& cert, const MultiIndex& d) {
  const std::size_t n = cert.nvars();
  if (d.size() != n) throw DimensionError("check_degree_bounds: d has wrong length");
  std::vector<FaceBoundReport> out;
  for (std::size_t j = 0; j < n; ++j) {
    FaceBoundReport r;
    r.face = j;
    std::vector<int> bound(d.values());
    bound[j] -= 1;
    r.multidegree = multidegree(cert.face(j)).exponents;
    std::vector<int> clamped(bound);
    for (int& v : clamped) v = std::max(v, 0);
    r.degree_bound = MultiIndex(clamped);
    for (const auto& [e, c] : cert.face(j).terms()) {
      if (!dominated_by(e, bound)) {
        r.degree_ok = false;
        r.violating_exponent = e;
        break;
      }
    }
    r.count = cert.face(j).dim();
    r.count_bound = square_count_bound(d.values(), j);
    r.count_ok = r.count <= r.count_bound;
    out.push_back(std::move(r));
  }
  return out;
}

template <class T>
struct RadialReport {
  std::vector<T> lhs;  // coefficients in s of sum_a s^|a| (|p_a|^2 - |q_a|^2)
  std::vector<T> rhs;  // (1 - s) * sum_j sum_a |F_{j,a}|^2 s^|a|
  double residual = 0;
  bool exact_match = false;
};

// Zeroth Fourier coefficient of the decomposition along z = t*mu, written
// in s = |t|^2.
template <class T>
RadialReport<T> radial_check(const Poly<T>& p, const Poly<T>& q, const SosCertificate<T>& cert) {
  if (p.nvars() != cert.nvars() || q.nvars() != cert.nvars())
    throw DimensionError("radial_check: nvars mismatch");
  using Tr = ScalarTraits<T>;
  auto bump = [](std::vector<T>& v, std::size_t k, const T& c) {
    if (v.size() <= k) v.resize(k + 1);
    v[k] += c;
  };
  RadialReport<T> out;
  for (const auto& [e, c] : p.terms()) bump(out.lhs, e.total_degree(), T(c * Tr::conj(c)));
  for (const auto& [e, c] : q.terms()) bump(out.lhs, e.total_degree(), T(-(c * Tr::conj(c))));
  std::vector<T> face_sum;
  for (const auto& F : cert.faces())
    for (const auto& [e, v] : F.terms()) {
      T s{};
      for (const auto& c : v) s += c * Tr::conj(c);
      bump(face_sum, e.total_degree(), s);
    }
  for (std::size_t k = 0; k < face_sum.size(); ++k) {
    bump(out.rhs, k, face_sum[k]);
    bump(out.rhs, k + 1, T(-face_sum[k]));
  }
  const std::size_t len = std::max(out.lhs.size(), out.rhs.size());
  out.lhs.resize(len);
  out.rhs.resize(len);
  out.exact_match = true;
  for (std::size_t k = 0; k < len; ++k) {
    const T d = out.lhs[k] - out.rhs[k];
    out.residual = std::max(out.residual, magnitude(d));
    if (!Tr::is_zero(d)) out.exact_match = false;
  }
  // Trim trailing zeros.
  while (!out.lhs.empty() && Tr::is_zero(out.lhs.back()) && Tr::is_zero(out.rhs.back())) {
    out.lhs.pop_back();
    out.rhs.pop_back();
  }
  return out;
}

// Certificate for (p, q) with z_j -> z_j^M, using
// 1 - |z_j|^{2M} = (1 - |z_j|^2) sum_{k<M} |z_j|^{2k}:
// face j becomes [z_j^k F_j(amplified)]_{k<M}, other faces are amplified.
template <class T>
SosCertificate<T> amplify_certificate(const SosCertificate<T>& cert, std::size_t j, int M) {
  const std::size_t n = cert.nvars();
  if (j >= n) throw DimensionError("amplify_certificate: variable index out of range");
  std::vector<VecPoly<T>> faces;
  for (std::size_t i = 0; i < n; ++i) {
    const VecPoly<T> F = amplify(cert.face(i), j, M);
    if (i != j) {
      faces.push_back(F);
      continue;
    }
    VecPoly<T> G(n, F.dim() * static_cast<std::size_t>(M));
    for (int k = 0; k < M; ++k) {
      const MultiIndex shift = MultiIndex::unit(n, j).with(j, k);
      for (const auto& [e, v] : F.terms())
        for (std::size_t c = 0; c < v.size(); ++c) G.add_term(e + shift, k * F.dim() + c, v[c]);
    }
    faces.push_back(std::move(G));
  }
  return SosCertificate<T>(n, std::move(faces));
}

// Replaces each face by a Gram factorization of its kernel, dropping
// linearly dependent components.
inline SosCertificate<Complex> trim_certificate(const SosCertificate<Complex>& cert,
                                                const GramOptions& opt = {}) {
  std::vector<VecPoly<Complex>> faces;
  for (const auto& F : cert.faces()) faces.push_back(gram_factor(kernel_form(F), opt));
  return SosCertificate<Complex>(cert.nvars(), std::move(faces));
}

}  // namespace agler
