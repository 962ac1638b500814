#pragma once

// Transfer-function realizations
//
//   f(z) = A + B E(z) (I - D E(z))^{-1} C,   U = [A B; C D] unitary,
//
// where E(z) = diag(z_1 I_{dims[0]}, ..., z_n I_{dims[n-1]}).

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "agler/certificate.hpp"
#include "agler/errors.hpp"
#include "agler/polycore.hpp"
#include "agler/sampling.hpp"

namespace agler {

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

inline DenseMatrix<Complex> to_dense(const Eigen::MatrixXcd& m) {
  DenseMatrix<Complex> out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

inline std::size_t total_size(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{0});
}

// Variable index attached to each state coordinate.
inline std::vector<std::size_t> state_variables(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < dims.size(); ++j) out.insert(out.end(), dims[j], j);
  return out;
}

inline double unitarity_residual(const Eigen::MatrixXcd& U) {
  if (U.rows() != U.cols()) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(U.rows(), U.cols());
  return (U.adjoint() * U - I).cwiseAbs().maxCoeff();
}

class Realization {
 public:
  static constexpr double kUnitaryTol = 1e-10;

  Realization() = default;
  Realization(std::vector<std::size_t> dims, Eigen::MatrixXcd U, double unitary_tol = kUnitaryTol)
      : dims_(std::move(dims)), U_(std::move(U)) {
    const auto n = static_cast<Eigen::Index>(1 + size());
    if (U_.rows() != n || U_.cols() != n)
      throw DimensionError("realization matrix must be (1+N)x(1+N) with N = sum(dims)");
    const double res = agler::unitarity_residual(U_);
    if (!(res < unitary_tol))
      throw NotUnitaryError("realization matrix is not unitary (residual " + std::to_string(res) + ")");
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t nvars() const { return dims_.size(); }
  std::size_t size() const { return total_size(dims_); }
  const Eigen::MatrixXcd& U() const { return U_; }

  Complex A() const { return U_(0, 0); }
  Eigen::RowVectorXcd B() const { return U_.block(0, 1, 1, size()); }
  Eigen::VectorXcd C() const { return U_.block(1, 0, size(), 1); }
  Eigen::MatrixXcd D() const { return U_.block(1, 1, size(), size()); }

  double unitarity_residual() const { return agler::unitarity_residual(U_); }

 private:
  std::vector<std::size_t> dims_;
  Eigen::MatrixXcd U_;
};

// Realization with exact entries, used for the bundled unitaries.
class ExactRealization {
 public:
  ExactRealization(std::vector<std::size_t> dims, DenseMatrix<Surd> U) : dims_(std::move(dims)), U_(std::move(U)) {
    const std::size_t n = 1 + total_size(dims_);
    if (U_.rows() != n || U_.cols() != n)
      throw DimensionError("realization matrix must be (1+N)x(1+N) with N = sum(dims)");
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  const DenseMatrix<Surd>& U() const { return U_; }
  std::size_t size() const { return total_size(dims_); }

  // U^* U == I with exact arithmetic.
  bool is_unitary() const {
    const std::size_t n = U_.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Surd s;
        for (std::size_t k = 0; k < n; ++k) s += U_(k, i).conj() * U_(k, j);
        if (!(s == Surd(i == j ? 1 : 0))) return false;
      }
    return true;
  }

  Realization to_float() const {
    const auto n = static_cast<Eigen::Index>(U_.rows());
    Eigen::MatrixXcd U(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) U(r, c) = U_(r, c).to_complex();
    return Realization(dims_, U);
  }

 private:
  std::vector<std::size_t> dims_;
  DenseMatrix<Surd> U_;
};

inline std::size_t size(const Realization& r) { return r.size(); }

inline Complex transfer_eval(const Realization& r, std::span<const Complex> z) {
  if (z.size() != r.nvars()) throw DimensionError("transfer_eval: point has wrong length");
  const auto N = static_cast<Eigen::Index>(r.size());
  if (N == 0) return r.A();
  const std::vector<std::size_t> var = state_variables(r.dims());
  Eigen::VectorXcd e(N);
  for (Eigen::Index i = 0; i < N; ++i) e(i) = z[var[i]];
  const Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(N, N) - r.D() * e.asDiagonal();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  if (!(lu.rcond() > 1e-13)) throw SingularityError("transfer_eval: I - D E(z) is singular");
  const Eigen::VectorXcd x = lu.solve(r.C());
  return r.A() + (r.B() * e.asDiagonal() * x)(0, 0);
}

inline Complex transfer_eval(const Realization& r, std::initializer_list<Complex> z) {
  return transfer_eval(r, std::span<const Complex>(z.begin(), z.size()));
}

namespace detail {

// Division-free determinant of a polynomial matrix by dynamic programming
// over column subsets: rows are assigned in order and each choice of column
// c picks up the sign (-1)^{#{chosen columns > c}}.
template <class T>
Poly<T> poly_det(const std::vector<std::vector<Poly<T>>>& M, std::size_t nvars) {
  const std::size_t n = M.size();
  if (n == 0) return Poly<T>::constant(nvars, ScalarTraits<T>::from_int(1));
  if (n > 20) throw DimensionError("poly_det: matrix too large");
  std::vector<Poly<T>> f(std::size_t{1} << n, Poly<T>(nvars));
  f[0] = Poly<T>::constant(nvars, ScalarTraits<T>::from_int(1));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (f[mask].is_zero()) continue;
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k == n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (1u << c)) continue;
      if (M[k][c].is_zero()) continue;
      const int above = std::popcount(mask >> (c + 1));
      Poly<T> term = M[k][c] * f[mask];
      if (above % 2) term = -term;
      f[mask | (1u << c)] += term;
    }
  }
  return f[(1u << n) - 1];
}

// Entries of I - D E(z) from the colligation U = [A B; C D].
template <class T>
std::vector<std::vector<Poly<T>>> resolvent_matrix(const std::vector<std::size_t>& dims, const DenseMatrix<T>& U) {
  const std::size_t N = total_size(dims), n = dims.size();
  const std::vector<std::size_t> var = state_variables(dims);
  std::vector<std::vector<Poly<T>>> M(N, std::vector<Poly<T>>(N, Poly<T>(n)));
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) {
      if (r == c) M[r][c].add_term(MultiIndex(n), ScalarTraits<T>::from_int(1));
      M[r][c].add_term(MultiIndex::unit(n, var[c]), T(-U(1 + r, 1 + c)));
    }
  return M;
}

}  // namespace detail

template <class T>
struct RationalPair {
  Poly<T> q;
  Poly<T> p;
};

// Cramer's rule: p = det(I - D E), q = det([[I - D E, C], [-B E, A]])
// = p * (A + B E (I - D E)^{-1} C).
template <class T>
RationalPair<T> to_rational(const std::vector<std::size_t>& dims, const DenseMatrix<T>& U) {
  const std::size_t N = total_size(dims), n = dims.size();
  if (U.rows() != N + 1 || U.cols() != N + 1) throw DimensionError("to_rational: matrix size mismatch");
  const std::vector<std::size_t> var = state_variables(dims);
  auto M = detail::resolvent_matrix(dims, U);
  RationalPair<T> out;
  out.p = detail::poly_det(M, n);

  auto bordered = M;
  for (std::size_t r = 0; r < N; ++r) bordered[r].push_back(Poly<T>::constant(n, U(1 + r, 0)));
  std::vector<Poly<T>> last;
  for (std::size_t c = 0; c < N; ++c) last.push_back(Poly<T>::monomial(MultiIndex::unit(n, var[c]), T(-U(0, 1 + c))));
  last.push_back(Poly<T>::constant(n, U(0, 0)));
  bordered.push_back(std::move(last));
  out.q = detail::poly_det(bordered, n);
  return out;
}

inline RationalPair<Complex> to_rational(const Realization& r) {
  return to_rational(r.dims(), to_dense(r.U()));
}

inline RationalPair<Surd> to_rational(const ExactRealization& r) { return to_rational(r.dims(), r.U()); }

// F = adj(I - D E) C, split into blocks by dims.  Entry i of adj(M) C is
// det(M with column i replaced by C).
template <class T>
SosCertificate<T> decomposition_from_realization(const std::vector<std::size_t>& dims, const DenseMatrix<T>& U) {
  const std::size_t N = total_size(dims), n = dims.size();
  const auto M = detail::resolvent_matrix(dims, U);
  std::vector<Poly<T>> F;
  for (std::size_t i = 0; i < N; ++i) {
    auto Mi = M;
    for (std::size_t r = 0; r < N; ++r) Mi[r][i] = Poly<T>::constant(n, U(1 + r, 0));
    F.push_back(detail::poly_det(Mi, n));
  }
  std::vector<VecPoly<T>> faces;
  std::size_t offset = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Poly<T>> block(F.begin() + offset, F.begin() + offset + dims[j]);
    faces.push_back(VecPoly<T>::from_components(n, block));
    offset += dims[j];
  }
  return SosCertificate<T>(n, std::move(faces));
}

inline SosCertificate<Complex> decomposition_from_realization(const Realization& r) {
  return decomposition_from_realization(r.dims(), to_dense(r.U()));
}

struct LurkingOptions {
  // Tolerance on max |L^*L - R^*R| relative to max(1, max |L|^2).
  double isometry_tol = 1e-10;
  // Singular values below rank_tol * sigma_max count as zero.
  double rank_tol = 1e-10;
};

// Builds a unitary colligation from |p|^2 - |q|^2 = sum_j (1-|z_j|^2)|F_j|^2.
//
// The columns of L are the coefficient vectors of [p; z_1 F_1; ...; z_n F_n]
// and those of R of [q; F_1; ...; F_n] over the joint monomial basis.  The
// polarized identity is L^*L = R^*R, so V L = R defines an isometry from
// range(L) onto range(R); it is completed to a unitary by pairing
// orthonormal bases of the orthogonal complements in order.
inline Realization lurking_isometry(const Poly<Complex>& p, const Poly<Complex>& q,
                                    const SosCertificate<Complex>& cert, const LurkingOptions& opt = {}) {
  const std::size_t n = cert.nvars();
  if (p.nvars() != n || q.nvars() != n) throw DimensionError("lurking_isometry: nvars mismatch");
  if (std::abs(p.coeff(MultiIndex(n))) <= ScalarTraits<Complex>::prune_tol)
    throw DegenerateInputError("lurking_isometry: p(0) = 0");

  const std::vector<std::size_t> dims = cert.counts();
  const std::size_t N = total_size(dims);

  std::set<MultiIndex, GradedLex> support;
  for (const auto& [e, c] : p.terms()) support.insert(e);
  for (const auto& [e, c] : q.terms()) support.insert(e);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [e, c] : cert.face(j).terms()) {
      support.insert(e);
      support.insert(e + MultiIndex::unit(n, j));
    }
  std::map<MultiIndex, Eigen::Index, GradedLex> col;
  for (const auto& e : support) col.emplace(e, static_cast<Eigen::Index>(col.size()));
  const auto K = static_cast<Eigen::Index>(col.size());
  const auto rows = static_cast<Eigen::Index>(1 + N);

  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(rows, K), R = Eigen::MatrixXcd::Zero(rows, K);
  for (const auto& [e, c] : p.terms()) L(0, col.at(e)) = c;
  for (const auto& [e, c] : q.terms()) R(0, col.at(e)) = c;
  Eigen::Index row = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const MultiIndex ej = MultiIndex::unit(n, j);
    for (const auto& [e, v] : cert.face(j).terms())
      for (std::size_t k = 0; k < v.size(); ++k) {
        L(row + static_cast<Eigen::Index>(k), col.at(e + ej)) = v[k];
        R(row + static_cast<Eigen::Index>(k), col.at(e)) = v[k];
      }
    row += static_cast<Eigen::Index>(dims[j]);
  }

  const double scale = std::max(1.0, L.cwiseAbs2().maxCoeff());
  const double defect = (L.adjoint() * L - R.adjoint() * R).cwiseAbs().maxCoeff();
  if (defect > opt.isometry_tol * scale)
    throw NotIsometricError("not isometric: certificate invalid (Gram mismatch " + std::to_string(defect) + ")");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svdL(L, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svdR(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
  auto rank_of = [&](const Eigen::VectorXd& s) {
    Eigen::Index r = 0;
    const double smax = s.size() ? s(0) : 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > opt.rank_tol * smax) ++r;
    return r;
  };
  const Eigen::Index r = rank_of(svdL.singularValues());
  if (rank_of(svdR.singularValues()) != r)
    throw NotIsometricError("not isometric: left and right families have different rank");

  const Eigen::MatrixXcd PL = svdL.matrixU();
  const Eigen::MatrixXcd PR = svdR.matrixU();
  // V maps PL_r = L W_r S_r^{-1} to R W_r S_r^{-1}.
  Eigen::MatrixXcd image = R * svdL.matrixV().leftCols(r);
  for (Eigen::Index i = 0; i < r; ++i) image.col(i) /= svdL.singularValues()(i);
  Eigen::MatrixXcd U = image * PL.leftCols(r).adjoint() + PR.rightCols(rows - r) * PL.rightCols(rows - r).adjoint();
  return Realization(dims, U);
}

inline Realization random_realization(const std::vector<std::size_t>& dims, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(1 + total_size(dims));
  Eigen::MatrixXcd G(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) G(r, c) = complex_gaussian(rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd Rm = qr.matrixQR().triangularView<Eigen::Upper>();
  // Haar measure: fix the phases of R's diagonal.
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = Rm(i, i);
    if (std::abs(d) > 0) Q.col(i) *= d / std::abs(d);
  }
  return Realization(dims, Q);
}

// max |transfer_eval(r, z) - q(z)/p(z)| over random interior points.
inline double realization_mismatch(const Realization& r, const Poly<Complex>& q, const Poly<Complex>& p,
                                   std::size_t npoints, Rng& rng) {
  double worst = 0;
  for (std::size_t i = 0; i < npoints; ++i) {
    const auto z = random_polydisk_point(rng, r.nvars());
    worst = std::max(worst, std::abs(transfer_eval(r, z) - eval(q, z) / eval(p, z)));
  }
  return worst;
}

// Minimum |p| over a grid of the closed polydisk: each coordinate ranges over
// radii {0, 1/4, 1/2, 3/4, 1} times 4 angles offset from the real axis
// (20 points per coordinate, 20^n in all).  A heuristic only: small values
// indicate zeros near the closed polydisk.
inline double stability_margin(const Poly<Complex>& p) {
  std::vector<Complex> axis;
  for (int ri = 0; ri <= 4; ++ri)
    for (int ai = 0; ai < 4; ++ai)
      axis.push_back(std::polar(ri / 4.0, std::numbers::pi * (2 * ai + 1) / 4.0));
  const std::size_t n = p.nvars();
  std::vector<std::size_t> idx(n, 0);
  std::vector<Complex> z(n);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t i = 0; i < n; ++i) z[i] = axis[idx[i]];
    best = std::min(best, std::abs(eval(p, z)));
    std::size_t k = 0;
    while (k < n && ++idx[k] == axis.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return best;
}

}  // namespace agler
