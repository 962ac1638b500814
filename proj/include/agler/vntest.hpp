#pragma once

// One-sided probe of the von Neumann inequality ||f(T)|| <= 1 on random
// commuting tuples of strict contractions.  Tuples are simultaneously
// diagonalizable, T_j = S D_j S^{-1}, so they commute exactly while the
// similarity S makes them non-normal.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "agler/errors.hpp"
#include "agler/polycore.hpp"
#include "agler/sampling.hpp"

namespace agler {

struct ContractionTuple {
  std::vector<Eigen::MatrixXcd> ops;
  double rho = 0;

  std::size_t size() const { return ops.size(); }
  Eigen::Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }

  double max_commutator() const {
    double m = 0;
    for (std::size_t i = 0; i < ops.size(); ++i)
      for (std::size_t j = i + 1; j < ops.size(); ++j)
        m = std::max(m, (ops[i] * ops[j] - ops[j] * ops[i]).cwiseAbs().maxCoeff());
    return m;
  }
};

inline double operator_norm(const Eigen::MatrixXcd& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues()(0);
}

// Condition number of S is capped at 10 by construction (singular values
// drawn from [1, 10]) and rechecked; each T_j is rescaled to operator norm
// rho * u_j with u_j uniform in (0.5, 1].
inline ContractionTuple random_tuple(std::size_t n, std::size_t m, double rho, std::uint64_t seed) {
  if (n < 1 || m < 1) throw DimensionError("random_tuple: n and m must be positive");
  if (!(rho > 0 && rho < 1)) throw std::invalid_argument("random_tuple: rho must lie in (0, 1)");
  Rng rng(seed);
  const auto M = static_cast<Eigen::Index>(m);
  auto haar = [&] {
    Eigen::MatrixXcd G(M, M);
    for (Eigen::Index r = 0; r < M; ++r)
      for (Eigen::Index c = 0; c < M; ++c) G(r, c) = complex_gaussian(rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    return Eigen::MatrixXcd(qr.householderQ() * Eigen::MatrixXcd::Identity(M, M));
  };
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXcd S;
  for (;;) {
    Eigen::VectorXd sigma(M);
    for (Eigen::Index i = 0; i < M; ++i) sigma(i) = 1.0 + 9.0 * unit(rng);
    S = haar() * sigma.cast<Complex>().asDiagonal() * haar().adjoint();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
    const auto& s = svd.singularValues();
    if (s(0) / s(M - 1) <= 10.0 + 1e-9) break;
  }
  const Eigen::MatrixXcd Sinv = S.inverse();

  ContractionTuple T;
  T.rho = rho;
  for (std::size_t j = 0; j < n; ++j) {
    Eigen::VectorXcd d(M);
    for (Eigen::Index i = 0; i < M; ++i) d(i) = random_disk_point(rng);
    Eigen::MatrixXcd Tj = S * d.asDiagonal() * Sinv;
    const double u = 1.0 - 0.5 * unit(rng);  // (0.5, 1]
    const double norm = operator_norm(Tj);
    if (norm > 0) Tj *= rho * u / norm;
    T.ops.push_back(std::move(Tj));
  }
  return T;
}

// p(T) by Horner's rule in the variables taken in the given order: p is
// written as a polynomial in the first variable whose coefficients are
// evaluated recursively in the remaining ones.
template <class T>
Eigen::MatrixXcd eval_matrix(const Poly<T>& p, const std::vector<Eigen::MatrixXcd>& ops,
                             const std::vector<std::size_t>& order) {
  if (ops.size() != p.nvars()) throw DimensionError("eval_matrix: wrong number of operators");
  if (order.size() != p.nvars()) throw DimensionError("eval_matrix: bad variable order");
  const Eigen::Index m = ops.empty() ? 1 : ops.front().rows();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(m, m);

  using Terms = std::vector<std::pair<MultiIndex, Complex>>;
  auto rec = [&](auto&& self, const Terms& terms, std::size_t level) -> Eigen::MatrixXcd {
    if (terms.empty()) return Eigen::MatrixXcd::Zero(m, m);
    if (level == order.size()) {
      Complex s(0.0);
      for (const auto& [e, c] : terms) s += c;
      return s * I;
    }
    const std::size_t v = order[level];
    std::map<int, Terms> by_power;
    for (const auto& t : terms) by_power[t.first[v]].push_back(t);
    const int top = by_power.rbegin()->first;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m, m);
    for (int k = top; k >= 0; --k) {
      acc = (ops[v] * acc).eval();
      if (auto it = by_power.find(k); it != by_power.end()) acc += self(self, it->second, level + 1);
    }
    return acc;
  };
  Terms terms;
  for (const auto& [e, c] : p.terms()) terms.emplace_back(e, ScalarTraits<T>::to_complex(c));
  return rec(rec, terms, 0);
}

template <class T>
Eigen::MatrixXcd eval_matrix(const Poly<T>& p, const std::vector<Eigen::MatrixXcd>& ops) {
  std::vector<std::size_t> order(p.nvars());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return eval_matrix(p, ops, order);
}

// ||q(T) p(T)^{-1}||
template <class T>
double vn_norm(const Poly<T>& q, const Poly<T>& p, const ContractionTuple& tuple) {
  if (q.nvars() != tuple.size() || p.nvars() != tuple.size())
    throw DimensionError("vn_norm: tuple size does not match nvars");
  const Eigen::MatrixXcd P = eval_matrix(p, tuple.ops);
  const Eigen::MatrixXcd Q = eval_matrix(q, tuple.ops);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(P);
  if (!(lu.rcond() > 1e-12)) throw SingularityError("vn_norm: p(T) is numerically singular");
  return operator_norm(lu.solve(Q));
}

struct VnProbeResult {
  std::size_t trials = 0;
  double max_norm = 0;
  std::uint64_t worst_seed = 0;
  bool pass = true;
};

// Runs trials with seeds seed, seed+1, ...; dimension m = dim or, when
// dim == 0, cycles through 1..6.
template <class T>
VnProbeResult vn_probe(const Poly<T>& q, const Poly<T>& p, std::size_t trials, std::size_t dim, double rho,
                       std::uint64_t seed, double tol = 1e-8) {
  VnProbeResult out;
  out.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::size_t m = dim ? dim : 1 + k % 6;
    const ContractionTuple tuple = random_tuple(p.nvars(), m, rho, seed + k);
    const double v = vn_norm(q, p, tuple);
    if (v > out.max_norm) {
      out.max_norm = v;
      out.worst_seed = seed + k;
    }
  }
  out.pass = out.max_norm <= 1.0 + tol;
  return out;
}

}  // namespace agler
