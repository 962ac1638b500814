#pragma once

// Lower bounds on realization size from the torus data of each face.
//
// For f = q/p with multidegree <= (1,...,1), every Agler decomposition's j-th
// sum of squares must agree on the torus with the face data returned by
// face_extract.  For three variables that is a real trigonometric polynomial
// on T^2 with exponents in {-1,0,1}^2, and each square is |a + bz + cw + dzw|^2.
// Whether one square can match is decided by an exact case split on the
// (z w) coefficient; two or more squares are searched numerically.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agler/errors.hpp"
#include "agler/hermform.hpp"
#include "agler/polycore.hpp"
#include "agler/sampling.hpp"

namespace agler {

// Fourier data of a real trigonometric polynomial on T^2 with exponents in
// {-1,0,1}^2.  c1m1 is the coefficient of z conj(w); the remaining
// coefficients are fixed by conjugate symmetry.
struct FaceData {
  double c00 = 0;
  Complex c10{}, c01{}, c11{}, c1m1{};

  FaceData scaled(double s) const { return {s * c00, s * c10, s * c01, s * c11, s * c1m1}; }

  double max_abs() const {
    return std::max({std::abs(c00), std::abs(c10), std::abs(c01), std::abs(c11), std::abs(c1m1)});
  }

  Complex eval(Complex z, Complex w) const {
    const Complex s = c10 * z + c01 * w + c11 * z * w + c1m1 * z * std::conj(w);
    return c00 + 2.0 * s.real();
  }

  LaurentPoly<Complex> to_laurent() const {
    LaurentPoly<Complex> lp(2);
    lp.add_term({0, 0}, c00);
    auto both = [&](int i, int j, Complex c) {
      lp.add_term({i, j}, c);
      lp.add_term({-i, -j}, std::conj(c));
    };
    both(1, 0, c10);
    both(0, 1, c01);
    both(1, 1, c11);
    both(1, -1, c1m1);
    return lp;
  }

  // Accepts Laurent polynomials in 0, 1 or 2 variables (missing variables
  // are taken as absent), with exponents in {-1,0,1}.
  static FaceData from_laurent(const LaurentPoly<Complex>& lp, double tol = 1e-10) {
    if (lp.nvars() > 2) throw UnsupportedDegreeError("face data must live on at most two torus variables");
    const double scale = std::max(1.0, lp.max_abs_coeff());
    if (lp.conjugate_symmetry_defect() > tol * scale)
      throw std::invalid_argument("face data is not conjugate symmetric");
    FaceData d;
    for (const auto& [e, c] : lp.terms()) {
      const int i = lp.nvars() > 0 ? e[0] : 0;
      const int j = lp.nvars() > 1 ? e[1] : 0;
      if (std::abs(i) > 1 || std::abs(j) > 1)
        throw UnsupportedDegreeError("face data exponent " + e.str() + " outside {-1,0,1}^2");
      if (i == 0 && j == 0) {
        if (std::abs(c.imag()) > tol * scale) throw std::invalid_argument("face constant term is not real");
        d.c00 = c.real();
      } else if (i == 1 && j == 0) {
        d.c10 = c;
      } else if (i == 0 && j == 1) {
        d.c01 = c;
      } else if (i == 1 && j == 1) {
        d.c11 = c;
      } else if (i == 1 && j == -1) {
        d.c1m1 = c;
      }
    }
    return d;
  }
};

// a + b z + c w + d z w
struct SquareAnsatz {
  Complex a{}, b{}, c{}, d{};
};

inline FaceData ansatz_coeffs(const SquareAnsatz& s) {
  FaceData f;
  f.c00 = std::norm(s.a) + std::norm(s.b) + std::norm(s.c) + std::norm(s.d);
  f.c10 = std::conj(s.a) * s.b + std::conj(s.c) * s.d;
  f.c01 = std::conj(s.a) * s.c + std::conj(s.b) * s.d;
  f.c11 = std::conj(s.a) * s.d;
  f.c1m1 = s.b * std::conj(s.c);
  return f;
}

inline FaceData ansatz_coeffs(const std::vector<SquareAnsatz>& squares) {
  FaceData f;
  for (const auto& s : squares) {
    const FaceData g = ansatz_coeffs(s);
    f.c00 += g.c00;
    f.c10 += g.c10;
    f.c01 += g.c01;
    f.c11 += g.c11;
    f.c1m1 += g.c1m1;
  }
  return f;
}

inline double data_mismatch(const FaceData& x, const FaceData& y) {
  return std::max({std::abs(x.c00 - y.c00), std::abs(x.c10 - y.c10), std::abs(x.c01 - y.c01),
                   std::abs(x.c11 - y.c11), std::abs(x.c1m1 - y.c1m1)});
}

// ---------------------------------------------------------------------------
// Multi-start Levenberg-Marquardt over r squares (8r real parameters).

struct SearchOptions {
  std::size_t starts = 1000;
  std::uint64_t seed = 20100101;
  int max_iterations = 200;
  // Stop a run (and the multi-start loop) once the squared residual, with
  // data normalized to c00 = 1, drops below this; well under the 1e-8
  // residual that min_squares counts as a fit.
  double converged_sq = 1e-24;
};

struct SearchResult {
  double best_residual = std::numeric_limits<double>::infinity();  // relative to c00
  std::size_t best_start = 0;
  std::vector<SquareAnsatz> best;  // in the caller's (unnormalized) units
};

namespace detail {

// Residual layout: c00, Re/Im c10, Re/Im c01, Re/Im c11, Re/Im c1m1.
inline void face_residual(const Eigen::VectorXd& x, const FaceData& target, Eigen::VectorXd& res,
                          Eigen::MatrixXd* jac) {
  const Eigen::Index r = x.size() / 8;
  res.setZero(9);
  res(0) = -target.c00;
  res(1) = -target.c10.real();
  res(2) = -target.c10.imag();
  res(3) = -target.c01.real();
  res(4) = -target.c01.imag();
  res(5) = -target.c11.real();
  res(6) = -target.c11.imag();
  res(7) = -target.c1m1.real();
  res(8) = -target.c1m1.imag();
  if (jac) jac->setZero(9, x.size());
  // (x, y) pairs contributing conj(v_x) v_y to each complex coefficient.
  struct Pair {
    int row, x, y;
  };
  static constexpr Pair pairs[] = {{1, 0, 1}, {1, 2, 3}, {3, 0, 2}, {3, 1, 3}, {5, 0, 3}, {7, 2, 1}};
  for (Eigen::Index s = 0; s < r; ++s) {
    Complex v[4];
    for (int k = 0; k < 4; ++k) v[k] = Complex(x(8 * s + 2 * k), x(8 * s + 2 * k + 1));
    for (int k = 0; k < 4; ++k) {
      res(0) += std::norm(v[k]);
      if (jac) {
        (*jac)(0, 8 * s + 2 * k) += 2 * v[k].real();
        (*jac)(0, 8 * s + 2 * k + 1) += 2 * v[k].imag();
      }
    }
    for (const auto& pr : pairs) {
      const Complex val = std::conj(v[pr.x]) * v[pr.y];
      res(pr.row) += val.real();
      res(pr.row + 1) += val.imag();
      if (!jac) continue;
      // d/dRe v_x: v_y, d/dIm v_x: -i v_y, d/dRe v_y: conj(v_x), d/dIm v_y: i conj(v_x)
      const Complex dxr = v[pr.y], dxi = Complex(0, -1) * v[pr.y];
      const Complex dyr = std::conj(v[pr.x]), dyi = Complex(0, 1) * std::conj(v[pr.x]);
      const Eigen::Index cx = 8 * s + 2 * pr.x, cy = 8 * s + 2 * pr.y;
      (*jac)(pr.row, cx) += dxr.real();
      (*jac)(pr.row + 1, cx) += dxr.imag();
      (*jac)(pr.row, cx + 1) += dxi.real();
      (*jac)(pr.row + 1, cx + 1) += dxi.imag();
      (*jac)(pr.row, cy) += dyr.real();
      (*jac)(pr.row + 1, cy) += dyr.imag();
      (*jac)(pr.row, cy + 1) += dyi.real();
      (*jac)(pr.row + 1, cy + 1) += dyi.imag();
    }
  }
}

// One damped Gauss-Newton run; returns the final squared residual.
inline double levenberg_marquardt(Eigen::VectorXd& x, const FaceData& target, const SearchOptions& opt) {
  const Eigen::Index m = x.size();
  Eigen::VectorXd res(9), trial_res(9);
  Eigen::MatrixXd J(9, m);
  face_residual(x, target, res, &J);
  double cost = res.squaredNorm();
  double mu = 1e-3;
  for (int it = 0; it < opt.max_iterations && cost > opt.converged_sq; ++it) {
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * res;
    if (g.norm() < 1e-15) break;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal().array() += mu * (1.0 + JtJ.diagonal().array());
      const Eigen::VectorXd step = -A.ldlt().solve(g);
      Eigen::VectorXd trial = x + step;
      face_residual(trial, target, trial_res, nullptr);
      const double trial_cost = trial_res.squaredNorm();
      if (trial_cost < cost) {
        const double gain = cost - trial_cost;
        x = std::move(trial);
        cost = trial_cost;
        mu = std::max(mu / 3.0, 1e-12);
        improved = true;
        if (gain < 1e-14 * cost) it = opt.max_iterations;  // stalled
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
    face_residual(x, target, res, &J);
  }
  return cost;
}

inline std::vector<SquareAnsatz> unpack(const Eigen::VectorXd& x, double scale) {
  std::vector<SquareAnsatz> out(static_cast<std::size_t>(x.size() / 8));
  for (std::size_t s = 0; s < out.size(); ++s) {
    const auto o = static_cast<Eigen::Index>(8 * s);
    out[s] = {scale * Complex(x(o), x(o + 1)), scale * Complex(x(o + 2), x(o + 3)),
              scale * Complex(x(o + 4), x(o + 5)), scale * Complex(x(o + 6), x(o + 7))};
  }
  return out;
}

}  // namespace detail

// Best fit of sum of r squares to the data over seeded random starts.
// Starts are complex Gaussian with standard deviation sqrt(c00 / 4) per
// coefficient; results are ranked by (residual, start index).
inline SearchResult search_squares(const FaceData& data, std::size_t r, const SearchOptions& opt = {}) {
  SearchResult out;
  if (!(data.c00 > 0)) return out;
  const double c00 = data.c00;
  const FaceData target = data.scaled(1.0 / c00);
  Rng rng(opt.seed + 7919 * r);
  std::normal_distribution<double> g(0.0, std::sqrt(0.25 / 2.0));
  Eigen::VectorXd x(static_cast<Eigen::Index>(8 * r));
  for (std::size_t k = 0; k < opt.starts; ++k) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
    const double cost = detail::levenberg_marquardt(x, target, opt);
    const double resid = std::sqrt(cost);
    if (resid < out.best_residual) {
      out.best_residual = resid;
      out.best_start = k;
      out.best = detail::unpack(x, std::sqrt(c00));
    }
    if (cost <= opt.converged_sq) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact single-square decision.

struct BranchTrace {
  std::string branch;
  bool feasible = false;
  std::string reason;
  std::vector<std::pair<std::string, double>> derived;
};

struct SingleSquareResult {
  bool feasible = false;
  std::optional<SquareAnsatz> witness;
  double witness_residual = std::numeric_limits<double>::quiet_NaN();
  std::vector<BranchTrace> branches;
  // Cross-check from search_squares with r = 1.
  double numeric_best_residual = std::numeric_limits<double>::quiet_NaN();
  std::size_t numeric_starts = 0;
  bool numeric_consistent = true;
};

namespace detail {

constexpr double kCaseTol = 1e-9;

struct Candidate {
  Complex lead, first, second;  // (a, b, c) for d = 0
};

// Single square with the zw coefficient vanishing and d = 0, so the unknowns
// are a, b, c with
//   c00 = |a|^2 + |b|^2 + |c|^2, c10 = conj(a) b, c01 = conj(a) c, c1m1 = b conj(c).
// Data must be normalized to c00 = 1.  Names label the trace: the a = 0
// branch reuses this with (a, b, c) -> (conj d, conj c, conj b).
inline std::optional<Candidate> lead_free_branch(const FaceData& D, BranchTrace& tr, const char* lead,
                                                 const char* first, const char* second) {
  const double tol = kCaseTol;
  const auto sq = [](const char* s) { return std::string("|") + s + "|^2"; };
  auto check = [&](const Candidate& c) {
    SquareAnsatz s{c.lead, c.first, c.second, 0.0};
    return data_mismatch(ansatz_coeffs(s), D) <= tol;
  };
  const bool z10 = std::abs(D.c10) <= tol, z01 = std::abs(D.c01) <= tol, zm = std::abs(D.c1m1) <= tol;

  // lead = 0 as well: only |first|^2 + |second|^2 and first*conj(second) remain.
  std::optional<Candidate> both_zero;
  if (z10 && z01 && D.c00 + tol >= 2 * std::abs(D.c1m1)) {
    const double disc = std::sqrt(std::max(0.0, D.c00 * D.c00 - 4 * std::norm(D.c1m1)));
    const double nb = std::sqrt((D.c00 + disc) / 2);
    const Complex sc = nb > 0 ? std::conj(D.c1m1) / nb : Complex(0);
    Candidate c{0.0, nb, sc};
    if (check(c)) both_zero = c;
  }
  if (both_zero) {
    tr.feasible = true;
    tr.reason = std::string("witness with ") + lead + " = 0";
    return both_zero;
  }

  if (z10 && z01) {
    tr.reason = std::string("c10 = c01 = 0 forces ") + lead + " = 0 or " + first + " = " + second +
                " = 0, and neither fits c00 and c1m1";
    return std::nullopt;
  }

  if (!z10 && !z01) {
    // first / second = c10 / c01 and first conj(second) = c1m1 give
    // |first|^2 = c1m1 conj(c10 / c01).
    if (zm) {
      tr.reason = std::string("c10, c01 != 0 force ") + first + ", " + second + " != 0, but c1m1 = " + first +
                  " conj(" + second + ") = 0";
      return std::nullopt;
    }
    const Complex nf = D.c1m1 * std::conj(D.c10 / D.c01);
    tr.derived.emplace_back(sq(first), nf.real());
    if (std::abs(nf.imag()) > tol || nf.real() <= tol) {
      tr.reason = std::string("c1m1 conj(c10/c01) = |") + first + "|^2 is not a positive real";
      return std::nullopt;
    }
    const double nfirst = nf.real();
    const double nsecond = std::norm(D.c1m1) / nfirst;
    const double nlead = D.c00 - nfirst - nsecond;
    tr.derived.emplace_back(sq(second), nsecond);
    tr.derived.emplace_back(sq(lead), nlead);
    if (nlead <= tol) {
      tr.reason = std::string("c00 leaves |") + lead + "|^2 = " + std::to_string(nlead) + " <= 0";
      return std::nullopt;
    }
    const double prod = std::sqrt(nlead * nfirst);
    tr.derived.emplace_back(std::string("|conj(") + lead + ") " + first + "|", prod);
    tr.derived.emplace_back("|c10|", std::abs(D.c10));
    if (std::abs(prod - std::abs(D.c10)) > tol) {
      tr.reason = std::string("|conj(") + lead + ") " + first + "| = " + std::to_string(prod) +
                  " contradicts |c10| = " + std::to_string(std::abs(D.c10));
      return std::nullopt;
    }
    const double a = std::sqrt(nlead);
    Candidate c{a, D.c10 / a, D.c01 / a};
    if (check(c)) {
      tr.feasible = true;
      tr.reason = "closed-form witness";
      return c;
    }
    tr.reason = "closed-form candidate fails the remaining coefficient equations";
    return std::nullopt;
  }

  // Exactly one of c10, c01 vanishes: the matching term is zero, so
  // c1m1 = 0 and |lead|^2 solves t^2 - c00 t + |c10|^2 + |c01|^2 = 0.
  if (!zm) {
    tr.reason = "one of c10, c01 vanishes, forcing c1m1 = 0";
    return std::nullopt;
  }
  const double m2 = std::norm(D.c10) + std::norm(D.c01);
  const double disc = D.c00 * D.c00 - 4 * m2;
  if (disc < -tol) {
    tr.reason = std::string("no real |") + lead + "|^2 satisfies the c00 equation";
    return std::nullopt;
  }
  for (double sign : {1.0, -1.0}) {
    const double t = (D.c00 + sign * std::sqrt(std::max(0.0, disc))) / 2;
    if (t <= tol) continue;
    const double a = std::sqrt(t);
    Candidate c{a, D.c10 / a, D.c01 / a};
    if (check(c)) {
      tr.feasible = true;
      tr.reason = "closed-form witness";
      return c;
    }
  }
  tr.reason = "quadratic candidates fail the coefficient equations";
  return std::nullopt;
}

// Both a and d nonzero.  Fix a = alpha > 0 (global phase), d = c11 / alpha;
// the c10 and c01 equations are linear in (b, conj c):
//   [alpha, c11/alpha; conj(c11)/alpha, alpha] [b; conj c] = [c10; conj c01]
// leaving c1m1 and c00 as conditions on the single unknown t = alpha^2.
inline std::optional<SquareAnsatz> full_branch(const FaceData& D, BranchTrace& tr) {
  const double tol = kCaseTol;
  const double m11 = std::abs(D.c11);
  auto check = [&](const SquareAnsatz& s) { return data_mismatch(ansatz_coeffs(s), D) <= tol; };
  if (D.c00 + tol < 2 * m11) {
    tr.reason = "c00 < 2|c11| violates |a|^2 + |d|^2 >= 2|a||d|";
    return std::nullopt;
  }
  auto solve_at = [&](double t) -> std::optional<SquareAnsatz> {
    const double alpha = std::sqrt(t);
    const double det = t - m11 * m11 / t;
    if (std::abs(det) < 1e-14) return std::nullopt;
    const Complex b = (alpha * D.c10 - (D.c11 / alpha) * std::conj(D.c01)) / det;
    const Complex cbar = (alpha * std::conj(D.c01) - (std::conj(D.c11) / alpha) * D.c10) / det;
    return SquareAnsatz{alpha, b, std::conj(cbar), D.c11 / alpha};
  };
  auto phi = [&](double t) {
    const auto s = solve_at(t);
    if (!s) return std::numeric_limits<double>::infinity();
    return data_mismatch(ansatz_coeffs(*s), D);
  };

  // t + |c11|^2 / t <= c00 bounds the search interval.
  const double disc = std::sqrt(std::max(0.0, D.c00 * D.c00 - 4 * m11 * m11));
  const double lo = std::max((D.c00 - disc) / 2, 1e-300), hi = (D.c00 + disc) / 2;
  double best = std::numeric_limits<double>::infinity();
  std::optional<SquareAnsatz> found;
  if (hi > lo) {
    constexpr int kSamples = 4000;
    std::vector<double> ts(kSamples + 1), vals(kSamples + 1);
    for (int i = 0; i <= kSamples; ++i) {
      ts[i] = lo + (hi - lo) * i / kSamples;
      vals[i] = phi(ts[i]);
    }
    for (int i = 0; i <= kSamples; ++i) {
      const bool left = i == 0 || vals[i] <= vals[i - 1];
      const bool right = i == kSamples || vals[i] <= vals[i + 1];
      if (!(left && right)) continue;
      // golden-section refinement on the bracketing cell
      double a = ts[std::max(i - 1, 0)], b = ts[std::min(i + 1, kSamples)];
      const double gr = (std::sqrt(5.0) - 1) / 2;
      double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
      double f1 = phi(x1), f2 = phi(x2);
      for (int it = 0; it < 100; ++it) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - gr * (b - a);
          f1 = phi(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + gr * (b - a);
          f2 = phi(x2);
        }
      }
      const double t = f1 < f2 ? x1 : x2;
      const double v = std::min(f1, f2);
      if (v < best) best = v;
      if (const auto s = solve_at(t); s && check(*s)) {
        found = s;
        break;
      }
    }
  }
  tr.derived.emplace_back("best residual over t = |a|^2", best);
  if (found) {
    tr.feasible = true;
    tr.reason = "witness from the reduced one-variable equations";
    return found;
  }

  // Singular point t = |c11|: rows are proportional.
  if (m11 > 0) {
    const double alpha = std::sqrt(m11);
    const Complex omega = D.c11 / m11;
    if (std::abs(std::conj(D.c01) - std::conj(omega) * D.c10) <= tol) {
      // b = c10/alpha - omega x with x = conj c; x solves
      // omega x^2 - (c10/alpha) x + c1m1 = 0.
      const Complex p = D.c10 / alpha;
      const Complex root = std::sqrt(p * p - 4.0 * omega * D.c1m1);
      for (const Complex x : {(p + root) / (2.0 * omega), (p - root) / (2.0 * omega)}) {
        SquareAnsatz s{alpha, p - omega * x, std::conj(x), D.c11 / alpha};
        if (check(s)) {
          tr.feasible = true;
          tr.reason = "witness at |a| = |d|";
          return s;
        }
      }
    }
  }
  tr.reason = "no t = |a|^2 satisfies both the c1m1 and c00 equations";
  return std::nullopt;
}

}  // namespace detail

// Decides whether data = |a + bz + cw + dzw|^2 on T^2 for some a, b, c, d.
// From c11 = conj(a) d: if c11 = 0 then a = 0 or d = 0 and both branches are
// solved in closed form; otherwise a, d != 0 and the system reduces to one
// real unknown.  numeric_starts > 0 adds a multi-start least-squares
// cross-check whose best residual is reported.
inline SingleSquareResult single_square_feasible(const FaceData& data, std::size_t numeric_starts = 1000,
                                                 std::uint64_t seed = SearchOptions{}.seed) {
  SingleSquareResult out;
  const double tol = detail::kCaseTol;
  const double scale = data.max_abs();
  if (scale == 0.0) {
    out.feasible = true;
    out.witness = SquareAnsatz{};
    out.witness_residual = 0;
    out.branches.push_back({"zero data", true, "the zero square", {}});
    return out;
  }
  if (data.c00 <= tol * scale) {
    out.branches.push_back({"c00", false, "constant term must be positive for nonzero data", {}});
  } else {
    const double c00 = data.c00;
    const FaceData D = data.scaled(1.0 / c00);
    const double root = std::sqrt(c00);
    if (std::abs(D.c11) <= tol) {
      BranchTrace d0{"d = 0", false, "", {}};
      if (auto c = detail::lead_free_branch(D, d0, "a", "b", "c"))
        out.witness = SquareAnsatz{root * c->lead, root * c->first, root * c->second, 0.0};
      out.branches.push_back(d0);

      BranchTrace a0{"a = 0", false, "", {}};
      if (auto c = detail::lead_free_branch(D, a0, "d", "c", "b"); c && !out.witness)
        out.witness = SquareAnsatz{0.0, root * std::conj(c->second), root * std::conj(c->first),
                                   root * std::conj(c->lead)};
      out.branches.push_back(a0);
    } else {
      BranchTrace full{"a, d != 0", false, "", {}};
      if (auto s = detail::full_branch(D, full))
        out.witness = SquareAnsatz{root * s->a, root * s->b, root * s->c, root * s->d};
      out.branches.push_back(full);
    }
  }
  out.feasible = out.witness.has_value();
  if (out.witness) out.witness_residual = data_mismatch(ansatz_coeffs(*out.witness), data);

  if (numeric_starts > 0 && data.c00 > 0) {
    SearchOptions opt;
    opt.starts = numeric_starts;
    opt.seed = seed;
    const SearchResult sr = search_squares(data, 1, opt);
    out.numeric_best_residual = sr.best_residual;
    out.numeric_starts = numeric_starts;
    // A numeric fit to near machine precision while the case split says no
    // would indicate a bug in one of the two routes.
    out.numeric_consistent = out.feasible || !(sr.best_residual < 1e-10);
  }
  return out;
}

struct MinSquaresResult {
  std::size_t r = 0;  // rmax + 1 when nothing was found
  std::vector<SquareAnsatz> squares;
  std::vector<double> best_residual;  // index k: best relative residual with k + 1 squares
};

// Smallest r <= rmax such that a sum of r squares matches the data to a
// relative residual below 1e-8.  r = 1 is decided exactly.
inline MinSquaresResult min_squares(const FaceData& data, std::size_t rmax, const SearchOptions& opt = {}) {
  if (rmax < 1) throw std::invalid_argument("min_squares: rmax must be at least 1");
  MinSquaresResult out;
  if (data.max_abs() == 0.0) return out;
  const SingleSquareResult one = single_square_feasible(data, 0);
  out.best_residual.push_back(one.feasible ? one.witness_residual / data.c00
                                           : std::numeric_limits<double>::infinity());
  if (one.feasible) {
    out.r = 1;
    out.squares = {*one.witness};
    return out;
  }
  for (std::size_t r = 2; r <= rmax; ++r) {
    const SearchResult sr = search_squares(data, r, opt);
    out.best_residual.push_back(sr.best_residual);
    if (sr.best_residual < 1e-8) {
      out.r = r;
      out.squares = sr.best;
      return out;
    }
  }
  out.r = rmax + 1;
  return out;
}

struct FaceBoundEntry {
  std::size_t face = 0;
  FaceData data;
  bool zero = false;
  bool single_square = false;
  std::size_t contribution = 0;
};

struct LowerBoundReport {
  std::size_t bound = 0;
  std::vector<FaceBoundEntry> faces;
};

// Each face needs at least one square if its torus data is nonzero, and at
// least two if no single square matches; dim H_j is at least that count.
inline LowerBoundReport size_lower_bound(const Poly<Complex>& p, const Poly<Complex>& q,
                                         std::size_t numeric_starts = 1000) {
  const std::size_t n = p.nvars();
  if (q.nvars() != n) throw DimensionError("size_lower_bound: p and q differ in nvars");
  if (n > 3) throw UnsupportedDegreeError("size_lower_bound: at most three variables are supported");
  for (std::size_t j = 0; j < n; ++j)
    if (multidegree(p).exponents[j] > 1 || multidegree(q).exponents[j] > 1)
      throw UnsupportedDegreeError("size_lower_bound: degree in z_" + std::to_string(j + 1) + " exceeds 1");
  LowerBoundReport out;
  for (std::size_t j = 0; j < n; ++j) {
    FaceBoundEntry e;
    e.face = j;
    e.data = FaceData::from_laurent(face_extract(p, q, j));
    e.zero = e.data.max_abs() <= 1e-11 * std::max(1.0, std::max(p.max_abs_coeff(), q.max_abs_coeff()));
    if (!e.zero) {
      e.single_square = single_square_feasible(e.data, numeric_starts).feasible;
      e.contribution = e.single_square ? 1 : 2;
    }
    out.bound += e.contribution;
    out.faces.push_back(e);
  }
  return out;
}

}  // namespace agler
