#pragma once

// Exact scalars for the bundled examples: Gaussian rationals extended by
// square roots of positive integers.  An element is a finite sum
// sum_k g_k * sqrt(k) with g_k in Q(i) and k square-free.  Square roots of
// distinct square-free integers are linearly independent over Q(i), so the
// representation is canonical and equality / zero tests are exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "agler/errors.hpp"

namespace agler {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  const auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i >= part.size()) throw ParseError("bad rational literal '" + s + "'");
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw ParseError("bad rational literal '" + s + "'");
  };
  if (slash == std::string::npos) {
    check_int(s);
    return Rational(boost::multiprecision::cpp_int(s));
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  boost::multiprecision::cpp_int d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  return Rational(boost::multiprecision::cpp_int(num), d);
}

inline std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

struct GaussianRational {
  Rational re{0};
  Rational im{0};

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

namespace detail {

// n = square * squarefree; returns {root of the square part, squarefree part}.
inline std::pair<std::int64_t, std::int64_t> split_square(std::int64_t n) {
  std::int64_t root = 1, rest = n;
  for (std::int64_t f = 2; f * f <= rest; ++f) {
    while (rest % (f * f) == 0) {
      rest /= f * f;
      root *= f;
    }
  }
  return {root, rest};
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

class Surd {
 public:
  Surd() = default;
  Surd(int v) { set(1, {Rational(v), Rational(0)}); }  // NOLINT: implicit integer literals
  Surd(const Rational& v) { set(1, {v, Rational(0)}); }  // NOLINT
  Surd(const GaussianRational& g) { set(1, g); }         // NOLINT

  static Surd imaginary_unit() { return Surd(GaussianRational{Rational(0), Rational(1)}); }

  // sqrt(r) for a non-negative rational whose reduced numerator*denominator
  // fits in 63 bits.
  static Surd sqrt(const Rational& r) {
    if (r < 0) throw std::domain_error("Surd::sqrt of a negative rational");
    if (r == 0) return Surd();
    const boost::multiprecision::cpp_int nd = numerator(r) * denominator(r);
    if (nd > std::numeric_limits<std::int64_t>::max())
      throw std::domain_error("Surd::sqrt radicand too large");
    const auto [root, rest] = detail::split_square(nd.convert_to<std::int64_t>());
    Surd out;
    out.set(rest, {Rational(boost::multiprecision::cpp_int(root), denominator(r)), Rational(0)});
    return out;
  }

  // Exact value of a binary double.
  static Surd from_double(double re, double im = 0.0) {
    return Surd(GaussianRational{Rational(re), Rational(im)});
  }

  const std::map<std::int64_t, GaussianRational>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  Surd conj() const {
    Surd out;
    for (const auto& [k, g] : parts_) out.parts_.emplace(k, g.conj());
    return out;
  }

  std::complex<double> to_complex() const {
    double re = 0, im = 0;
    for (const auto& [k, g] : parts_) {
      const double s = std::sqrt(static_cast<double>(k));
      re += to_double(g.re) * s;
      im += to_double(g.im) * s;
    }
    return {re, im};
  }

  // True when the value lies in Q (no imaginary part, no surd).
  bool is_rational() const {
    if (parts_.empty()) return true;
    return parts_.size() == 1 && parts_.begin()->first == 1 && parts_.begin()->second.im == 0;
  }
  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("Surd is not rational");
    return parts_.empty() ? Rational(0) : parts_.begin()->second.re;
  }

  Surd& operator+=(const Surd& o) {
    for (const auto& [k, g] : o.parts_) accumulate(k, g);
    return *this;
  }
  Surd& operator-=(const Surd& o) {
    for (const auto& [k, g] : o.parts_) accumulate(k, -g);
    return *this;
  }
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator-(const Surd& a) {
    Surd out;
    for (const auto& [k, g] : a.parts_) out.parts_.emplace(k, -g);
    return out;
  }
  friend Surd operator*(const Surd& a, const Surd& b) {
    Surd out;
    for (const auto& [ka, ga] : a.parts_) {
      for (const auto& [kb, gb] : b.parts_) {
        // sqrt(ka) sqrt(kb) = g sqrt(ka kb / g^2) with g = gcd(ka, kb)
        const std::int64_t g = detail::gcd64(ka, kb);
        const std::int64_t k = (ka / g) * (kb / g);
        out.accumulate(k, GaussianRational{Rational(g), Rational(0)} * ga * gb);
      }
    }
    return out;
  }
  Surd& operator*=(const Surd& o) { return *this = *this * o; }
  friend bool operator==(const Surd& a, const Surd& b) { return (a - b).is_zero(); }

  // Text form: terms such as "3/4", "-1/2*sqrt(3)", "1/2i*sqrt(2)", "2i".
  std::string str() const {
    if (parts_.empty()) return "0";
    std::string out;
    auto emit = [&](const Rational& r, bool imag, std::int64_t k) {
      if (r == 0) return;
      std::string t = format_rational(r);
      if (!out.empty() && t[0] != '-') out += '+';
      out += t;
      if (imag) out += 'i';
      if (k != 1) out += "*sqrt(" + std::to_string(k) + ")";
    };
    for (const auto& [k, g] : parts_) {
      emit(g.re, false, k);
      emit(g.im, true, k);
    }
    return out;
  }

  static Surd parse(std::string_view text) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty exact scalar");
    Surd out;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t end = pos + 1;
      int depth = 0;
      while (end < s.size()) {
        const char ch = s[end];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == '+' || ch == '-') && s[end - 1] != '/') break;
        ++end;
      }
      out += parse_term(s.substr(pos, end - pos));
      pos = end;
    }
    return out;
  }

 private:
  void set(std::int64_t k, const GaussianRational& g) {
    parts_.clear();
    if (!g.is_zero()) parts_.emplace(k, g);
  }
  void accumulate(std::int64_t k, const GaussianRational& g) {
    auto it = parts_.find(k);
    if (it == parts_.end()) {
      if (!g.is_zero()) parts_.emplace(k, g);
      return;
    }
    it->second = it->second + g;
    if (it->second.is_zero()) parts_.erase(it);
  }

  static Surd parse_term(std::string term) {
    if (!term.empty() && term[0] == '+') term.erase(0, 1);
    std::int64_t radicand = 1;
    const auto root = term.find("sqrt(");
    if (root != std::string::npos) {
      if (term.back() != ')') throw ParseError("bad surd term '" + term + "'");
      const std::string arg = term.substr(root + 5, term.size() - root - 6);
      std::size_t used = 0;
      try {
        radicand = std::stoll(arg, &used);
      } catch (const std::exception&) {
        throw ParseError("bad radicand in '" + term + "'");
      }
      if (used != arg.size()) throw ParseError("bad radicand in '" + term + "'");
      if (radicand <= 0) throw ParseError("radicand must be positive in '" + term + "'");
      term = term.substr(0, root);
      if (!term.empty() && term.back() == '*') {
        term.pop_back();
        if (term.empty() || term == "-") throw ParseError("bad surd term '" + term + "'");
      } else if (!term.empty() && term != "-") {
        throw ParseError("missing '*' before sqrt");
      }
      if (term.empty() || term == "-") term += "1";
    }
    bool imag = false;
    if (!term.empty() && term.back() == 'i') {
      imag = true;
      term.pop_back();
      if (term.empty() || term == "-" || term == "+") term += "1";
    }
    const Rational r = parse_rational(term);
    const GaussianRational g = imag ? GaussianRational{Rational(0), r} : GaussianRational{r, Rational(0)};
    return Surd(g) * sqrt(Rational(radicand));
  }

  std::map<std::int64_t, GaussianRational> parts_;
};

}  // namespace agler
