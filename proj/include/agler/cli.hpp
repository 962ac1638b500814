#pragma once

// The `agler` command-line front-end.  run() is the whole program minus
// process plumbing, so tests can drive it in-process.
//
// Exit codes: 0 pass, 1 domain failure, 2 usage or parse error.

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "agler/certificate.hpp"
#include "agler/demos.hpp"
#include "agler/errors.hpp"
#include "agler/exact.hpp"
#include "agler/facebound.hpp"
#include "agler/hermform.hpp"
#include "agler/json_io.hpp"
#include "agler/polycore.hpp"
#include "agler/realize.hpp"
#include "agler/soscert.hpp"
#include "agler/vntest.hpp"

namespace agler::cli {

using nlohmann::json;

inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string p_path, q_path, cert_path, realization_path, demo, out_path, point, write_dir, demo_name;
  double tol = 1e-10;
  std::uint64_t seed = 20100101;
  std::size_t trials = 1000;
  std::size_t dim = 0;  // 0: cycle through 1..6
  std::size_t starts = 1000;
  double rho = 0.95;
  bool json = false;
  bool exact = false;
};

// Match tolerance for realization-vs-(q/p) comparisons at random points and
// the slack of the von Neumann probe; both are looser than --tol because
// they involve linear solves.
inline constexpr double kMatchTol = 1e-8;
inline constexpr double kVnSlack = 1e-8;
inline constexpr std::size_t kMatchPoints = 200;

// ---------------------------------------------------------------------------
// Formatting

inline std::string format_double(double x, int precision = 17) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

inline std::string format_complex(const Complex& c, int precision = 17) {
  if (c.imag() == 0) return format_double(c.real(), precision);
  std::ostringstream os;
  os << std::setprecision(precision) << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

inline std::string format_scalar(const Complex& c) { return format_complex(c, 12); }
inline std::string format_scalar(const Surd& c) { return c.str(); }

template <bool S>
std::string format_monomial(const BasicIndex<S>& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "z" + std::to_string(i + 1);
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

template <class P>
std::string format_poly(const P& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : p.terms()) {
    if (!s.empty()) s += " + ";
    const std::string m = format_monomial(e);
    const std::string cs = format_scalar(c);
    s += m.empty() ? cs : "(" + cs + ")*" + m;
  }
  return s;
}

inline std::string format_index(const MultiIndex& e) { return e.str(); }

// Two-column verdict table.
class Table {
 public:
  void row(std::string check, std::string value, bool ok) {
    rows_.push_back({std::move(check), std::move(value), ok ? "PASS" : "FAIL"});
    all_ &= ok;
  }
  void note(std::string check, std::string value) { rows_.push_back({std::move(check), std::move(value), "info"}); }
  bool all_pass() const { return all_; }

  void print(std::ostream& out) const {
    std::size_t w0 = 5, w1 = 5;
    for (const auto& r : rows_) {
      w0 = std::max(w0, r[0].size());
      w1 = std::max(w1, r[1].size());
    }
    out << std::left << std::setw(static_cast<int>(w0)) << "check" << "  " << std::setw(static_cast<int>(w1))
        << "value" << "  verdict\n";
    for (const auto& r : rows_)
      out << std::left << std::setw(static_cast<int>(w0)) << r[0] << "  " << std::setw(static_cast<int>(w1)) << r[1]
          << "  " << r[2] << '\n';
  }

  json to_json() const {
    json a = json::array();
    for (const auto& r : rows_) a.push_back({{"check", r[0]}, {"value", r[1]}, {"verdict", r[2]}});
    return a;
  }

 private:
  std::vector<std::array<std::string, 3>> rows_;
  bool all_ = true;
};

// ---------------------------------------------------------------------------
// Inputs

// "0.5", "-0.25+0.1i", "2i", "-i"
inline Complex parse_complex(const std::string& token) {
  std::string t;
  for (char ch : token)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw UsageError("empty complex number");
  auto real = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + s + "' in '" + token + "'");
    }
    if (used != s.size()) throw UsageError("bad number '" + s + "' in '" + token + "'");
    return v;
  };
  auto imag = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return real(s);
  };
  if (t.back() != 'i') return {real(t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, imag(body)};
  return {real(body.substr(0, split)), imag(body.substr(split))};
}

inline std::vector<Complex> parse_point(const std::string& text) {
  std::vector<Complex> z;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) z.push_back(parse_complex(tok));
  if (z.empty()) throw UsageError("--point needs at least one coordinate");
  return z;
}

struct Problem {
  std::optional<DemoBundle> demo;
  Poly<Complex> p, q;
  std::optional<SosCertificate<Complex>> cert;
  // Populated in exact mode.
  std::optional<Poly<Surd>> p_exact, q_exact;
  std::optional<SosCertificate<Surd>> cert_exact;
};

inline DemoBundle demo_or_usage(const std::string& name) {
  try {
    return load_demo(name);
  } catch (const std::invalid_argument&) {
    std::string names;
    for (const auto& n : demo_names()) names += (names.empty() ? "" : ", ") + n;
    throw UsageError("unknown demo '" + name + "' (available: " + names + ")");
  }
}

inline Problem load_problem(const Options& o, bool need_cert) {
  Problem pr;
  if (!o.demo.empty()) {
    pr.demo = demo_or_usage(o.demo);
    pr.p = pr.demo->p_float();
    pr.q = pr.demo->q_float();
    pr.cert = pr.demo->certificate_float();
    if (o.exact) {
      pr.p_exact = pr.demo->p;
      pr.q_exact = pr.demo->q;
      pr.cert_exact = pr.demo->certificate;
    }
  } else {
    if (o.p_path.empty() || o.q_path.empty()) throw UsageError("need --p and --q (or --demo NAME)");
    if (o.exact) {
      pr.p_exact = json_io::poly_from_json<Surd>(json_io::read_file(o.p_path));
      pr.q_exact = json_io::poly_from_json<Surd>(json_io::read_file(o.q_path));
      pr.p = convert<Complex>(*pr.p_exact);
      pr.q = convert<Complex>(*pr.q_exact);
      if (!o.cert_path.empty()) {
        pr.cert_exact = json_io::certificate_from_json<Surd>(json_io::read_file(o.cert_path));
        pr.cert = convert<Complex>(*pr.cert_exact);
      }
    } else {
      pr.p = json_io::poly_from_json<Complex>(json_io::read_file(o.p_path));
      pr.q = json_io::poly_from_json<Complex>(json_io::read_file(o.q_path));
      if (!o.cert_path.empty()) pr.cert = json_io::certificate_from_json<Complex>(json_io::read_file(o.cert_path));
    }
  }
  if (pr.p.nvars() != pr.q.nvars()) throw UsageError("p and q have different numbers of variables");
  if (need_cert && !pr.cert) throw UsageError("need --cert (or a --demo with a certificate)");
  if (pr.cert && pr.cert->nvars() != pr.p.nvars())
    throw UsageError("certificate and polynomials have different numbers of variables");
  return pr;
}

// Realization from --realization, or the demo's bundled one, or (for demos
// without one) the lurking-isometry realization of its certificate.
inline Realization load_realization(const Options& o) {
  if (!o.realization_path.empty()) {
    const json j = json_io::read_file(o.realization_path);
    return o.exact ? json_io::exact_realization_from_json(j).to_float() : json_io::realization_from_json(j);
  }
  if (!o.demo.empty()) {
    const DemoBundle d = demo_or_usage(o.demo);
    if (d.realization) return d.realization->to_float();
    return lurking_isometry(d.p_float(), d.q_float(), *d.certificate_float());
  }
  throw UsageError("need --realization FILE (or --demo NAME)");
}

inline std::optional<ExactRealization> load_exact_realization(const Options& o) {
  if (!o.realization_path.empty()) return json_io::exact_realization_from_json(json_io::read_file(o.realization_path));
  if (!o.demo.empty()) return demo_or_usage(o.demo).realization;
  return std::nullopt;
}

inline MultiIndex rational_degree(const Poly<Complex>& p, const Poly<Complex>& q) {
  return MultiIndex(componentwise_max(multidegree(p).exponents.values(), multidegree(q).exponents.values()));
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_verify(const Options& o, std::ostream& out) {
  const Problem pr = load_problem(o, true);
  Table t;
  json report = {{"command", "verify"}};

  double residual = 0, radial_residual = 0;
  bool identity_ok = false, radial_ok = false;
  if (o.exact) {
    residual = verify_decomposition(*pr.p_exact, *pr.q_exact, *pr.cert_exact);
    identity_ok = verifies_exactly(*pr.p_exact, *pr.q_exact, *pr.cert_exact);
    const auto rad = radial_check(*pr.p_exact, *pr.q_exact, *pr.cert_exact);
    radial_residual = rad.residual;
    radial_ok = rad.exact_match;
  } else {
    residual = verify_decomposition(pr.p, pr.q, *pr.cert);
    identity_ok = residual <= o.tol;
    const auto rad = radial_check(pr.p, pr.q, *pr.cert);
    radial_residual = rad.residual;
    radial_ok = rad.residual <= o.tol;
  }
  t.row(o.exact ? "decomposition (exact)" : "decomposition residual", format_double(residual, 6), identity_ok);
  t.row("radial identity", format_double(radial_residual, 6), radial_ok);

  const MultiIndex d = rational_degree(pr.p, pr.q);
  json faces = json::array();
  for (const auto& f : check_degree_bounds(*pr.cert, d)) {
    const std::string j = std::to_string(f.face + 1);
    t.row("face " + j + " multidegree <= " + format_index(f.degree_bound), format_index(f.multidegree), f.degree_ok);
    t.row("face " + j + " squares <= " + std::to_string(f.count_bound), std::to_string(f.count), f.count_ok);
    faces.push_back({{"face", f.face + 1},
                     {"multidegree", f.multidegree.values()},
                     {"degree_bound", f.degree_bound.values()},
                     {"degree_ok", f.degree_ok},
                     {"count", f.count},
                     {"count_bound", f.count_bound},
                     {"count_ok", f.count_ok}});
  }
  report["residual"] = residual;
  report["exact"] = o.exact;
  report["radial_residual"] = radial_residual;
  report["degree"] = d.values();
  report["faces"] = faces;
  report["pass"] = t.all_pass();
  if (o.json) {
    out << report.dump(2) << '\n';
  } else {
    t.print(out);
  }
  return t.all_pass() ? kPass : kFail;
}

inline int cmd_realize(const Options& o, std::ostream& out) {
  const Problem pr = load_problem(o, true);
  const Realization r = lurking_isometry(pr.p, pr.q, *pr.cert);
  Rng rng(o.seed);
  const double mismatch = realization_mismatch(r, pr.q, pr.p, kMatchPoints, rng);
  const double unit = r.unitarity_residual();
  if (!o.out_path.empty()) json_io::write_file(o.out_path, json_io::to_json(r));

  Table t;
  t.note("size", std::to_string(r.size()));
  std::string dims;
  for (auto k : r.dims()) dims += (dims.empty() ? "" : ",") + std::to_string(k);
  t.note("dims", "(" + dims + ")");
  t.row("unitarity residual", format_double(unit, 6), unit < Realization::kUnitaryTol);
  t.row("match residual (" + std::to_string(kMatchPoints) + " points)", format_double(mismatch, 6),
        mismatch <= kMatchTol);
  if (o.json) {
    json j = {{"command", "realize"},   {"size", r.size()},       {"dims", r.dims()},
              {"unitarity_residual", unit}, {"match_residual", mismatch}, {"pass", t.all_pass()}};
    if (o.out_path.empty()) j["realization"] = json_io::to_json(r);
    out << j.dump(2) << '\n';
  } else {
    t.print(out);
    if (!o.out_path.empty()) out << "wrote " << o.out_path << '\n';
  }
  return t.all_pass() ? kPass : kFail;
}

inline int cmd_eval(const Options& o, std::ostream& out) {
  if (o.point.empty()) throw UsageError("need --point z1,z2,...");
  const Realization r = load_realization(o);
  const std::vector<Complex> z = parse_point(o.point);
  if (z.size() != r.nvars())
    throw UsageError("point has " + std::to_string(z.size()) + " coordinates, realization has " +
                     std::to_string(r.nvars()) + " variables");
  const Complex v = transfer_eval(r, z);
  if (o.json) {
    out << json{{"re", v.real()}, {"im", v.imag()}}.dump() << '\n';
  } else {
    out << format_complex(v) << '\n';
  }
  return kPass;
}

inline int cmd_to_rational(const Options& o, std::ostream& out) {
  json j = {{"command", "to-rational"}};
  std::string ptxt, qtxt, pdeg, qdeg;
  if (o.exact) {
    const auto r = load_exact_realization(o);
    if (!r) throw UsageError("exact mode needs --realization FILE or a demo with a bundled realization");
    const auto pq = to_rational(*r);
    j["p"] = json_io::to_json(pq.p);
    j["q"] = json_io::to_json(pq.q);
    ptxt = format_poly(pq.p);
    qtxt = format_poly(pq.q);
    pdeg = multidegree(pq.p).exponents.str();
    qdeg = multidegree(pq.q).exponents.str();
  } else {
    const auto pq = to_rational(load_realization(o));
    j["p"] = json_io::to_json(pq.p);
    j["q"] = json_io::to_json(pq.q);
    ptxt = format_poly(pq.p);
    qtxt = format_poly(pq.q);
    pdeg = multidegree(pq.p).exponents.str();
    qdeg = multidegree(pq.q).exponents.str();
  }
  if (o.json) {
    out << j.dump(2) << '\n';
  } else {
    out << "p = " << ptxt << "\n  multidegree " << pdeg << '\n';
    out << "q = " << qtxt << "\n  multidegree " << qdeg << '\n';
  }
  return kPass;
}

inline json face_data_json(const FaceData& d) {
  auto c = [](const Complex& x) { return json{{"re", x.real()}, {"im", x.imag()}}; };
  return {{"c00", d.c00}, {"c10", c(d.c10)}, {"c01", c(d.c01)}, {"c11", c(d.c11)}, {"c1m1", c(d.c1m1)}};
}

inline int cmd_lower_bound(const Options& o, std::ostream& out) {
  const Problem pr = load_problem(o, false);
  const LowerBoundReport rep = size_lower_bound(pr.p, pr.q, o.starts);
  if (o.json) {
    json faces = json::array();
    for (const auto& f : rep.faces)
      faces.push_back({{"face", f.face + 1},
                       {"data", face_data_json(f.data)},
                       {"zero", f.zero},
                       {"single_square", f.single_square},
                       {"contribution", f.contribution}});
    out << json{{"command", "lower-bound"}, {"bound", rep.bound}, {"faces", faces}}.dump(2) << '\n';
  } else {
    for (const auto& f : rep.faces) {
      const auto& d = f.data;
      out << "face " << f.face + 1 << ": (c00, c10, c01, c11, c1m1) = (" << format_double(d.c00, 12) << ", "
          << format_scalar(d.c10) << ", " << format_scalar(d.c01) << ", " << format_scalar(d.c11) << ", "
          << format_scalar(d.c1m1) << ")  ";
      if (f.zero)
        out << "zero face";
      else
        out << (f.single_square ? "one square suffices" : "no single square");
      out << "  -> " << f.contribution << '\n';
    }
    out << "lower bound: " << rep.bound << '\n';
  }
  return kPass;
}

inline int cmd_vn_test(const Options& o, std::ostream& out) {
  const Problem pr = load_problem(o, false);
  if (!(o.rho > 0 && o.rho < 1)) throw UsageError("--rho must lie in (0, 1)");
  if (o.dim > 64) throw UsageError("--dim must be at most 64");
  const VnProbeResult r = vn_probe(pr.q, pr.p, o.trials, o.dim, o.rho, o.seed, kVnSlack);
  if (o.json) {
    out << json{{"command", "vn-test"},      {"trials", r.trials},         {"dim", o.dim},
                {"rho", o.rho},              {"seed", o.seed},             {"max_norm", r.max_norm},
                {"worst_seed", r.worst_seed}, {"pass", r.pass}}
               .dump(2)
        << '\n';
  } else {
    out << "trials " << r.trials << ", dim " << (o.dim ? std::to_string(o.dim) : std::string("1..6")) << ", rho "
        << o.rho << ", seed " << o.seed << '\n';
    out << "max ||q(T) p(T)^-1|| = " << format_double(r.max_norm, 12) << " (seed " << r.worst_seed << ")\n";
    out << (r.pass ? "PASS" : "FAIL: von Neumann inequality violated") << '\n';
  }
  return r.pass ? kPass : kFail;
}

// Cross-multiplied comparison q1 p2 - q2 p1, normalized by the inputs' size.
inline double ratio_defect(const Poly<Complex>& q1, const Poly<Complex>& p1, const Poly<Complex>& q2,
                           const Poly<Complex>& p2) {
  const double scale = std::max({1.0, q1.max_abs_coeff(), p1.max_abs_coeff()}) *
                       std::max({1.0, q2.max_abs_coeff(), p2.max_abs_coeff()});
  return (q1 * p2 - q2 * p1).max_abs_coeff() / scale;
}

inline int cmd_demo(const Options& o, std::ostream& out) {
  const DemoBundle d = demo_or_usage(o.demo_name);
  const Poly<Complex> p = d.p_float(), q = d.q_float();
  Table t;
  t.note("f", "(" + format_poly(d.q) + ") / (" + format_poly(d.p) + ")");

  std::optional<Realization> realized;
  if (d.realization) {
    const Realization r = d.realization->to_float();
    if (o.exact) {
      t.row("bundled U unitary (exact)", d.realization->is_unitary() ? "U*U = I" : "U*U != I",
            d.realization->is_unitary());
    } else {
      t.row("bundled U unitary", format_double(r.unitarity_residual(), 6), r.unitarity_residual() < 1e-12);
    }
    Rng rng(o.seed);
    const double mismatch = realization_mismatch(r, q, p, kMatchPoints, rng);
    t.row("eval vs q/p (" + std::to_string(kMatchPoints) + " points)", format_double(mismatch, 6), mismatch < 1e-10);
    if (!(mismatch < 1e-10)) {
      Rng rng2(o.seed);
      const double flipped = realization_mismatch(r, -q, p, kMatchPoints, rng2);
      t.note("eval vs -q/p", format_double(flipped, 6));
    }
    if (o.exact) {
      const auto pq = to_rational(*d.realization);
      const bool same = pq.q * d.p == d.q * pq.p;
      t.row("to_rational = q/p (exact)", "p = " + format_poly(pq.p), same);
    } else {
      const auto pq = to_rational(r);
      const double defect = ratio_defect(pq.q, pq.p, q, p);
      t.row("to_rational = q/p", format_double(defect, 6), defect <= o.tol);
    }
  }

  if (d.certificate) {
    if (o.exact) {
      const bool ok = verifies_exactly(d.p, d.q, *d.certificate);
      t.row("decomposition (exact)", ok ? "0" : format_double(verify_decomposition(d.p, d.q, *d.certificate), 6), ok);
      const auto rad = radial_check(d.p, d.q, *d.certificate);
      t.row("radial identity (exact)", format_double(rad.residual, 6), rad.exact_match);
    } else {
      const auto cert = *d.certificate_float();
      const double res = verify_decomposition(p, q, cert);
      t.row("decomposition residual", format_double(res, 6), res <= o.tol);
      const auto rad = radial_check(p, q, cert);
      t.row("radial identity", format_double(rad.residual, 6), rad.residual <= o.tol);
    }
    const auto cert = *d.certificate_float();
    bool bounds_ok = true;
    for (const auto& f : check_degree_bounds(cert, rational_degree(p, q))) bounds_ok &= f.degree_ok && f.count_ok;
    t.row("degree bounds", bounds_ok ? "ok" : "violated", bounds_ok);

    const Realization r = lurking_isometry(p, q, cert);
    realized = r;
    Rng rng(o.seed);
    const double mismatch = realization_mismatch(r, q, p, kMatchPoints, rng);
    const bool size_ok = !d.expected_size || r.size() == *d.expected_size;
    t.row("lurking-isometry size" + (d.expected_size ? " == " + std::to_string(*d.expected_size) : std::string()),
          std::to_string(r.size()), size_ok);
    t.row("lurking-isometry unitarity", format_double(r.unitarity_residual(), 6),
          r.unitarity_residual() < Realization::kUnitaryTol);
    t.row("lurking-isometry eval vs q/p", format_double(mismatch, 6), mismatch <= kMatchTol);
  }

  if (d.expected_lower_bound) {
    const auto lb = size_lower_bound(p, q, o.starts);
    t.row("size lower bound == " + std::to_string(*d.expected_lower_bound), std::to_string(lb.bound),
          lb.bound == *d.expected_lower_bound);
  }

  const VnProbeResult vn = vn_probe(q, p, o.trials, o.dim, o.rho, o.seed, kVnSlack);
  t.row("von Neumann probe (" + std::to_string(o.trials) + " trials)", format_double(vn.max_norm, 12), vn.pass);

  if (!o.write_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(o.write_dir);
    const fs::path dir(o.write_dir);
    if (o.exact) {
      json_io::write_file((dir / "p.json").string(), json_io::to_json(d.p));
      json_io::write_file((dir / "q.json").string(), json_io::to_json(d.q));
      if (d.certificate) json_io::write_file((dir / "cert.json").string(), json_io::to_json(*d.certificate));
      if (d.realization) json_io::write_file((dir / "realization.json").string(), json_io::to_json(*d.realization));
    } else {
      json_io::write_file((dir / "p.json").string(), json_io::to_json(p));
      json_io::write_file((dir / "q.json").string(), json_io::to_json(q));
      if (d.certificate) json_io::write_file((dir / "cert.json").string(), json_io::to_json(*d.certificate_float()));
      if (d.realization)
        json_io::write_file((dir / "realization.json").string(), json_io::to_json(d.realization->to_float()));
      else if (realized)
        json_io::write_file((dir / "realization.json").string(), json_io::to_json(*realized));
    }
    t.note("wrote", o.write_dir);
  }

  if (o.json) {
    out << json{{"command", "demo"}, {"name", d.name}, {"checks", t.to_json()}, {"pass", t.all_pass()}}.dump(2)
        << '\n';
  } else {
    out << "demo " << d.name << '\n';
    t.print(out);
  }
  return t.all_pass() ? kPass : kFail;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Transfer-function realizations of rational inner functions on the polydisk", "agler"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--tol", o.tol, "Tolerance for residual checks")->capture_default_str();
    s->add_flag("--json", o.json, "Machine-readable JSON output");
    s->add_flag("--exact", o.exact, "Exact arithmetic where supported");
  };
  auto inputs = [&](CLI::App* s, bool cert) {
    s->add_option("--p", o.p_path, "Denominator polynomial (Poly JSON)");
    s->add_option("--q", o.q_path, "Numerator polynomial (Poly JSON)");
    if (cert) s->add_option("--cert", o.cert_path, "Sums-of-squares certificate (Certificate JSON)");
    s->add_option("--demo", o.demo, "Use a bundled demo instead of files");
  };
  auto random = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    s->add_option("--trials", o.trials, "Number of random contraction tuples")->capture_default_str();
    s->add_option("--dim", o.dim, "Matrix size of the tuples (0 cycles through 1..6)")->capture_default_str();
    s->add_option("--rho", o.rho, "Norm cap of the contractions")->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "Check a sums-of-squares certificate and its degree bounds");
  inputs(verify, true);
  common(verify);

  auto* realize = app.add_subcommand("realize", "Build a unitary realization from a certificate");
  inputs(realize, true);
  common(realize);
  realize->add_option("--out", o.out_path, "Write the realization JSON here");
  realize->add_option("--seed", o.seed, "Seed for the random match points")->capture_default_str();

  auto* evalc = app.add_subcommand("eval", "Evaluate the transfer function of a realization");
  evalc->add_option("--realization", o.realization_path, "Realization JSON");
  evalc->add_option("--demo", o.demo, "Use a bundled demo's realization");
  evalc->add_option("--point", o.point, "Comma-separated coordinates, e.g. 0.5,0.1+0.2i")->required();
  common(evalc);

  auto* torat = app.add_subcommand("to-rational", "Recover q/p from a realization");
  torat->add_option("--realization", o.realization_path, "Realization JSON");
  torat->add_option("--demo", o.demo, "Use a bundled demo's realization");
  common(torat);

  auto* lower = app.add_subcommand("lower-bound", "Lower bound on the realization size from the torus faces");
  inputs(lower, false);
  common(lower);
  lower->add_option("--starts", o.starts, "Numeric multi-start count per face")->capture_default_str();

  auto* vn = app.add_subcommand("vn-test", "Probe the von Neumann inequality on random commuting contractions");
  inputs(vn, false);
  common(vn);
  random(vn);

  auto* demo = app.add_subcommand("demo", "Run the full pipeline on a bundled example");
  demo->add_option("name", o.demo_name, "blaschke, twovar, trivar or coordinate")->required();
  demo->add_option("--write-dir", o.write_dir, "Write the bundle's JSON files into this directory");
  demo->add_option("--starts", o.starts, "Numeric multi-start count per face")->capture_default_str();
  common(demo);
  random(demo);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) return cmd_verify(o, out);
    if (*realize) return cmd_realize(o, out);
    if (*evalc) return cmd_eval(o, out);
    if (*torat) return cmd_to_rational(o, out);
    if (*lower) return cmd_lower_bound(o, out);
    if (*vn) return cmd_vn_test(o, out);
    if (*demo) return cmd_demo(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotIsometricError& e) {
    err << "not isometric: " << e.what() << '\n';
    return kFail;
  } catch (const UnsupportedDegreeError& e) {
    err << "unsupported degree: " << e.what() << '\n';
    return kFail;
  } catch (const SingularityError& e) {
    err << "singular: " << e.what() << '\n';
    return kFail;
  } catch (const FaceNotFactorableError& e) {
    err << "face not factorable: " << e.what() << '\n';
    return kFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

}  // namespace agler::cli
