#pragma once

#include <cstddef>
#include <vector>

#include "agler/polycore.hpp"

namespace agler {

// A sums-of-squares (Agler) decomposition
//
//   |p(z)|^2 - |q(z)|^2 = sum_j (1 - |z_j|^2) |F_j(z)|^2
//
// stored as one vector polynomial per variable.  Faces are kept even when
// empty so the n-tuple structure stays explicit.
template <class T>
class SosCertificate {
 public:
  SosCertificate() = default;
  explicit SosCertificate(std::size_t nvars) : nvars_(nvars), faces_(nvars, VecPoly<T>(nvars, 0)) {}
  SosCertificate(std::size_t nvars, std::vector<VecPoly<T>> faces)
      : nvars_(nvars), faces_(std::move(faces)) {
    if (faces_.size() != nvars_) throw DimensionError("certificate needs one face per variable");
    for (const auto& f : faces_)
      if (f.nvars() != nvars_) throw DimensionError("certificate face has wrong nvars");
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<VecPoly<T>>& faces() const { return faces_; }
  const VecPoly<T>& face(std::size_t j) const { return faces_.at(j); }

  // N_j, the number of squares attached to variable j.
  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> out;
    for (const auto& f : faces_) out.push_back(f.dim());
    return out;
  }

  std::size_t total_count() const {
    std::size_t n = 0;
    for (const auto& f : faces_) n += f.dim();
    return n;
  }

 private:
  std::size_t nvars_ = 0;
  std::vector<VecPoly<T>> faces_;
};

template <class To, class From>
SosCertificate<To> convert(const SosCertificate<From>& cert) {
  std::vector<VecPoly<To>> faces;
  for (const auto& f : cert.faces()) faces.push_back(convert<To>(f));
  return SosCertificate<To>(cert.nvars(), std::move(faces));
}

}  // namespace agler
