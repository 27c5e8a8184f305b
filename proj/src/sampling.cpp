#include "bgeom/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bgeom::sampling {

namespace {

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131,
                                137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
                                227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};
constexpr int kMaxDim = sizeof(kPrimes) / sizeof(kPrimes[0]);

}  // namespace

double radical_inverse(unsigned base, std::uint64_t index) {
  const double inv = 1.0 / base;
  double f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

Halton::Halton(int dim, std::uint64_t start) : dim_(dim), index_(start) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Halton: unsupported dimension");
}

Eigen::VectorXd Halton::at(std::uint64_t index) const {
  Eigen::VectorXd p(dim_);
  for (int i = 0; i < dim_; ++i) p[i] = radical_inverse(kPrimes[i], index);
  return p;
}

Eigen::VectorXd Halton::next() { return at(index_++); }

std::vector<Eigen::VectorXd> cube_points(int dim, std::size_t count) {
  Halton h(dim);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(2.0 * h.next().array() - 1.0);
  return out;
}

std::vector<Eigen::VectorXd> directions(int dim, std::size_t count) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  if (dim == 1) {
    out.push_back(Eigen::VectorXd::Ones(1));
    out.push_back(-Eigen::VectorXd::Ones(1));
    return out;
  }
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      Eigen::VectorXd v(2);
      v << std::cos(a), std::sin(a);
      out.push_back(v);
    }
    return out;
  }
  Halton h(dim);
  while (out.size() < count) {
    Eigen::VectorXd p = 2.0 * h.next().array() - 1.0;
    const double n = p.norm();
    if (n > 1.0 || n < 0.1) continue;
    out.push_back(p / n);
  }
  return out;
}

std::vector<Eigen::VectorXd> sign_vectors(int dim, std::size_t max_count) {
  std::vector<Eigen::VectorXd> out;
  const std::uint64_t total = dim >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim);
  for (std::uint64_t mask = 0; mask < total && out.size() < max_count; ++mask) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = (mask >> i) & 1u ? -1.0 : 1.0;
    out.push_back(v);
  }
  return out;
}

}  // namespace bgeom::sampling
