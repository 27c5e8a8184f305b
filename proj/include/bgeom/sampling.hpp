#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace bgeom::sampling {

/// Van der Corput radical inverse of `index` in the given base.
double radical_inverse(unsigned base, std::uint64_t index);

/// Deterministic Halton sequence in [0,1)^dim. Index 0 is skipped so the
/// first point is not the origin corner.
class Halton {
 public:
  explicit Halton(int dim, std::uint64_t start = 1);
  Eigen::VectorXd next();
  Eigen::VectorXd at(std::uint64_t index) const;

 private:
  int dim_;
  std::uint64_t index_;
};

/// `count` Halton points mapped to the cube [-1,1]^dim.
std::vector<Eigen::VectorXd> cube_points(int dim, std::size_t count);

/// `count` Euclidean unit vectors. In dimension 2 these are equally spaced
/// angles; in higher dimension, normalized Halton points of the Euclidean
/// ball (rejecting the small core around the origin).
std::vector<Eigen::VectorXd> directions(int dim, std::size_t count);

/// Sign vectors of length `dim`, in binary counting order starting from the
/// all-plus vector. Capped at `max_count` entries.
std::vector<Eigen::VectorXd> sign_vectors(int dim, std::size_t max_count);

}  // namespace bgeom::sampling
