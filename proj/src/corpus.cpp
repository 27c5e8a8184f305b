#include "bgeom/corpus.hpp"

namespace bgeom {

namespace {

// splitmix64: fixed output on every platform, unlike std distributions.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : s_(seed) {}
  std::uint64_t bits() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(bits() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t s_;
};

}  // namespace

std::vector<Space> facet_corpus(std::size_t count, std::uint64_t seed) {
  Stream rng(seed);
  std::vector<Space> out;
  for (std::size_t k = 0; k < count; ++k) {
    const int d = 2 + static_cast<int>(k % 3);
    const int rows = d + 1 + static_cast<int>(rng.bits() % 4);
    while (true) {
      std::vector<Vec> fs;
      Mat m(rows, d);
      for (int r = 0; r < rows; ++r) {
        Vec f(d);
        for (int i = 0; i < d; ++i) f[i] = rng.uniform(-1.0, 1.0);
        m.row(r) = f.transpose();
        fs.push_back(std::move(f));
      }
      if (Eigen::JacobiSVD<Mat>(m).singularValues().minCoeff() < 0.1) continue;
      out.push_back(Space::facet(std::move(fs)));
      break;
    }
  }
  return out;
}

}  // namespace bgeom
