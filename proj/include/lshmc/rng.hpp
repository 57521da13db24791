#pragma once

#include <cstdint>
#include <cmath>
#include <random>

#include <Eigen/Core>

namespace lshmc {

// Seeded random stream with a fully specified draw order, so that a chain is
// reproducible bitwise from (seed, chain index) alone.  Uniforms come from the
// top 53 bits of mt19937_64; normals use Box-Muller with a cached spare.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for a worker (chain, replicate, ...) derived from a
  // master seed.  Uses splitmix64 so neighbouring indices decorrelate.
  static RandomStream substream(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
    for (int i = 0; i < 2; ++i) {
      z ^= z >> 30;
      z *= 0xbf58476d1ce4e5b9ull;
      z ^= z >> 27;
      z *= 0x94d049bb133111ebull;
      z ^= z >> 31;
    }
    return RandomStream(z);
  }

  // Uniform in (0, 1]; never 0, so log(u) is finite.
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in {0, ..., n-1}.
  long uniform_index(long n) {
    long j = static_cast<long>(uniform() * static_cast<double>(n));
    return j >= n ? n - 1 : j;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  void fill_normal(Eigen::Ref<Eigen::VectorXd> out) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = normal();
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lshmc
