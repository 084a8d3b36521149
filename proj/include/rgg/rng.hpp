#pragma once

#include <cmath>
#include <cstdint>

namespace rgg {

// Finalizer used both as the SplitMix64 output function and for deriving
// substream seeds.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based generator: a Weyl sequence pushed through mix64.
// All randomness in the library flows through this engine so that results
// are reproducible from a single master seed on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_ += 0x9E3779B97F4A7C15ULL); }

  // Uniform in [0,1), 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0,1]; safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased integer in [0,n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    std::uint64_t x = next();
    while (x < threshold) x = next();
    return x % n;
  }

  // Box-Muller pair of independent N(0,1) deviates.
  void normal_pair(double& z0, double& z1) {
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846 * u2;
    z0 = r * std::cos(t);
    z1 = r * std::sin(t);
  }

 private:
  std::uint64_t state_;
};

// Stream tags keep the independent consumers of one master seed apart.
enum StreamTag : std::uint64_t {
  kStreamPoint = 1,       // one stream per sampled sphere point
  kStreamTrialClique,     // one stream per Monte Carlo tuple trial
  kStreamTrialIndep,
  kStreamTupleVertices,   // vertex tuples in graph-level MC estimates
  kStreamHomomorphism,    // one stream per homomorphism map
  kStreamResidualCoin,    // one stream per K_N edge (residual 2-coloring)
  kStreamBaseGraph,
};

// Derives the generator for (master, tag, index). Trials indexed this way
// may execute in any order or in parallel and still reproduce the
// sequential results bit for bit.
inline SplitMix64 substream(std::uint64_t master, std::uint64_t tag,
                            std::uint64_t index) {
  std::uint64_t s = mix64(master ^ (0x9E3779B97F4A7C15ULL * (tag + 1)));
  s = mix64(s + 0xD1B54A32D192ED03ULL * (index + 1));
  return SplitMix64(s);
}

}  // namespace rgg
