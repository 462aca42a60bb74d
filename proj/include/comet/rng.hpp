// Counter-based random streams: every (seed, stream) pair yields an
// independent, reproducible generator, so parallel trial loops stay
// bit-identical regardless of scheduling.
#ifndef COMET_RNG_HPP
#define COMET_RNG_HPP

#include <cstdint>

namespace comet {

class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform double in [0, 1).
  double uniform();
  double uniform(double a, double b);
  bool bernoulli(double p);
  /// Standard normal via Box-Muller.
  double gaussian();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace comet

#endif
