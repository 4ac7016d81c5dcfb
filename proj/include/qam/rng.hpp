#pragma once

#include <cstdint>
#include <random>

namespace qam {

// Deterministic random source. mt19937_64 output is fully specified by the
// standard; doubles are derived from raw bits rather than
// uniform_real_distribution so that streams are identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Uniform in {0, ..., n-1}. Modulo bias is irrelevant for probe plans.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  int uniform_int(int lo, int hi) {  // inclusive ends
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qam
