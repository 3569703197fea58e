#pragma once

#include <cstdint>
#include <string_view>

namespace ppdm {

// Deterministic splittable RNG. Every consumer derives its own stream from a
// single 64-bit seed plus a label, so results are identical across platforms
// and independent of evaluation order. Uniform/normal generation is done by
// hand (bit shift + Box-Muller) because the standard distributions are
// implementation-defined.
class rng {
 public:
  explicit rng(std::uint64_t seed) : state_(seed) {}

  // Independent child stream; label keeps unrelated consumers decorrelated.
  rng fork(std::string_view label) const;

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();                        // standard normal
  int uniform_int(int lo, int hi);        // inclusive range
  bool coin() { return (next_u64() >> 63) != 0; }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ppdm
