#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace tsyb {

// Derives independent stream seeds from a master seed and a stream name.
// All experiment randomness flows from one top-level seed through these,
// so reruns with the same config are bit-identical.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream);
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                          std::uint64_t index);

// Deterministic generator. The standard distributions are
// implementation-defined, so the transforms live here: identical seeds
// give identical values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; one spare cached per pair.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 =
        (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Zero-mean Laplace with the given scale parameter b (variance 2 b^2).
  double laplace(double scale) {
    const double u = uniform01() - 0.5;
    const double mag = std::log(1.0 - 2.0 * std::abs(u));
    return (u < 0.0 ? scale * mag : -scale * mag);
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tsyb
