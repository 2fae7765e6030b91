#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace jumpsift {

/// Random source for all simulation code.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The variate transforms (uniform, normal, exponential, gamma) are
/// implemented here rather than through <random> distributions, whose
/// algorithms are implementation-defined, so that a seed yields the same
/// path on every conforming toolchain.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via the Marsaglia polar method (pairs are cached).
  double normal();

  /// Exponential with the given rate (> 0).
  double exponential(double rate);

  /// Gamma(shape, scale) via Marsaglia-Tsang; shapes below one use the
  /// U^(1/shape) boost. Draws that underflow double are returned as the
  /// smallest positive subnormal.
  double gamma(double shape, double scale);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// SplitMix64 finalizer (Steele, Lea and Flood).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-path seed: base_seed XOR splitmix64(path_index). A path's stream
/// depends only on (base_seed, index), never on which worker runs it. The
/// index is mixed first so that nearby base seeds do not share paths
/// (with a plain XOR, base 42 and base 7 would simulate the same set).
constexpr std::uint64_t path_seed(std::uint64_t base_seed, std::uint64_t path_index) {
  return base_seed ^ splitmix64(path_index);
}

/// Gamma draw with validated parameters; throws InvalidArgument on shape or
/// scale <= 0 and NumericError if the result is not finite.
double sample_gamma_increment(double shape, double scale, Rng& rng);

}  // namespace jumpsift
