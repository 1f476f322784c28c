#include "frailhaz/rng.hpp"

#include <cmath>

#include "frailhaz/errors.hpp"

namespace frailhaz {

namespace {

constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;  // golden-ratio step

// SplitMix64 finalizer (Stafford mix 13): a bijective 64-bit mixer with full
// avalanche, strong enough that hash-derived child streams are statistically
// independent of the parent and of each other.
std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

std::uint64_t derive(std::uint64_t state, std::uint64_t tag) {
  // Offsetting the tag by a odd constant separates tag=0 from "no tag".
  return mix(state ^ (kWeyl * (tag + 0x632BE59BD9B4E019ull)));
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = mix(seed + kWeyl);
  for (std::uint64_t tag : tags) s = derive(s, tag);
  return Rng(s);
}

Rng Rng::split(std::uint64_t tag) const { return Rng(derive(state_, tag)); }

std::uint64_t Rng::next_u64() {
  state_ += kWeyl;
  return mix(state_);
}

double Rng::uniform01() {
  // 53-bit mantissa; +1 shifts the lattice off zero so the value lies in
  // (0, 1] and log() of it is always finite.
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

double Rng::exponential() { return -std::log(uniform01()); }

double Rng::gamma(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, ErrorKind::Validation,
          "gamma draw requires positive shape and scale");
  if (shape < 1.0) {
    // G(a) = G(a+1) * U^(1/a) lifts the shape into Marsaglia–Tsang's domain.
    const double boost = std::pow(uniform01(), 1.0 / shape);
    return gamma(shape + 1.0, scale) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

}  // namespace frailhaz
