#pragma once

#include <cstdint>
#include <initializer_list>

namespace frailhaz {

// Splittable counter-style random number generator.
//
// The generator is SplitMix64: a 64-bit state advanced by a Weyl constant and
// passed through a strong finalizing mixer.  Child streams are derived by
// hashing (parent state, tag) pairs, so any work unit — a Monte-Carlo draw, a
// simulation replication, a cohort arm — can be given its own statistically
// independent stream keyed by its index.  Results are therefore a pure
// function of (seed, tags) and do not depend on how work is scheduled across
// threads.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  // Derives the stream for (seed, tags...) — e.g. {kStreamRep, rep_index}.
  static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

  // Child stream keyed by a tag; does not advance this generator.
  Rng split(std::uint64_t tag) const;

  std::uint64_t next_u64();

  // Uniform on the half-open interval (0, 1]: ((x >> 11) + 1) * 2^-53.
  // The +1 makes 0 unreachable, so -log(uniform01()) is always finite.
  double uniform01();

  // Standard normal via Box–Muller; the second variate of each pair is cached.
  double normal();

  // Exponential with rate 1.
  double exponential();

  // Gamma(shape, scale) by Marsaglia–Tsang squeeze; shape < 1 via the
  // Gamma(shape+1) boost  G(a) = G(a+1) * U^(1/a).
  double gamma(double shape, double scale);

 private:
  std::uint64_t state_;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// Purpose tags for stream derivation.  Fixed values are part of the
// reproducibility contract: a given (seed, purpose, index) always yields the
// same stream, independent of thread count or evaluation order.
enum StreamTag : std::uint64_t {
  kStreamCohortArm0 = 1,
  kStreamCohortArm1 = 2,
  kStreamTwins = 3,
  kStreamSurvey = 4,
  kStreamNumericCi = 5,
  kStreamRep = 6,
};

}  // namespace frailhaz
