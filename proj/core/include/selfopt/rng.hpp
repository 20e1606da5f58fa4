#pragma once

#include <cmath>
#include <cstdint>

namespace selfopt {

// All randomness in the system is derived from a single master seed through
// keyed substreams: substream(root, purpose, a, b, c) yields an independent
// 64-bit seed for every (purpose, counter...) tuple. Streams are never shared
// between workers; any component that needs randomness derives its own stream
// from the seed it was handed. This is what makes runs reproducible under
// concurrency and across checkpoint/resume.

enum class Stream : uint64_t {
  kTaskPayload = 1,
  kInitParams,
  kBatch,
  kGradNoise,
  kNormInit,
  kNormInitBatch,
  kNormOracle,
  kThetaInit,
  kAssignInit,
  kTruncInit,
  kMemberSeed,
  kPoolTask,
  kPoolRun,
  kEsPerturb,
  kEsPair,
  kEvalScore,
  kEvalTask,
  kFamilyPick,
  kTaskSeed,
  kTrainSeed,
  kTournamentDraw,
};

// splitmix64 finalizer
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t substream(uint64_t root, Stream purpose, uint64_t a = 0, uint64_t b = 0,
                          uint64_t c = 0) {
  uint64_t h = mix64(root ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(purpose)));
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  return h;
}

// Sequential splitmix64 generator. The standard library distributions are not
// pinned across implementations, so uniform/normal sampling is spelled out here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), n >= 1
  uint64_t below(uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(u64()) * n) >> 64);
  }

  // standard normal via Box-Muller (second value discarded to keep draws stateless)
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // log-uniform in [lo, hi], lo > 0
  double log_uniform(double lo, double hi) {
    return std::exp(std::log(lo) + uniform() * (std::log(hi) - std::log(lo)));
  }

 private:
  uint64_t state_;
};

}  // namespace selfopt
