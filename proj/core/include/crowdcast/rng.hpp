// Seeded random source with named substreams. Every stochastic component of
// the pipeline (generation, fold assignment, parameter init, dropout, ...)
// draws from its own substream of one master seed, so components stay
// reproducible independently of each other.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace crowdcast {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Child generator whose sequence is a pure function of (seed, name).
  Rng substream(std::string_view name) const;

  std::uint64_t seed() const { return seed_; }

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  int uniform_int(int lo, int hi);        // inclusive bounds
  double normal(double mean = 0.0, double stddev = 1.0);
  int poisson(double mean);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace crowdcast
