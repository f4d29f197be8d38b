#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace mfc::sim {

// Named pseudo-random stream. Two streams derived from the same master seed
// but different names are independent; the same (master_seed, name) pair
// always replays the same sequence. Variate generation is implemented here
// (not via std:: distributions) so sequences are identical across standard
// library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view name);

  const std::string& name() const { return name_; }

  // Uniform real in [0, 1).
  double uniform();

  // Uniform real in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [0, n). Requires n > 0.
  int uniform_int(int n);

  // Exponential variate with the given rate (mean 1/rate). rate > 0.
  double exponential(double rate);

 private:
  std::string name_;
  std::mt19937_64 gen_;
};

// Stable 64-bit stream-seed derivation from (master_seed, name).
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view name);

}  // namespace mfc::sim
