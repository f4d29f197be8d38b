#include "mfc/sim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mfc::sim {

namespace {

// splitmix64 finalizer; decorrelates seeds that differ in few bits.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::string_view name) {
  // FNV-1a over the stream name, then folded with the master seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h ^ mix64(master_seed));
}

RngStream::RngStream(std::uint64_t master_seed, std::string_view name)
    : name_(name), gen_(derive_stream_seed(master_seed, name)) {}

double RngStream::uniform() {
  // Top 53 bits of the 64-bit draw, scaled to [0, 1).
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int RngStream::uniform_int(int n) {
  if (n <= 0) throw std::logic_error("uniform_int: n must be positive");
  // Rejection sampling over the top bits keeps the result unbiased.
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t draw;
  do {
    draw = gen_();
  } while (draw >= limit);
  return static_cast<int>(draw % un);
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) throw std::logic_error("exponential: rate must be positive");
  // Inverse CDF on 1-u (u in [0,1)) so the log argument is never zero.
  return -std::log(1.0 - uniform()) / rate;
}

}  // namespace mfc::sim
