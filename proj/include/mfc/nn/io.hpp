#pragma once

#include <istream>
#include <ostream>

#include "mfc/nn/mlp.hpp"

namespace mfc::nn {

// Text serialization. Layer sizes as integers, then every parameter as a
// hexadecimal float (W0 row-major, b0, W1, b1, ...), so values round-trip
// bit-exactly:
//
//   mlp
//   layer_sizes <count> <s0> <s1> ...
//   params <n>
//   <v0> <v1> ... <v_{n-1}>
//   end
void save_mlp(std::ostream& out, const Mlp& net);

// Throws std::runtime_error with a format diagnostic on any mismatch.
Mlp load_mlp(std::istream& in);

}  // namespace mfc::nn
