#include "mfc/nn/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mfc::nn {

namespace {

void fail(const std::string& what) { throw std::runtime_error("mlp load: " + what); }

std::string next_token(std::istream& in, const char* context) {
  std::string tok;
  if (!(in >> tok)) fail(std::string("unexpected end of stream reading ") + context);
  return tok;
}

double next_value(std::istream& in) {
  std::string tok = next_token(in, "parameter value");
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) fail("bad parameter value '" + tok + "'");
  return v;
}

}  // namespace

void save_mlp(std::ostream& out, const Mlp& net) {
  out << "mlp\nlayer_sizes " << net.sizes().size();
  for (int s : net.sizes()) out << ' ' << s;
  Eigen::VectorXd flat = net.flatten();
  out << "\nparams " << flat.size() << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%a", flat[i]);
    out << buf << (i + 1 == flat.size() ? '\n' : ' ');
  }
  out << "end\n";
}

Mlp load_mlp(std::istream& in) {
  if (next_token(in, "header") != "mlp") fail("missing 'mlp' header");
  if (next_token(in, "layer_sizes") != "layer_sizes") fail("missing 'layer_sizes'");
  long count = 0;
  if (!(in >> count) || count < 2) fail("bad layer count");
  std::vector<int> sizes;
  for (long i = 0; i < count; ++i) {
    int s = 0;
    if (!(in >> s) || s < 1) fail("bad layer size");
    sizes.push_back(s);
  }
  Mlp net(sizes);
  if (next_token(in, "params") != "params") fail("missing 'params'");
  long n = 0;
  if (!(in >> n)) fail("bad parameter count");
  if (n != static_cast<long>(net.param_count()))
    fail("parameter count " + std::to_string(n) + " does not match layer sizes");
  Eigen::VectorXd flat(n);
  for (long i = 0; i < n; ++i) flat[i] = next_value(in);
  if (next_token(in, "trailer") != "end") fail("missing 'end' trailer");
  net.unflatten(flat);
  return net;
}

}  // namespace mfc::nn
