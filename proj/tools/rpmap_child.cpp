// Reference child for the external-map wire protocol: one JSON request line
// in, one JSON response line out.  The misbehaving modes exist so the harness
// error paths can be exercised end to end.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rpmap/json_io.hpp"

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string word;
  for (const char c : text) {
    if (c == sep) {
      if (!word.empty()) parts.push_back(word);
      word.clear();
    } else {
      word.push_back(c);
    }
  }
  if (!word.empty()) parts.push_back(word);
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"external map reference child"};
  std::string mode = "compose";
  std::string x_labels = "a,b";
  std::string y_labels = "p";
  std::string symbol_text;
  std::size_t dim = 1;
  app.add_option("--mode", mode, "compose | constant | wrongdim | random | garbage | slow");
  app.add_option("--x", x_labels, "comma-separated X labels");
  app.add_option("--y", y_labels, "comma-separated Y labels");
  app.add_option("--dim", dim, "model dimension");
  app.add_option("--symbol", symbol_text, "comma-separated y=x pairs");
  CLI11_PARSE(app, argc, argv);

  rpmap::FiniteSpace x{split(x_labels, ','), std::nullopt};
  rpmap::FiniteSpace y{split(y_labels, ','), std::nullopt};
  rpmap::VectorSpaceModel model{dim, {rpmap::Seminorm::identity(dim)}};

  std::vector<std::size_t> table(y.size(), 0);
  for (const auto& pair : split(symbol_text, ',')) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) continue;
    table[y.index_of(pair.substr(0, eq))] = x.index_of(pair.substr(eq + 1));
  }

  std::mt19937_64 noise(std::random_device{}());
  std::string line;
  while (std::getline(std::cin, line)) {
    if (mode == "garbage") {
      std::cout << "this is not json\n" << std::flush;
      continue;
    }
    if (mode == "slow") {
      std::this_thread::sleep_for(std::chrono::seconds(60));
    }
    rpmap::VectorFunction f{x, model, {}};
    try {
      f = rpmap::jsonio::decode_vector_function(rpmap::jsonio::json::parse(line), x, model);
    } catch (const std::exception& e) {
      std::cerr << "child decode error: " << e.what() << "\n";
      return 1;
    }

    const std::size_t out_dim = (mode == "wrongdim") ? dim + 1 : dim;
    rpmap::VectorFunction out{y, rpmap::VectorSpaceModel{out_dim, {rpmap::Seminorm::identity(out_dim)}}, {}};
    for (std::size_t i = 0; i < y.size(); ++i) {
      rpmap::ComplexVector v(out_dim);
      if (mode != "constant") {
        for (std::size_t k = 0; k < dim && k < out_dim; ++k) v[k] = f.values[table[i]][k];
      }
      if (mode == "random") {
        std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
        v[0] += rpmap::Complex{jitter(noise), 0.0};
      }
      out.values.push_back(v);
    }
    std::cout << rpmap::jsonio::encode_vector_function(out).dump() << "\n" << std::flush;
  }
  return 0;
}
