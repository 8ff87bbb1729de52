#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kslab/io.hpp"

namespace kslab::cli {

struct Options {
  std::string command;
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int threads = 1;
  std::uint64_t trials = 10'000;
  bool normalize = false;
  std::string mode;
  std::string k_list;
  std::string blocks;
  std::optional<int> r_max, S, K, grid, levels, max_freq, stride, count;
  std::optional<double> epsilon, delta, bound, A, B, gamma, lambda, mu, T;
  std::optional<std::uint64_t> budget, samples;
};

Json config_to_json(const Options& o);
/// Rebuilds options from a report config. Throws ContractViolation on a
/// missing seed or a malformed field.
Options options_from_config(const std::string& command, const Json& config);

Tolerances tolerances(const Options& o);
std::vector<int> parse_int_list(const std::string& s, const std::string& what);
/// "0,1;2,3" -> {{0,1},{2,3}}
std::vector<IndexSet> parse_blocks(const std::string& s);

/// Runs one analysis command on its (possibly null) input and returns the
/// report "result" object. `input` may be replaced, for generated inputs.
Json execute(const Options& o, Json& input);

}  // namespace kslab::cli
