#include "options.hpp"

#include <sstream>

namespace kslab::cli {

namespace {

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
void read(const Json& c, const char* key, std::optional<T>& target) {
  if (!c.contains(key) || c[key].is_null()) return;
  try {
    target = c[key].get<T>();
  } catch (const std::exception&) {
    throw ContractViolation(std::string("malformed config at /config/") + key);
  }
}

template <typename T>
void read(const Json& c, const char* key, T& target) {
  std::optional<T> v;
  read(c, key, v);
  if (v) target = *v;
}

}  // namespace

Json config_to_json(const Options& o) {
  Json c;
  c["seed"] = o.seed;
  c["tol"] = o.tol;
  c["threads"] = o.threads;
  c["mode"] = o.mode;
  c["r_max"] = opt(o.r_max);
  c["epsilon"] = opt(o.epsilon);
  c["delta"] = opt(o.delta);
  c["S"] = opt(o.S);
  c["K"] = opt(o.K);
  c["grid"] = opt(o.grid);
  c["budget"] = opt(o.budget);
  c["bound"] = opt(o.bound);
  c["samples"] = opt(o.samples);
  c["trials"] = o.trials;
  c["normalize"] = o.normalize;
  c["k_list"] = o.k_list;
  c["blocks"] = o.blocks;
  c["levels"] = opt(o.levels);
  c["max_freq"] = opt(o.max_freq);
  c["stride"] = opt(o.stride);
  c["count"] = opt(o.count);
  c["A"] = opt(o.A);
  c["B"] = opt(o.B);
  c["gamma"] = opt(o.gamma);
  c["lambda"] = opt(o.lambda);
  c["mu"] = opt(o.mu);
  c["T"] = opt(o.T);
  return c;
}

Options options_from_config(const std::string& command, const Json& c) {
  if (!c.is_object()) throw ContractViolation("report has no config object");
  if (!c.contains("seed") || !c["seed"].is_number_unsigned()) throw ContractViolation("report config has no seed");
  Options o;
  o.command = command;
  o.seed = c["seed"].get<std::uint64_t>();
  read(c, "tol", o.tol);
  read(c, "threads", o.threads);
  read(c, "mode", o.mode);
  read(c, "trials", o.trials);
  read(c, "normalize", o.normalize);
  read(c, "k_list", o.k_list);
  read(c, "blocks", o.blocks);
  read(c, "r_max", o.r_max);
  read(c, "epsilon", o.epsilon);
  read(c, "delta", o.delta);
  read(c, "S", o.S);
  read(c, "K", o.K);
  read(c, "grid", o.grid);
  read(c, "budget", o.budget);
  read(c, "bound", o.bound);
  read(c, "samples", o.samples);
  read(c, "levels", o.levels);
  read(c, "max_freq", o.max_freq);
  read(c, "stride", o.stride);
  read(c, "count", o.count);
  read(c, "A", o.A);
  read(c, "B", o.B);
  read(c, "gamma", o.gamma);
  read(c, "lambda", o.lambda);
  read(c, "mu", o.mu);
  read(c, "T", o.T);
  return o;
}

Tolerances tolerances(const Options& o) {
  Tolerances t;
  t.check_tol = o.tol;
  t.validate();
  return t;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ContractViolation(what + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

std::vector<IndexSet> parse_blocks(const std::string& s) {
  std::vector<IndexSet> out;
  std::stringstream ss(s);
  std::string block;
  while (std::getline(ss, block, ';')) out.push_back(parse_int_list(block, "--blocks"));
  return out;
}

}  // namespace kslab::cli
