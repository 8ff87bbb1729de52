#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "kslab/cli.hpp"
#include "options.hpp"

namespace kslab {

namespace {

using cli::Options;

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"gen", "generate a frame, matrix or grid function"},
    {"analyze", "frame bounds and spectral summary"},
    {"dilate", "Naimark dilation of a Parseval frame, or dilation of an operator"},
    {"pave", "paving search for T - D(T), or a projection with --mode projection"},
    {"weaver", "partition a frame into blocks with smaller Bessel bound"},
    {"decompose", "Riesz-sequence partitions (--mode riesz|feichtinger|tp1)"},
    {"ric", "restricted isometry constant"},
    {"radohorn", "partition into linearly independent sets"},
    {"subspace", "large-subspace and decomposability checks"},
    {"toeplitz", "translate averages, uniform criteria and Toeplitz sections on a grid"},
    {"kadec", "perturbation bounds for exponential Riesz bases"},
    {"mv-theta", "Montgomery-Vaughan constant for an exponential sum"},
    {"erasure", "erasure robustness and bipartition searches (--mode robustness|cc|ccc)"},
    {"phase", "phase-retrieval injectivity of a real frame"},
    {"verify", "recompute the certificates of a report"},
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& params) {
  std::map<std::string, std::string> out;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw ContractViolation("gen: expected key=value, got '" + p + "'");
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

int param_int(const std::map<std::string, std::string>& m, const std::string& key) {
  const auto it = m.find(key);
  if (it == m.end()) throw ContractViolation("gen: missing parameter " + key + "=...");
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ContractViolation("gen: parameter " + key + " must be an integer");
  }
}

double param_double(const std::map<std::string, std::string>& m, const std::string& key, double fallback) {
  const auto it = m.find(key);
  if (it == m.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ContractViolation("gen: parameter " + key + " must be a number");
  }
}

Json generate(const std::string& kind, const std::vector<std::string>& params, std::uint64_t seed) {
  const auto m = parse_params(params);
  Field field = Field::complex;
  if (auto it = m.find("field"); it != m.end()) field = field_from_string(it->second);
  if (kind == "harmonic") return frame_to_json(gen_harmonic_frame(param_int(m, "n"), param_int(m, "M")));
  if (kind == "random-unit") return frame_to_json(gen_random_unit_frame(param_int(m, "n"), param_int(m, "M"), seed, field));
  if (kind == "union") {
    return frame_to_json(gen_perturbed_union_of_bases(param_int(m, "n"), param_int(m, "K"),
                                                      param_double(m, "noise", 0.0), seed, field));
  }
  if (kind == "orthonormal") {
    const int n = param_int(m, "n");
    return frame_to_json(Frame(Matrix::Identity(n, n), Field::real, "orthonormal"));
  }
  if (kind == "projection") return matrix_to_json(gen_random_projection(param_int(m, "M"), param_int(m, "n"), seed, field), field);
  if (kind == "hermitian") return matrix_to_json(gen_random_hermitian(param_int(m, "n"), seed, field), field);
  if (kind == "unitary") return matrix_to_json(gen_random_unitary(param_int(m, "n"), seed, field), field);
  if (kind == "e1") {
    const E1Set e = example_e1_set(param_int(m, "N"), param_int(m, "levels"));
    const auto which = m.count("which") ? m.at("which") : std::string("set");
    if (which != "set" && which != "symbol") throw ContractViolation("gen: which must be set or symbol");
    Json j = grid_to_json(which == "set" ? e.set_indicator : e.symbol);
    j["label"] = which == "set" ? "e1-set" : "e1-complement";
    j["measure"] = e.measure;
    j["target_measure"] = e.target_measure;
    return j;
  }
  if (kind == "trig") return grid_to_json(random_trig_polynomial(param_int(m, "N"), param_int(m, "degree"), seed));
  throw ContractViolation("gen: choose one of --harmonic, --random-unit, --union, --orthonormal, --projection, "
                          "--hermitian, --unitary, --e1, --trig");
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ContractViolation("cannot write " + path);
  f << text;
}

}  // namespace

Json report_payload(const Json& report) {
  Json p = report;
  p.erase("meta");
  return p;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kslab: finite-dimensional frame, paving and Riesz-sequence experiments", "kslab"};
  app.require_subcommand(1);
  Options o;
  std::string gen_kind;
  std::vector<std::string> gen_params;

  app.add_option("--input", o.input, "input JSON file");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--seed", o.seed, "random seed (recorded in every report)");
  app.add_option("--tol", o.tol, "comparison tolerance");
  app.add_option("--threads", o.threads, "worker threads for exhaustive searches");
  app.add_option("--trials", o.trials, "phase: randomized cross-validation trials");
  app.add_flag("--normalize", o.normalize, "dilate: scale the operator to norm one");
  app.add_option("--mode", o.mode, "command-specific mode");
  app.add_option("--k-list", o.k_list, "toeplitz: comma-separated K values");
  app.add_option("--blocks", o.blocks, "subspace: partition as 0,1;2,3");
  auto opt_int = [&](const char* name, std::optional<int>& target, const char* help) {
    app.add_option_function<int>(name, [&target](const int& v) { target = v; }, help);
  };
  auto opt_double = [&](const char* name, std::optional<double>& target, const char* help) {
    app.add_option_function<double>(name, [&target](const double& v) { target = v; }, help);
  };
  auto opt_u64 = [&](const char* name, std::optional<std::uint64_t>& target, const char* help) {
    app.add_option_function<std::uint64_t>(name, [&target](const std::uint64_t& v) { target = v; }, help);
  };
  opt_int("--r-max", o.r_max, "maximum number of blocks");
  opt_double("--epsilon", o.epsilon, "epsilon");
  opt_double("--delta", o.delta, "delta");
  opt_int("--S", o.S, "support size");
  opt_int("--K", o.K, "erasure count, or a single K for toeplitz");
  opt_int("--grid", o.grid, "grid size N (toeplitz), truncation N (kadec), quadrature N (mv-theta)");
  opt_u64("--budget", o.budget, "enumeration budget");
  opt_double("--bound", o.bound, "weaver: B; decompose feichtinger: target; subspace: A");
  opt_u64("--samples", o.samples, "ric: sampled lower-bound mode");
  opt_int("--levels", o.levels, "toeplitz: generate the E1 set with this many levels");
  opt_int("--max-freq", o.max_freq, "toeplitz: frequencies -F..F for the distribution check");
  opt_int("--stride", o.stride, "toeplitz: arithmetic-progression stride");
  opt_int("--count", o.count, "mv-theta: number of frequencies; erasure: histogram bins");
  opt_double("--A", o.A, "lower frame bound");
  opt_double("--B", o.B, "upper frame bound");
  opt_double("--gamma", o.gamma, "kadec: gamma");
  opt_double("--lambda", o.lambda, "christensen: lambda");
  opt_double("--mu", o.mu, "christensen: mu");
  opt_double("--T", o.T, "mv-theta: interval length");

  for (const auto& [name, help] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    if (name == "gen") {
      for (const char* k : {"harmonic", "random-unit", "union", "orthonormal", "projection", "hermitian", "unitary", "e1",
                            "trig"}) {
        sub->add_flag_callback(std::string("--") + k, [&gen_kind, k] { gen_kind = k; });
      }
      sub->add_option("params", gen_params, "key=value parameters");
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    if (o.command == "gen") {
      emit(generate(gen_kind, gen_params, o.seed), o.out, out);
      return 0;
    }
    if (o.command == "verify") {
      if (o.input.empty()) throw ContractViolation("verify: --input is required");
      const VerifyOutcome v = verify_report(read_json_file(o.input));
      Json j;
      j["verified"] = v.ok;
      j["reasons"] = v.reasons;
      emit(j, o.out, out);
      return 0;
    }
    const auto start = std::chrono::steady_clock::now();
    Json input = o.input.empty() ? Json(nullptr) : read_json_file(o.input);
    Json result = cli::execute(o, input);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json report;
    report["kslab_report"] = 1;
    report["command"] = o.command;
    report["config"] = cli::config_to_json(o);
    report["input"] = std::move(input);
    report["result"] = std::move(result);
    report["meta"] = {{"version", kVersion}, {"wall_time", wall}};
    emit(report, o.out, out);
    return 0;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kslab
