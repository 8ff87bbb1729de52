#include "kslab/io.hpp"

#include <fstream>
#include <sstream>

namespace kslab {

namespace {

Json complex_pair(const Scalar& z) { return Json::array({z.real(), z.imag()}); }

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
  throw ContractViolation("malformed input at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field_at(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) malformed(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) malformed(where + "/" + key, "missing field");
  return *it;
}

long long integer_at(const Json& j, const char* key, const std::string& where) {
  const Json& v = field_at(j, key, where);
  if (!v.is_number_integer()) malformed(where + "/" + key, "expected an integer");
  return v.get<long long>();
}

Scalar parse_complex(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    malformed(where, "expected [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json index_sets(const std::vector<IndexSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(s);
  return out;
}

}  // namespace

Json matrix_to_json(const Matrix& m, Field field) {
  Json j;
  j["type"] = "matrix";
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["field"] = to_string(field);
  Json entries = Json::array();
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r) entries.push_back(complex_pair(m(r, c)));
  j["entries"] = std::move(entries);
  return j;
}

Json frame_to_json(const Frame& fr) {
  Json j = matrix_to_json(fr.synthesis, fr.field);
  j["type"] = "frame";
  if (!fr.label.empty()) j["label"] = fr.label;
  if (fr.seed) j["seed"] = *fr.seed;
  return j;
}

Json grid_to_json(const GridFunction& g) {
  Json j;
  j["type"] = "grid";
  j["N"] = g.N();
  Json values = Json::array();
  for (const auto& z : g.values) values.push_back(complex_pair(z));
  j["values"] = std::move(values);
  return j;
}

Matrix matrix_from_json(const Json& j, Field* field) {
  const long long rows = integer_at(j, "rows", "");
  const long long cols = integer_at(j, "cols", "");
  if (rows < 0 || cols < 0) malformed("/rows", "dimensions must be nonnegative");
  Field f = Field::complex;
  if (j.contains("field")) {
    if (!j["field"].is_string()) malformed("/field", "expected \"real\" or \"complex\"");
    try {
      f = field_from_string(j["field"].get<std::string>());
    } catch (const std::exception& e) {
      malformed("/field", e.what());
    }
  }
  const Json& entries = field_at(j, "entries", "");
  if (!entries.is_array() || static_cast<long long>(entries.size()) != rows * cols) {
    malformed("/entries", "expected rows * cols = " + std::to_string(rows * cols) + " entries");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r, ++k) m(r, c) = parse_complex(entries[k], "/entries/" + std::to_string(k));
  if (f == Field::real && m.imag().size() > 0 && m.imag().cwiseAbs().maxCoeff() != 0.0) {
    malformed("/entries", "field is real but an entry has a nonzero imaginary part");
  }
  if (field) *field = f;
  return m;
}

Frame frame_from_json(const Json& j) {
  Field f = Field::complex;
  Matrix m = matrix_from_json(j, &f);
  std::string label;
  if (j.contains("label") && j["label"].is_string()) label = j["label"].get<std::string>();
  Frame fr(std::move(m), f, label);
  if (j.contains("seed") && j["seed"].is_number_unsigned()) fr.seed = j["seed"].get<std::uint64_t>();
  return fr;
}

GridFunction grid_from_json(const Json& j) {
  const long long N = integer_at(j, "N", "");
  const Json& values = field_at(j, "values", "");
  if (!values.is_array() || static_cast<long long>(values.size()) != N || N < 1) {
    malformed("/values", "expected N >= 1 values");
  }
  std::vector<Scalar> v;
  v.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) v.push_back(parse_complex(values[k], "/values/" + std::to_string(k)));
  return GridFunction(std::move(v));
}

IndexSet index_set_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) malformed(where, "expected an array of indices");
  IndexSet out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number_integer()) malformed(where + "/" + std::to_string(k), "expected an integer index");
    out.push_back(j[k].get<int>());
  }
  return out;
}

Partition partition_from_json(const Json& j, std::size_t size) {
  const Json& blocks = field_at(j, "blocks", "/partition");
  if (!blocks.is_array()) malformed("/partition/blocks", "expected an array of blocks");
  std::vector<IndexSet> sets;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    sets.push_back(index_set_from_json(blocks[b], "/partition/blocks/" + std::to_string(b)));
  return Partition::from_blocks(size, sets);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ContractViolation("malformed JSON in " + path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

Json to_json(const Partition& p) {
  Json j;
  j["blocks"] = index_sets(p.nonempty_members());
  return j;
}

Json to_json(const SpectralSummary& s) {
  Json j;
  j["lower_frame_bound"] = s.lower_frame_bound;
  j["upper_frame_bound"] = s.upper_frame_bound;
  j["bessel_bound"] = s.bessel_bound;
  j["riesz_lower"] = optional_json(s.riesz_lower);
  j["riesz_upper"] = optional_json(s.riesz_upper);
  j["trace_S"] = s.trace_S;
  j["rank"] = s.rank;
  j["spans"] = s.spans;
  j["is_parseval"] = s.is_parseval;
  j["is_tight"] = s.is_tight;
  j["is_equal_norm"] = s.is_equal_norm;
  return j;
}

Json to_json(const DilationResult& d) {
  Json j;
  j["ambient_dim"] = d.ambient_dim;
  j["projection"] = matrix_to_json(d.projection, Field::complex);
  j["embedding"] = matrix_to_json(d.embedding, Field::complex);
  j["added_vectors"] = d.added_vectors.size();
  j["strict_contraction"] = d.strict_contraction;
  j["normalized"] = d.normalized;
  j["input_norm"] = d.input_norm;
  j["parseval_deviation"] = d.parseval_deviation;
  j["notes"] = d.notes;
  return j;
}

Json to_json(const PavingReport& r) {
  Json j;
  j["form"] = to_string(r.form);
  j["partition"] = to_json(r.partition);
  j["achieved"] = r.achieved;
  j["blocks_detail"] = r.blocks_detail;
  j["epsilon"] = r.epsilon;
  j["reference_norm"] = r.reference_norm;
  j["bound"] = r.bound;
  j["verdict"] = r.verdict;
  j["exhaustive"] = r.exhaustive;
  j["evaluated"] = r.evaluated;
  j["seed"] = optional_json(r.seed);
  j["sweeps_used"] = r.sweeps_used;
  j["precondition_ok"] = r.precondition_ok;
  j["delta_diag"] = optional_json(r.delta_diag);
  j["identity_residual"] = optional_json(r.identity_residual);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const WkhbResult& r) {
  Json j;
  Json blocks = Json::array();
  for (const auto& b : r.partition.members()) blocks.push_back(b);
  j["blocks"] = std::move(blocks);
  j["moves"] = r.moves;
  j["initial_potential"] = r.initial_potential;
  j["final_potential"] = r.final_potential;
  j["smallest_decrement"] = r.smallest_decrement;
  j["certificate_holds"] = r.certificate_holds;
  return j;
}

Json to_json(const RieszCertificate& c) {
  Json j;
  j["block"] = c.block;
  j["lower"] = c.lower;
  j["upper"] = c.upper;
  j["epsilon_achieved"] = c.epsilon_achieved;
  return j;
}

Json to_json(const DecompositionReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["parameter"] = r.parameter;
  j["r_max"] = r.r_max;
  j["verdict"] = r.verdict;
  j["partition"] = r.partition ? to_json(*r.partition) : Json(nullptr);
  j["r_found"] = r.r_found;
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  j["certificates"] = std::move(certs);
  j["exhaustive"] = r.exhaustive;
  j["nodes"] = r.nodes;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const RicResult& r) {
  Json j;
  j["S"] = r.S;
  j["delta"] = r.delta;
  j["witness"] = r.witness;
  j["subsets"] = r.subsets;
  j["exact"] = r.exact;
  if (!r.exact) j["notes"] = Json::array({"sampled lower bound only"});
  return j;
}

Json to_json(const Tp1Report& r) {
  Json j;
  j["S"] = r.S;
  j["delta"] = r.delta;
  j["bessel_bound"] = r.bessel_bound;
  j["k"] = r.k;
  j["mass_threshold"] = r.mass_threshold;
  j["r_tried"] = r.r_tried;
  j["r_used"] = r.r_used;
  j["partition"] = to_json(r.partition);
  j["mass_condition"] = r.mass_condition;
  j["verified"] = r.verified;
  j["block_delta"] = r.block_delta;
  j["counterexample_block"] = optional_json(r.counterexample_block);
  j["seed"] = r.seed;
  return j;
}

Json to_json(const RadoHornCheck& r) {
  Json j;
  j["holds"] = r.holds;
  j["violator"] = optional_json(r.violator);
  j["subsets"] = r.subsets;
  return j;
}

Json to_json(const ErasureReport& r) {
  Json j;
  j["k"] = r.k;
  j["worst_subset"] = r.worst_subset;
  j["worst_lower_bound"] = r.worst_lower_bound;
  j["subsets"] = r.subsets;
  j["parseval"] = r.parseval;
  j["complement_residual"] = optional_json(r.complement_residual);
  j["complement_holds"] = r.complement_holds;
  if (r.distribution) {
    j["distribution"] = {{"lo", r.distribution->lo}, {"hi", r.distribution->hi}, {"counts", r.distribution->counts}};
  } else {
    j["distribution"] = nullptr;
  }
  j["notes"] = r.notes;
  return j;
}

Json to_json(const BipartitionReport& r) {
  Json j;
  j["epsilon"] = r.epsilon;
  j["best"] = r.best;
  j["witness"] = r.witness;
  j["verdict"] = r.verdict;
  j["evaluated"] = r.evaluated;
  j["parseval"] = r.parseval;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const CccReport& r) {
  Json j;
  j["epsilon"] = r.epsilon;
  j["r_max"] = r.r_max;
  j["partition"] = to_json(r.partition);
  j["block_bounds"] = r.block_bounds;
  j["achieved"] = r.achieved;
  j["verdict"] = r.verdict;
  j["cross_residual"] = r.cross_residual;
  j["exhaustive"] = r.exhaustive;
  j["evaluated"] = r.evaluated;
  j["seed"] = optional_json(r.seed);
  j["parseval"] = r.parseval;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const PhaseReport& r) {
  Json j;
  j["injective"] = r.injective;
  if (r.violation) {
    j["violation"] = Json::array({r.violation->first, r.violation->second});
  } else {
    j["violation"] = nullptr;
  }
  j["bipartitions"] = r.bipartitions;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["cross_validation_ok"] = r.cross_validation_ok;
  j["counterexample"] = optional_json(r.counterexample);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const UniformCriterion& c) {
  Json j;
  j["K"] = c.K;
  j["holds"] = c.holds;
  j["value"] = c.value;
  return j;
}

Json to_json(const DistributionReport& r) {
  Json j;
  j["verdict"] = r.verdict;
  j["measure"] = r.measure;
  j["epsilon"] = r.epsilon;
  j["block_min"] = r.block_min;
  j["block_max"] = r.block_max;
  j["worst_block"] = optional_json(r.worst_block);
  j["worst_eigenvalue"] = r.worst_eigenvalue;
  j["worst_relative_deviation"] = r.worst_relative_deviation;
  j["notes"] = r.notes;
  return j;
}

Json to_json(const MvResult& r) {
  Json j;
  j["theta"] = r.theta;
  j["integral"] = r.integral;
  j["integral_coarse"] = r.integral_coarse;
  j["quadrature_error"] = r.quadrature_error;
  j["separation"] = r.separation;
  j["coefficient_mass"] = r.coefficient_mass;
  j["quad_N"] = r.quad_N;
  return j;
}

Json to_json(const PerturbationBounds& b) {
  Json j;
  j["L"] = b.L;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["valid"] = b.valid;
  return j;
}

Json to_json(const KadecCheck& k) {
  Json j;
  j["N"] = k.N;
  j["delta"] = k.delta;
  j["lambda_min"] = k.lambda_min;
  j["lambda_max"] = k.lambda_max;
  j["predicted_lower"] = k.predicted_lower;
  j["edge_tolerance"] = k.edge_tolerance;
  j["passed"] = k.passed;
  return j;
}

}  // namespace kslab
