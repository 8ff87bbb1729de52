#pragma once

#include <string>

#include "json.hpp"

#include "kslab/decomposition.hpp"
#include "kslab/dilation.hpp"
#include "kslab/erasures.hpp"
#include "kslab/frames.hpp"
#include "kslab/harmonic.hpp"
#include "kslab/paving.hpp"

namespace kslab {

using Json = nlohmann::ordered_json;

// Dense matrices: {"type":"matrix","rows","cols","field","entries":[[re,im],...]},
// entries column-major. Frames use the same layout with "type":"frame", the
// synthesis matrix as payload and optional "label" and "seed".
Json matrix_to_json(const Matrix& m, Field field);
Json frame_to_json(const Frame& fr);
Json grid_to_json(const GridFunction& g);  // {"type":"grid","N","values":[[re,im],...]}

/// Parse failures throw ContractViolation naming the JSON pointer of the
/// offending field.
Matrix matrix_from_json(const Json& j, Field* field = nullptr);
Frame frame_from_json(const Json& j);
GridFunction grid_from_json(const Json& j);
Partition partition_from_json(const Json& j, std::size_t size);  // {"blocks":[[...],...]}
IndexSet index_set_from_json(const Json& j, const std::string& where);

Json to_json(const Partition& p);  // {"blocks":[[...],...]} nonempty blocks only
Json to_json(const SpectralSummary& s);
Json to_json(const DilationResult& d);
Json to_json(const PavingReport& r);
Json to_json(const WkhbResult& r);
Json to_json(const RieszCertificate& c);
Json to_json(const DecompositionReport& r);
Json to_json(const RicResult& r);
Json to_json(const Tp1Report& r);
Json to_json(const RadoHornCheck& r);
Json to_json(const ErasureReport& r);
Json to_json(const BipartitionReport& r);
Json to_json(const CccReport& r);
Json to_json(const PhaseReport& r);
Json to_json(const UniformCriterion& c);
Json to_json(const DistributionReport& r);
Json to_json(const MvResult& r);
Json to_json(const PerturbationBounds& b);
Json to_json(const KadecCheck& k);

/// Reads and parses a JSON file; errors become ContractViolation.
Json read_json_file(const std::string& path);

}  // namespace kslab
