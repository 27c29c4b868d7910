#ifndef CONFLOER_JSON_IO_HPP
#define CONFLOER_JSON_IO_HPP

#include <json.hpp>

#include "confloer/conley.hpp"
#include "confloer/flow.hpp"
#include "confloer/floer_catalog.hpp"
#include "confloer/lattice.hpp"
#include "confloer/module_homology.hpp"
#include "confloer/morse.hpp"

namespace confloer::io {

using json = nlohmann::ordered_json;

/// Strict by default: unknown fields are rejected (InvalidInput) unless
/// allow_unknown is set, in which case they are ignored.
struct ParseOptions {
    bool allow_unknown = false;
};

FlowSpec parse_flow(const json& j, const ParseOptions& opts = {}, int resolution_override = 0);
MorseData parse_morse(const json& j, const ParseOptions& opts = {});
EquivariantComplex parse_complex(const json& j, const ParseOptions& opts = {});
IntersectionForm parse_form(const json& j, const ParseOptions& opts = {});
GradedHomology parse_homology(const json& j, const ParseOptions& opts = {});
GroupAction parse_action(const json& j, int dimension, const ParseOptions& opts = {});

json to_json(const GradedHomology& h);
json to_json(const EquivariantComplex& c);
json to_json(const InvariantReport& r);
json to_json(const TateReport& r);
json to_json(const IndexPairReport& r);
json to_json(const NonSplittingCertificate& cert);
json to_json(const FloerComparisonReport& r);
json to_json(const DSquaredReport& r);
json to_json(const FroyshovCheck& r);
json to_json(const FurutaCheck& r);
json to_json(const SmithCheck& r);
json to_json(const ContinuationReport& r);

/// Homology of a module-homology window, restricted to a display range
/// (reported gradings).
json homology_table(const HomologyModule& h, int display_lo, int display_hi);

json error_to_json(const Error& e);

/// Cell set as coordinate boxes, for external plotting.
json cells_to_json(const GridGeometry& grid, const CellSet& cells);

} // namespace confloer::io

#endif
