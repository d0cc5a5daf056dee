#ifndef PEG_TEXT_FORMATS_HPP
#define PEG_TEXT_FORMATS_HPP

#include <string>
#include <vector>

#include "peg/escape_room.hpp"
#include "peg/irl.hpp"
#include "peg/lattice.hpp"
#include "peg/model.hpp"
#include "peg/ordering.hpp"

namespace peg {

// Line-oriented model text:
//   predicates: p q ...
//   init: p ...
//   goal: q ...
//   action NAME
//     pre: ... / soft: ... / add: ... / del: ... / cost: 1
// Blank lines and lines starting with '#' are ignored.
Model parse_model(const std::string& text);
std::string emit_model(const Model& model);

// Scenario text: the character grid, then `dangerous: A B`, then `id: x`.
Scenario parse_scenario(const std::string& text);
std::string emit_scenario(const Scenario& scenario);

// One trace per line: `scenario-id: A C B`. An optional leading
// `# provenance: synthetic` header applies to the whole file.
std::vector<Trace> parse_traces(const std::string& text);
std::string emit_traces(const std::vector<Trace>& traces);

// Header lines (seed, iterations, converged, scenarios) followed by one
// `name <tab> raw <tab> normalized` line per feature.
WeightVector parse_weights(const std::string& text);
std::string emit_weights(const WeightVector& weights);

// Ordered steps with per-step reward and action distance, plus totals.
struct OrderingRecord {
    std::string scenario_id;
    std::string method;
    std::string lattice_set;  // delta | mce | marked
    std::uint64_t seed = 0;
    std::vector<std::string> steps;
    std::vector<double> rewards;
    std::vector<double> action_distances;
    double total_reward = 0.0;
    double total_action_distance = 0.0;

    bool operator==(const OrderingRecord&) const = default;
};

OrderingRecord parse_ordering(const std::string& text);
std::string emit_ordering(const OrderingRecord& record);

std::string read_file(const std::string& path);
// Write-then-rename so partially written artifacts are never observed.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace peg

#endif
