#ifndef PEG_ESCAPE_ROOM_HPP
#define PEG_ESCAPE_ROOM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "peg/irl.hpp"
#include "peg/lattice.hpp"
#include "peg/model.hpp"
#include "peg/reconciliation.hpp"

namespace peg {

// A grid maze with marked contingency cells. The human believes every
// non-wall cell is traversable; the robot knows which marked cells are
// actually dangerous.
struct Scenario {
    std::string id;
    std::vector<std::string> grid;  // rows of #, ., S, G and marker letters
    std::map<char, bool> dangerous;  // marker letter -> true; absent = safe

    int width() const { return grid.empty() ? 0 : static_cast<int>(grid[0].size()); }
    int height() const { return static_cast<int>(grid.size()); }
    char at(int x, int y) const { return grid[y][x]; }

    std::pair<int, int> start_cell() const;
    std::pair<int, int> goal_cell() const;
    std::pair<int, int> marker_cell(char letter) const;
    std::vector<char> letters() const;           // all markers, sorted
    std::vector<char> dangerous_letters() const;  // sorted

    // Exactly one S and one G, rectangular rows, unique marker letters,
    // every `dangerous` letter present on the grid. Throws FormatError.
    void validate() const;

    bool operator==(const Scenario&) const = default;
};

// Which contingencies form the explanation set the lattice is built over.
enum class LatticeScope {
    dangerous_only,  // the complete explanation: one change per danger
    all_marked,      // every marked cell; safe ones are confirmations
};

// The scenario compiled to planning models: one traversability fluent and
// one position fluent per non-wall cell, one unit-cost move per grid edge.
struct CompiledPair {
    Model robot_model;
    Model human_model;
    Plan robot_plan;
    std::map<char, FeatureChange> change_catalog;  // letter -> unit change
    LatticeScope scope = LatticeScope::dangerous_only;

    std::vector<FeatureChange> explanation_changes() const;
    ReconciliationProblem problem() const;
};

// Throws UnsolvableScenarioError when the robot maze has no path.
CompiledPair compile_scenario(const Scenario& scenario,
                              LatticeScope scope = LatticeScope::dangerous_only);

// Replaces each change's id with its catalog letter (matched by feature),
// so e.g. an MCE subset keeps the scenario's letter naming.
std::vector<FeatureChange> with_catalog_ids(const CompiledPair& compiled,
                                            std::vector<FeatureChange> changes);

SpatialContext spatial_context(const Scenario& scenario, const CompiledPair& compiled);

// Lattice over the compiled explanation set with the scenario's grid
// coordinates attached.
ExplanationMdp build_scenario_mdp(const Scenario& scenario, const CompiledPair& compiled,
                                  std::size_t limit = ExplanationMdp::kDefaultLimit);

struct GeneratorConfig {
    int count = 8;
    int width = 10;
    int height = 10;
    int contingency_count = 7;
    double danger_probability = 0.5;
    double wall_density = 0.3;
    std::uint64_t seed = 0;
    int max_attempts_per_scenario = 20000;
};

// Rejection-samples mazes whose robot maze (all dangers removed) still has
// a start-to-goal path; removing only dangerous cells from the human maze
// can therefore never disconnect an intermediate model. Deterministic in
// the seed. Throws GenerationExhaustedError at the attempt cap.
std::vector<Scenario> generate_scenarios(const GeneratorConfig& config);

// Samples `traces_per_scenario` orderings per scenario from the soft
// policy under `ground_truth`, provenance = synthetic.
std::vector<Trace> synthesize_traces(const std::vector<Scenario>& scenarios,
                                     const WeightVector& ground_truth,
                                     int traces_per_scenario, std::uint64_t seed,
                                     LatticeScope scope = LatticeScope::dangerous_only);

}  // namespace peg

#endif
