#ifndef PEG_LATTICE_HPP
#define PEG_LATTICE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "peg/model.hpp"
#include "peg/planner.hpp"
#include "peg/reconciliation.hpp"

namespace peg {

inline constexpr std::size_t kFeatureCount = 6;

// Fixed feature ordering shared by feature vectors, weight vectors and the
// weights file: four spatial entries, squared cost distance, action distance.
extern const std::array<const char*, kFeatureCount> kFeatureNames;

struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    double x_min() const { return values[0]; }
    double y_min() const { return values[1]; }
    double x_max() const { return values[2]; }
    double y_max() const { return values[3]; }
    double cost_sq_distance() const { return values[4]; }
    double action_distance() const { return values[5]; }
};

// Learned weights over the fixed feature set, plus training metadata.
struct WeightVector {
    std::vector<double> values;
    std::vector<std::string> feature_names;
    std::vector<std::string> scenario_ids;
    std::uint64_t seed = 0;
    long iterations = 0;
    bool converged = false;

    static WeightVector zeros();
    static WeightVector of(std::array<double, kFeatureCount> v);

    // Entries divided by the maximum absolute entry (all-zero stays zero),
    // the presentation used in the weights file.
    std::vector<double> normalized() const;
};

// Inner product of weights and features. Throws LengthMismatchError when
// the weight vector does not have one entry per feature.
double rho(const WeightVector& weights, const FeatureVector& features);

// Jaccard distance between the two plans' action-name sets; 0 for equal
// sets (including both empty), 1 for disjoint nonempty sets.
double action_distance(const Plan& p1, const Plan& p2);

// Squared optimal-cost difference divided by `normalizer` (the squared
// maximum cost difference observed in the lattice at hand, so lattice
// features land in [0,1]).
double cost_distance_sq(const Model& m1, const Model& m2, double normalizer = 1.0,
                        const PlannerOptions& options = {});

// Grid placement of an explanation's changes, for the spatial features and
// the Manhattan baseline.
struct SpatialContext {
    int width = 0;
    int height = 0;
    int start_x = 0;
    int start_y = 0;
    std::map<std::string, std::pair<int, int>> coords;  // change id -> cell
};

// Clamped, normalized bounding-box overshoot of the explained cell against
// the cells explained so far (the start cell when none are). Order:
// x_min, y_min, x_max, y_max. Throws UnknownContingencyError when
// `change_id` has no coordinates.
std::array<double, 4> spatial_features(const SpatialContext& ctx,
                                       const std::vector<std::string>& applied_ids,
                                       const std::string& change_id);

// One lattice state: the human model with a subset of the explanation
// applied, and its cached optimal plan. Two states are equal iff their
// applied sets are.
struct LatticeState {
    std::uint32_t mask = 0;
    std::vector<std::string> applied;
    Model model;
    Plan plan;
    double cost = kInfiniteCost;

    bool solvable() const { return cost != kInfiniteCost; }
};

// The goal-based MDP over the subset lattice of an explanation: state
// = set of applied changes (a bitmask), action = one not-yet-applied
// change, deterministic transitions, the all-applied state absorbing.
// Plans, optimal costs and per-edge feature vectors are precomputed.
class ExplanationMdp {
public:
    static constexpr std::size_t kDefaultLimit = 14;

    // Enumerates the 2^n lattice over `explanation` (sorted by change id).
    // Throws LatticeTooLargeError when n exceeds `limit`.
    static ExplanationMdp build(const ReconciliationProblem& problem,
                                const std::vector<FeatureChange>& explanation,
                                std::optional<SpatialContext> spatial = std::nullopt,
                                std::size_t limit = kDefaultLimit);

    // Test-only style constructor from a raw feature table:
    // features[mask * n + i] for change index i enabled at `mask`.
    static ExplanationMdp from_features(std::vector<std::string> change_ids,
                                        std::vector<FeatureVector> features);

    std::size_t size() const { return changes_.size(); }
    std::uint32_t state_count() const { return std::uint32_t(1) << changes_.size(); }
    std::uint32_t goal_mask() const { return state_count() - 1; }

    const std::vector<FeatureChange>& changes() const { return changes_; }
    const FeatureChange& change(std::size_t i) const { return changes_[i]; }
    std::size_t change_index(const std::string& id) const;

    const FeatureVector& edge_features(std::uint32_t mask, std::size_t i) const {
        return features_[mask * changes_.size() + i];
    }
    double edge_reward(const WeightVector& w, std::uint32_t mask, std::size_t i) const {
        return rho(w, edge_features(mask, i));
    }

    // Optimal cost of the human model with the mask's changes applied
    // (+infinity when unsolvable) and the corresponding cached plan.
    double state_cost(std::uint32_t mask) const { return costs_[mask]; }
    const Plan& state_plan(std::uint32_t mask) const { return plans_[mask]; }
    bool state_solvable(std::uint32_t mask) const { return costs_[mask] != kInfiniteCost; }

    // Rebuilds the mask's model from the human model; not cached.
    Model state_model(std::uint32_t mask) const;

    // Full state view (model rebuilt, plan and cost from the cache).
    LatticeState state(std::uint32_t mask) const;

    const std::optional<SpatialContext>& spatial() const { return spatial_; }
    double cost_normalizer() const { return cost_normalizer_; }
    double discount() const { return discount_; }

    // Masks grouped by popcount, goal layer last.
    const std::vector<std::vector<std::uint32_t>>& layers() const { return layers_; }

    std::vector<std::string> applied_ids(std::uint32_t mask) const;
    bool has_states() const { return !plans_.empty(); }

private:
    std::vector<FeatureChange> changes_;
    Model human_base_;
    bool has_base_ = false;
    std::optional<SpatialContext> spatial_;
    std::vector<double> costs_;
    std::vector<Plan> plans_;
    std::vector<FeatureVector> features_;
    std::vector<std::vector<std::uint32_t>> layers_;
    double cost_normalizer_ = 1.0;
    double discount_ = 1.0;

    void build_layers();
};

}  // namespace peg

#endif
