#ifndef PEG_MODEL_HPP
#define PEG_MODEL_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace peg {

// One action of a STRIPS-like model. `costs` is a set so that cost edits
// commute like every other unit feature change; a well-formed action holds
// exactly one value. effective_cost() falls back to 1 while an action is
// mid-edit (empty set) and to the minimum if several values are pending.
struct Action {
    std::string name;
    std::set<std::string> preconditions;
    std::set<std::string> soft_preconditions;
    std::set<std::string> add_effects;
    std::set<std::string> del_effects;
    std::set<double> costs{1.0};

    double effective_cost() const { return costs.empty() ? 1.0 : *costs.begin(); }
    bool empty() const {
        return preconditions.empty() && soft_preconditions.empty() &&
               add_effects.empty() && del_effects.empty() && costs.empty();
    }

    auto operator<=>(const Action&) const = default;
};

// A planning model: boolean fluents, actions, initial state and goal.
// `predicates` is the declared vocabulary; init/goal/action clauses must
// reference declared names. All types here are immutable values in use:
// editing goes through apply_change, which copies.
struct Model {
    std::set<std::string> predicates;
    std::map<std::string, Action> actions;
    std::set<std::string> init;
    std::set<std::string> goal;

    bool operator==(const Model&) const = default;

    // Equality up to declared-but-unused predicates, matching the feature
    // function: two models with equal feature sets are equivalent.
    bool equivalent_to(const Model& other) const {
        return init == other.init && goal == other.goal && actions == other.actions;
    }

    // Throws FormatError when init/goal/actions use undeclared predicates,
    // add/del effects overlap, or a cost is negative.
    void validate() const;
};

enum class FeatureKind {
    init_has,
    goal_has,
    action_precondition,
    action_soft_precondition,
    action_add_effect,
    action_del_effect,
    action_cost,
};

// One element of a model's feature set: a pure value identified by
// (kind, subject). `predicate` is unused for action_cost; `action` is
// unused for init/goal features.
struct ModelFeature {
    FeatureKind kind;
    std::string action;
    std::string predicate;
    double cost_value = 0.0;

    // Deterministic serialization, e.g. "init-has-p" or
    // "MOVE-has-precondition-q"; doubles printed shortest-round-trip.
    std::string id() const;

    auto operator<=>(const ModelFeature&) const = default;
};

enum class ChangeDirection { add, remove };

// A unit edit to a model's feature set: the atom of an explanation and the
// action of the explanation MDP. `id` defaults to the feature id and is
// unique within a scenario (escape-room catalogs override it with the
// contingency letter).
struct FeatureChange {
    ChangeDirection direction;
    ModelFeature feature;
    std::string id;

    FeatureChange inverted() const {
        return {direction == ChangeDirection::add ? ChangeDirection::remove
                                                  : ChangeDirection::add,
                feature, id};
    }

    auto operator<=>(const FeatureChange&) const = default;
};

FeatureChange make_change(ChangeDirection direction, ModelFeature feature);

// The model feature function: converts a model to the set of features that
// fully specifies it (up to unused predicate declarations).
std::set<ModelFeature> gamma(const Model& model);

// The symmetric-difference edit set: applying every returned change to m2
// (in any order) yields a model whose feature set equals gamma(m1).
std::vector<FeatureChange> delta(const Model& m1, const Model& m2);

// Number of unit feature changes between the two models.
std::size_t model_distance_count(const Model& m1, const Model& m2);

// Returns a copy of `model` with the change applied. Throws
// InapplicableChangeError when an add's feature is already present or a
// remove's feature is absent.
Model apply_change(const Model& model, const FeatureChange& change);

Model apply_changes(const Model& model, const std::vector<FeatureChange>& changes);

std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace peg

#endif
