#ifndef PEG_RECONCILIATION_HPP
#define PEG_RECONCILIATION_HPP

#include <cstddef>
#include <vector>

#include "peg/model.hpp"
#include "peg/planner.hpp"

namespace peg {

// The robot's plan, its model, and the human model the plan must be
// explained against. The robot plan must be optimal in the robot model.
struct ReconciliationProblem {
    Model robot_model;
    Model human_model;
    Plan robot_plan;
    PlannerOptions planner_options{};

    // Builds the problem with robot_plan = optimal_plan(robot_model).
    // Throws UnsolvableScenarioError when the robot model has no plan.
    static ReconciliationProblem from_models(Model robot, Model human,
                                             PlannerOptions options = {});

    // True when robot_plan is optimal in robot_model.
    bool plan_is_optimal() const;

    // Optimality gap of the robot plan in `m`: cost(robot_plan, m) minus
    // the optimal cost of m. Zero when the two are equal, including when
    // both are the +infinity sentinel.
    double gap_in(const Model& m) const;
};

struct ExplanationSet {
    std::vector<FeatureChange> changes;
    bool completeness = false;
};

// True iff (1) every feature the changes add to the human model comes from
// the robot model's feature set, and (2) the robot plan's optimality gap
// strictly decreases.
bool is_valid_explanation(const ReconciliationProblem& problem,
                          const std::vector<FeatureChange>& changes);

// True iff the robot plan is optimal in the human model after the changes.
bool is_complete(const ReconciliationProblem& problem,
                 const std::vector<FeatureChange>& changes);

// Smallest complete subset of delta(robot, human), searched breadth-first
// over subset cardinality; ties resolved toward the lexicographically
// least sorted change-id sequence. Throws LatticeTooLargeError when the
// delta has more than `limit` changes and NoCompleteExplanationError when
// even the full delta is incomplete.
ExplanationSet minimally_complete_explanation(const ReconciliationProblem& problem,
                                              std::size_t limit = 16);

}  // namespace peg

#endif
