#ifndef PEG_PLANNER_HPP
#define PEG_PLANNER_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "peg/model.hpp"

namespace peg {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// A plan: the ordered action names and their summed cost (soft-precondition
// penalties included for the model the plan was computed in).
struct Plan {
    std::vector<std::string> steps;
    double total_cost = 0.0;

    auto operator<=>(const Plan&) const = default;
};

enum class PlanStatus { optimal, valid_suboptimal, invalid, unsolvable };

// Result of evaluating a fixed plan inside a model. `cost` is the plan's
// cost in that model, +infinity when the plan is inapplicable or the model
// itself has no solution.
struct PlanOutcome {
    PlanStatus status = PlanStatus::invalid;
    double cost = kInfiniteCost;
};

struct PlannerOptions {
    // Cost added per violated soft precondition when an action executes.
    double soft_precondition_penalty = 0.0;
};

// Minimum-cost plan from init to goal via uniform-cost search over the
// grounded state space. Deterministic: equal-cost frontier nodes expand in
// lexicographic order of (state bits relative to init, reaching action
// name), so the returned plan is a pure function of the model. Returns
// nullopt when the goal is unreachable.
std::optional<Plan> optimal_plan(const Model& model, const PlannerOptions& options = {});

// Optimal plan cost, +infinity when unsolvable.
double optimal_cost(const Model& model, const PlannerOptions& options = {});

// Executes `plan` symbolically in `model` and classifies it against the
// model's optimal cost. Inapplicable steps, unknown actions, or a final
// state missing the goal make it invalid with +infinity cost.
PlanOutcome plan_cost_in(const Plan& plan, const Model& model,
                         const PlannerOptions& options = {});

const char* to_string(PlanStatus status);

}  // namespace peg

#endif
