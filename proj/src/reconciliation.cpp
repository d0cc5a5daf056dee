#include "peg/reconciliation.hpp"

#include <algorithm>
#include <string>

#include "peg/errors.hpp"

namespace peg {

ReconciliationProblem ReconciliationProblem::from_models(Model robot, Model human,
                                                         PlannerOptions options) {
    auto plan = optimal_plan(robot, options);
    if (!plan) {
        throw UnsolvableScenarioError("robot model has no plan");
    }
    return {std::move(robot), std::move(human), std::move(*plan), options};
}

bool ReconciliationProblem::plan_is_optimal() const {
    return plan_cost_in(robot_plan, robot_model, planner_options).status == PlanStatus::optimal;
}

double ReconciliationProblem::gap_in(const Model& m) const {
    const double plan_cost = plan_cost_in(robot_plan, m, planner_options).cost;
    const double best = optimal_cost(m, planner_options);
    if (plan_cost == best) return 0.0;  // covers equal infinities
    return plan_cost - best;
}

bool is_valid_explanation(const ReconciliationProblem& problem,
                          const std::vector<FeatureChange>& changes) {
    const Model edited = apply_changes(problem.human_model, changes);

    const auto before = gamma(problem.human_model);
    const auto after = gamma(edited);
    const auto robot = gamma(problem.robot_model);
    for (const auto& f : after) {
        if (!before.count(f) && !robot.count(f)) return false;
    }
    return problem.gap_in(edited) < problem.gap_in(problem.human_model);
}

bool is_complete(const ReconciliationProblem& problem,
                 const std::vector<FeatureChange>& changes) {
    const Model edited = apply_changes(problem.human_model, changes);
    return problem.gap_in(edited) == 0.0;
}

ExplanationSet minimally_complete_explanation(const ReconciliationProblem& problem,
                                              std::size_t limit) {
    std::vector<FeatureChange> all = delta(problem.robot_model, problem.human_model);
    const std::size_t n = all.size();
    if (n > limit) {
        throw LatticeTooLargeError("delta of " + std::to_string(n) +
                                   " changes exceeds the MCE limit of " + std::to_string(limit));
    }
    // `all` is sorted by change id, so emitting index combinations in
    // lexicographic order visits candidate subsets in lexicographic order
    // of their sorted id sequences; the first complete one wins.
    std::vector<std::size_t> pick;
    std::vector<FeatureChange> subset;
    for (std::size_t size = 0; size <= n; ++size) {
        pick.resize(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            subset.clear();
            for (std::size_t i : pick) subset.push_back(all[i]);
            if (is_complete(problem, subset)) {
                return {subset, true};
            }
            // next combination
            std::size_t k = size;
            while (k > 0 && pick[k - 1] == n - size + (k - 1)) --k;
            if (k == 0) break;
            ++pick[k - 1];
            for (std::size_t i = k; i < size; ++i) pick[i] = pick[i - 1] + 1;
        }
    }
    throw NoCompleteExplanationError("full delta is not complete; robot plan not optimal?");
}

}  // namespace peg
