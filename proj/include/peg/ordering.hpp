#ifndef PEG_ORDERING_HPP
#define PEG_ORDERING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "peg/lattice.hpp"

namespace peg {

enum class OrderingMethod { peg, random, manhattan, custom };

// An ordering of the explanation set with its reward under the weights it
// was scored with. `steps` is always a permutation of the lattice changes.
struct OrderedExplanation {
    std::string scenario_id;
    std::vector<FeatureChange> steps;
    double total_reward = 0.0;
    OrderingMethod method = OrderingMethod::custom;

    std::vector<std::string> step_ids() const;
};

// Per-transition rewards along `step_ids`, in step order.
std::vector<double> step_rewards(const ExplanationMdp& mdp, const WeightVector& weights,
                                 const std::vector<std::string>& step_ids);

// Total reward of the ordering, accumulated back to front so it is
// bit-identical to the lattice DP's value for the same sequence.
double ordering_reward(const ExplanationMdp& mdp, const WeightVector& weights,
                       const std::vector<std::string>& step_ids);

// Exact argmax of cumulative reward over all orderings, by value iteration
// on the subset lattice (O(2^n n)); ties broken toward the
// lexicographically least change id at each step.
OrderedExplanation peg_order(const ExplanationMdp& mdp, const WeightVector& weights);

// Uniform random permutation from the seed; scored under `weights`.
OrderedExplanation random_order(const ExplanationMdp& mdp, const WeightVector& weights,
                                std::uint64_t seed);

// Ascending Manhattan distance from the start cell, ties by change id.
// Requires the lattice's spatial context (UnknownContingencyError otherwise).
OrderedExplanation manhattan_order(const ExplanationMdp& mdp, const WeightVector& weights);

OrderedExplanation custom_order(const ExplanationMdp& mdp, const WeightVector& weights,
                                const std::vector<std::string>& step_ids);

// Simulated-human replanning record: the action distance between the
// optimal plans before and after each step, plus running and final totals.
struct ReplanningProfile {
    std::vector<double> step_distance;
    std::vector<double> cumulative;
    double total = 0.0;
};

ReplanningProfile replanning_profile(const OrderedExplanation& order, const ExplanationMdp& mdp);

const char* to_string(OrderingMethod method);
OrderingMethod ordering_method_from(const std::string& name);

}  // namespace peg

#endif
