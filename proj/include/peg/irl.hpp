#ifndef PEG_IRL_HPP
#define PEG_IRL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "peg/lattice.hpp"

namespace peg {

enum class TraceProvenance { human, synthetic };

// One ordered explanation observed (or synthesized) for a scenario; the
// steps are a permutation of the scenario's explanation set.
struct Trace {
    std::string scenario_id;
    std::vector<std::string> steps;  // change ids, in explanation order
    TraceProvenance provenance = TraceProvenance::human;

    bool operator==(const Trace&) const = default;
};

enum class Mu1Mode { exact, sampled };

struct TrainingConfig {
    double learning_rate = 0.05;
    long iterations = 500;
    double convergence_tolerance = 1e-5;  // on the gradient max-norm
    long sample_count = 1000;             // traces per iteration for sampled mu1
    std::uint64_t seed = 0;
    Mu1Mode mu1_mode = Mu1Mode::exact;
};

struct IrlResult {
    WeightVector weights;
    std::vector<double> log_likelihood_history;
    std::vector<double> gradient_norm_history;
    bool converged = false;
};

// Per-state soft (maximum-entropy) policy and its log partition function:
// Z(goal) = 1, Z(M) = sum_f e^{rho(M, M_f)} Z(M_f), P(f|M) = e^{rho} Z(M_f)
// / Z(M). All sums run in log domain.
struct SoftPolicy {
    std::size_t n = 0;
    std::vector<double> log_z;         // per mask
    std::vector<double> action_prob;   // mask * n + i, 0 for disabled i

    double prob(std::uint32_t mask, std::size_t i) const { return action_prob[mask * n + i]; }
    double log_partition() const { return log_z[0]; }
};

SoftPolicy soft_policy(const WeightVector& weights, const ExplanationMdp& mdp);

// Sum of per-transition rewards along the trace. Throws InvalidTraceError
// when a step is not enabled (repeated, unknown, or trace incomplete).
double trace_reward(const WeightVector& weights, const Trace& trace, const ExplanationMdp& mdp);

struct TraceProbability {
    std::vector<std::string> steps;
    double probability;
};

// The explicit maximum-entropy distribution over all n! complete
// orderings, P(zeta) = e^{rho(zeta)} / sum e^{rho}; enumeration oracle for
// the policy-product route. Throws LatticeTooLargeError for n > 8.
std::vector<TraceProbability> trace_distribution(const WeightVector& weights,
                                                 const ExplanationMdp& mdp);

// Expected edge visitation (model-pair occurrence frequency) under the
// policy: mu_1 over first transitions, mu_{t+1}(M,M') = sum_f sum_{M''}
// mu_t(M'',M) P(f|M) P(M'|M,f), summed over t. Indexed mask * n + i.
std::vector<double> mpof(const SoftPolicy& policy, const ExplanationMdp& mdp,
                         const std::vector<double>& mu1);

// Exact first-transition distribution (the policy row at the empty state).
std::vector<double> exact_mu1(const SoftPolicy& policy, const ExplanationMdp& mdp);

// mu1 estimated from `samples` policy rollouts, per the sampled update.
std::vector<double> sampled_mu1(const SoftPolicy& policy, const ExplanationMdp& mdp,
                                long samples, std::uint64_t seed);

// Samples one complete ordering by rolling the policy forward.
std::vector<std::string> rollout(const SoftPolicy& policy, const ExplanationMdp& mdp,
                                 class Rng& rng);

// Average log-likelihood of the traces under the weights.
double log_likelihood(const WeightVector& weights,
                      const std::map<std::string, std::vector<Trace>>& traces_by_scenario,
                      const std::map<std::string, const ExplanationMdp*>& mdps);

// Gradient of the average log-likelihood: per-scenario empirical feature
// sums minus trace-count-weighted expected feature sums under the MPOF.
std::vector<double> irl_gradient(const WeightVector& weights,
                                 const std::map<std::string, std::vector<Trace>>& traces_by_scenario,
                                 const std::map<std::string, const ExplanationMdp*>& mdps,
                                 const TrainingConfig& config = {});

std::map<std::string, std::vector<Trace>> group_traces(const std::vector<Trace>& traces);

// Gradient ascent on the convex trace log-likelihood from zero weights.
// Stops when the gradient max-norm drops below the tolerance or the
// iteration cap is reached; throws DivergedError after 10 consecutive
// log-likelihood decreases.
IrlResult train(const std::vector<Trace>& traces,
                const std::map<std::string, const ExplanationMdp*>& mdps,
                const TrainingConfig& config);

}  // namespace peg

#endif
