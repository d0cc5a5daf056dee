#include "peg/irl.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "peg/errors.hpp"
#include "peg/rng.hpp"

namespace peg {

namespace {

double log_sum_exp(const std::vector<double>& xs) {
    double m = -kInfiniteCost;
    for (double x : xs) m = std::max(m, x);
    if (m == -kInfiniteCost) return m;
    double sum = 0.0;
    for (double x : xs) sum += std::exp(x - m);
    return m + std::log(sum);
}

}  // namespace

SoftPolicy soft_policy(const WeightVector& weights, const ExplanationMdp& mdp) {
    const std::size_t n = mdp.size();
    SoftPolicy policy;
    policy.n = n;
    policy.log_z.assign(mdp.state_count(), 0.0);
    policy.action_prob.assign(std::size_t(mdp.state_count()) * std::max<std::size_t>(n, 1), 0.0);

    // Backward over layers: the goal layer seeds Z = 1.
    std::vector<double> terms;
    for (std::size_t layer = n; layer-- > 0;) {
        for (std::uint32_t mask : mdp.layers()[layer]) {
            terms.clear();
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::uint32_t(1) << i)) continue;
                const std::uint32_t next = mask | (std::uint32_t(1) << i);
                terms.push_back(mdp.edge_reward(weights, mask, i) + policy.log_z[next]);
            }
            const double lz = log_sum_exp(terms);
            policy.log_z[mask] = lz;
            std::size_t k = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::uint32_t(1) << i)) continue;
                policy.action_prob[mask * n + i] = std::exp(terms[k++] - lz);
            }
        }
    }
    return policy;
}

double trace_reward(const WeightVector& weights, const Trace& trace, const ExplanationMdp& mdp) {
    if (trace.steps.size() != mdp.size()) {
        throw InvalidTraceError("trace for '" + trace.scenario_id + "' has " +
                                std::to_string(trace.steps.size()) + " steps, lattice has " +
                                std::to_string(mdp.size()));
    }
    double sum = 0.0;
    std::uint32_t mask = 0;
    for (const auto& id : trace.steps) {
        const std::size_t i = mdp.change_index(id);
        if (mask & (std::uint32_t(1) << i)) {
            throw InvalidTraceError("change '" + id + "' repeated in trace for '" +
                                    trace.scenario_id + "'");
        }
        sum += mdp.edge_reward(weights, mask, i);
        mask |= std::uint32_t(1) << i;
    }
    return sum;
}

std::vector<TraceProbability> trace_distribution(const WeightVector& weights,
                                                 const ExplanationMdp& mdp) {
    const std::size_t n = mdp.size();
    if (n > 8) {
        throw LatticeTooLargeError("trace enumeration limited to n <= 8, got " +
                                   std::to_string(n));
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    std::vector<TraceProbability> out;
    std::vector<double> rewards;
    do {
        double sum = 0.0;
        std::uint32_t mask = 0;
        std::vector<std::string> steps;
        steps.reserve(n);
        for (std::size_t i : perm) {
            sum += mdp.edge_reward(weights, mask, i);
            mask |= std::uint32_t(1) << i;
            steps.push_back(mdp.change(i).id);
        }
        rewards.push_back(sum);
        out.push_back({std::move(steps), 0.0});
    } while (std::next_permutation(perm.begin(), perm.end()));

    const double lz = log_sum_exp(rewards);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k].probability = std::exp(rewards[k] - lz);
    }
    return out;
}

std::vector<double> exact_mu1(const SoftPolicy& policy, const ExplanationMdp& mdp) {
    const std::size_t n = mdp.size();
    std::vector<double> mu1(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) mu1[i] = policy.prob(0, i);
    return mu1;
}

std::vector<std::string> rollout(const SoftPolicy& policy, const ExplanationMdp& mdp, Rng& rng) {
    const std::size_t n = mdp.size();
    std::vector<std::string> steps;
    steps.reserve(n);
    std::uint32_t mask = 0;
    for (std::size_t step = 0; step < n; ++step) {
        const double u = rng.unit();
        double acc = 0.0;
        std::size_t chosen = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint32_t(1) << i)) continue;
            acc += policy.prob(mask, i);
            if (u < acc) {
                chosen = i;
                break;
            }
        }
        if (chosen == n) {  // numerical slack: fall back to the last enabled
            for (std::size_t i = n; i-- > 0;) {
                if (!(mask & (std::uint32_t(1) << i))) {
                    chosen = i;
                    break;
                }
            }
        }
        steps.push_back(mdp.change(chosen).id);
        mask |= std::uint32_t(1) << chosen;
    }
    return steps;
}

std::vector<double> sampled_mu1(const SoftPolicy& policy, const ExplanationMdp& mdp,
                                long samples, std::uint64_t seed) {
    const std::size_t n = mdp.size();
    std::vector<double> mu1(n, 0.0);
    if (n == 0 || samples <= 0) return mu1;
    Rng rng(seed);
    for (long s = 0; s < samples; ++s) {
        const auto steps = rollout(policy, mdp, rng);
        mu1[mdp.change_index(steps.front())] += 1.0;
    }
    for (double& v : mu1) v /= static_cast<double>(samples);
    return mu1;
}

std::vector<double> mpof(const SoftPolicy& policy, const ExplanationMdp& mdp,
                         const std::vector<double>& mu1) {
    const std::size_t n = mdp.size();
    std::vector<double> edge_visit(std::size_t(mdp.state_count()) * std::max<std::size_t>(n, 1),
                                   0.0);
    if (n == 0) return edge_visit;

    // mu_t lives on layer (t-1) -> t edges; inflow(M) collects
    // sum_{M''} mu_t(M'', M) before the next step spreads it by P(f|M).
    std::vector<double> inflow(mdp.state_count(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        edge_visit[0 * n + i] += mu1[i];
        inflow[std::uint32_t(1) << i] += mu1[i];
    }
    for (std::size_t t = 1; t < n; ++t) {
        for (std::uint32_t mask : mdp.layers()[t]) {
            const double in = inflow[mask];
            if (in == 0.0) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::uint32_t(1) << i)) continue;
                const double m = in * policy.prob(mask, i);
                edge_visit[mask * n + i] += m;
                inflow[mask | (std::uint32_t(1) << i)] += m;
            }
        }
    }
    return edge_visit;
}

std::map<std::string, std::vector<Trace>> group_traces(const std::vector<Trace>& traces) {
    std::map<std::string, std::vector<Trace>> out;
    for (const auto& t : traces) out[t.scenario_id].push_back(t);
    return out;
}

namespace {

const ExplanationMdp& mdp_for(const std::map<std::string, const ExplanationMdp*>& mdps,
                              const std::string& scenario_id) {
    auto it = mdps.find(scenario_id);
    if (it == mdps.end() || it->second == nullptr) {
        throw InvalidTraceError("no lattice for scenario '" + scenario_id + "'");
    }
    return *it->second;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

double log_likelihood(const WeightVector& weights,
                      const std::map<std::string, std::vector<Trace>>& traces_by_scenario,
                      const std::map<std::string, const ExplanationMdp*>& mdps) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& [scenario_id, traces] : traces_by_scenario) {
        const ExplanationMdp& mdp = mdp_for(mdps, scenario_id);
        const SoftPolicy policy = soft_policy(weights, mdp);
        for (const auto& trace : traces) {
            sum += trace_reward(weights, trace, mdp) - policy.log_partition();
            ++count;
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

namespace {

std::vector<double> gradient_with_policies(
    const WeightVector& weights,
    const std::map<std::string, std::vector<Trace>>& traces_by_scenario,
    const std::map<std::string, const ExplanationMdp*>& mdps, const TrainingConfig& config,
    std::uint64_t mu1_salt) {
    std::vector<double> grad(kFeatureCount, 0.0);
    std::size_t total_traces = 0;

    for (const auto& [scenario_id, traces] : traces_by_scenario) {
        const ExplanationMdp& mdp = mdp_for(mdps, scenario_id);
        const std::size_t n = mdp.size();
        const SoftPolicy policy = soft_policy(weights, mdp);

        std::vector<double> empirical(kFeatureCount, 0.0);
        for (const auto& trace : traces) {
            std::uint32_t mask = 0;
            for (const auto& id : trace.steps) {
                const std::size_t i = mdp.change_index(id);
                if (mask & (std::uint32_t(1) << i)) {
                    throw InvalidTraceError("change '" + id + "' repeated in trace for '" +
                                            scenario_id + "'");
                }
                const FeatureVector& f = mdp.edge_features(mask, i);
                for (std::size_t k = 0; k < kFeatureCount; ++k) empirical[k] += f[k];
                mask |= std::uint32_t(1) << i;
            }
            if (mask != mdp.goal_mask()) {
                throw InvalidTraceError("trace for '" + scenario_id + "' does not reach the goal");
            }
        }
        total_traces += traces.size();

        const std::vector<double> mu1 =
            config.mu1_mode == Mu1Mode::exact
                ? exact_mu1(policy, mdp)
                : sampled_mu1(policy, mdp, config.sample_count,
                              splitmix64(config.seed ^ mu1_salt) + fnv1a(scenario_id));
        const std::vector<double> visits = mpof(policy, mdp, mu1);

        std::vector<double> expected(kFeatureCount, 0.0);
        for (std::uint32_t mask = 0; mask < mdp.state_count(); ++mask) {
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::uint32_t(1) << i)) continue;
                const double v = visits[mask * n + i];
                if (v == 0.0) continue;
                const FeatureVector& f = mdp.edge_features(mask, i);
                for (std::size_t k = 0; k < kFeatureCount; ++k) expected[k] += v * f[k];
            }
        }
        const double trace_count = static_cast<double>(traces.size());
        for (std::size_t k = 0; k < kFeatureCount; ++k) {
            grad[k] += empirical[k] - trace_count * expected[k];
        }
    }

    if (total_traces > 0) {
        for (double& v : grad) v /= static_cast<double>(total_traces);
    }
    return grad;
}

}  // namespace

std::vector<double> irl_gradient(const WeightVector& weights,
                                 const std::map<std::string, std::vector<Trace>>& traces_by_scenario,
                                 const std::map<std::string, const ExplanationMdp*>& mdps,
                                 const TrainingConfig& config) {
    return gradient_with_policies(weights, traces_by_scenario, mdps, config, 0);
}

IrlResult train(const std::vector<Trace>& traces,
                const std::map<std::string, const ExplanationMdp*>& mdps,
                const TrainingConfig& config) {
    const auto grouped = group_traces(traces);
    IrlResult result;
    result.weights = WeightVector::zeros();
    result.weights.seed = config.seed;
    for (const auto& [scenario_id, _] : grouped) {
        result.weights.scenario_ids.push_back(scenario_id);
    }

    double previous_ll = -kInfiniteCost;
    int decreases = 0;
    for (long iter = 0; iter < config.iterations; ++iter) {
        const double ll = log_likelihood(result.weights, grouped, mdps);
        const auto grad = gradient_with_policies(result.weights, grouped, mdps, config,
                                                 static_cast<std::uint64_t>(iter));
        double norm = 0.0;
        for (double v : grad) norm = std::max(norm, std::fabs(v));

        result.log_likelihood_history.push_back(ll);
        result.gradient_norm_history.push_back(norm);
        result.weights.iterations = iter + 1;

        if (ll < previous_ll - 1e-12) {
            if (++decreases >= 10) {
                throw DivergedError("log-likelihood decreased for 10 consecutive iterations; "
                                    "lower the learning rate");
            }
        } else {
            decreases = 0;
        }
        previous_ll = ll;

        if (norm < config.convergence_tolerance) {
            result.converged = true;
            break;
        }
        for (std::size_t k = 0; k < kFeatureCount; ++k) {
            result.weights.values[k] += config.learning_rate * grad[k];
        }
    }
    return result;
}

}  // namespace peg
