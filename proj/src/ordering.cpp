#include "peg/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "peg/errors.hpp"
#include "peg/rng.hpp"

namespace peg {

std::vector<std::string> OrderedExplanation::step_ids() const {
    std::vector<std::string> out;
    out.reserve(steps.size());
    for (const auto& c : steps) out.push_back(c.id);
    return out;
}

std::vector<double> step_rewards(const ExplanationMdp& mdp, const WeightVector& weights,
                                 const std::vector<std::string>& step_ids) {
    std::vector<double> out;
    out.reserve(step_ids.size());
    std::uint32_t mask = 0;
    for (const auto& id : step_ids) {
        const std::size_t i = mdp.change_index(id);
        if (mask & (std::uint32_t(1) << i)) {
            throw InvalidTraceError("change '" + id + "' repeated in ordering");
        }
        out.push_back(mdp.edge_reward(weights, mask, i));
        mask |= std::uint32_t(1) << i;
    }
    return out;
}

double ordering_reward(const ExplanationMdp& mdp, const WeightVector& weights,
                       const std::vector<std::string>& step_ids) {
    const auto rewards = step_rewards(mdp, weights, step_ids);
    double total = 0.0;
    for (std::size_t i = rewards.size(); i-- > 0;) total += rewards[i];
    return total;
}

namespace {

OrderedExplanation scored(const ExplanationMdp& mdp, const WeightVector& weights,
                          std::vector<std::string> ids, OrderingMethod method) {
    OrderedExplanation out;
    out.method = method;
    out.total_reward = ordering_reward(mdp, weights, ids);
    for (const auto& id : ids) {
        out.steps.push_back(mdp.change(mdp.change_index(id)));
    }
    return out;
}

}  // namespace

OrderedExplanation peg_order(const ExplanationMdp& mdp, const WeightVector& weights) {
    const std::size_t n = mdp.size();
    const std::uint32_t states = mdp.state_count();

    // value[mask] = best achievable reward from `mask` to the goal.
    std::vector<double> value(states, 0.0);
    for (std::size_t layer = n; layer-- > 0;) {
        for (std::uint32_t mask : mdp.layers()[layer]) {
            double best = -kInfiniteCost;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::uint32_t(1) << i)) continue;
                best = std::max(best,
                                mdp.edge_reward(weights, mask, i) +
                                    value[mask | (std::uint32_t(1) << i)]);
            }
            value[mask] = best;
        }
    }

    OrderedExplanation out;
    out.method = OrderingMethod::peg;
    out.total_reward = n == 0 ? 0.0 : value[0];
    std::uint32_t mask = 0;
    for (std::size_t step = 0; step < n; ++step) {
        // Changes are sorted by id, so the first index attaining the value
        // is the lexicographically least tie-break.
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint32_t(1) << i)) continue;
            const std::uint32_t next = mask | (std::uint32_t(1) << i);
            if (mdp.edge_reward(weights, mask, i) + value[next] == value[mask]) {
                out.steps.push_back(mdp.change(i));
                mask = next;
                break;
            }
        }
    }
    return out;
}

OrderedExplanation random_order(const ExplanationMdp& mdp, const WeightVector& weights,
                                std::uint64_t seed) {
    std::vector<std::string> ids;
    for (const auto& c : mdp.changes()) ids.push_back(c.id);
    Rng rng(seed);
    rng.shuffle(ids);
    return scored(mdp, weights, std::move(ids), OrderingMethod::random);
}

OrderedExplanation manhattan_order(const ExplanationMdp& mdp, const WeightVector& weights) {
    if (!mdp.spatial()) {
        throw UnknownContingencyError("no grid coordinates attached to this lattice");
    }
    const SpatialContext& ctx = *mdp.spatial();
    std::vector<std::string> ids;
    for (const auto& c : mdp.changes()) ids.push_back(c.id);
    auto distance = [&](const std::string& id) {
        auto it = ctx.coords.find(id);
        if (it == ctx.coords.end()) {
            throw UnknownContingencyError("no coordinates for change '" + id + "'");
        }
        return std::abs(it->second.first - ctx.start_x) +
               std::abs(it->second.second - ctx.start_y);
    };
    std::stable_sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
        const int da = distance(a), db = distance(b);
        return da != db ? da < db : a < b;
    });
    return scored(mdp, weights, std::move(ids), OrderingMethod::manhattan);
}

OrderedExplanation custom_order(const ExplanationMdp& mdp, const WeightVector& weights,
                                const std::vector<std::string>& step_ids) {
    return scored(mdp, weights, step_ids, OrderingMethod::custom);
}

ReplanningProfile replanning_profile(const OrderedExplanation& order, const ExplanationMdp& mdp) {
    if (!mdp.has_states()) {
        throw InvalidTraceError("lattice has no cached plans");
    }
    ReplanningProfile profile;
    std::uint32_t mask = 0;
    double running = 0.0;
    for (const auto& change : order.steps) {
        const std::size_t i = mdp.change_index(change.id);
        if (mask & (std::uint32_t(1) << i)) {
            throw InvalidTraceError("change '" + change.id + "' repeated in ordering");
        }
        const std::uint32_t next = mask | (std::uint32_t(1) << i);
        const double d = action_distance(mdp.state_plan(mask), mdp.state_plan(next));
        profile.step_distance.push_back(d);
        running += d;
        profile.cumulative.push_back(running);
        mask = next;
    }
    profile.total = running;
    return profile;
}

const char* to_string(OrderingMethod method) {
    switch (method) {
        case OrderingMethod::peg: return "peg";
        case OrderingMethod::random: return "random";
        case OrderingMethod::manhattan: return "manhattan";
        case OrderingMethod::custom: return "custom";
    }
    return "?";
}

OrderingMethod ordering_method_from(const std::string& name) {
    if (name == "peg") return OrderingMethod::peg;
    if (name == "random") return OrderingMethod::random;
    if (name == "manhattan") return OrderingMethod::manhattan;
    if (name == "custom") return OrderingMethod::custom;
    throw FormatError("unknown ordering method '" + name + "'");
}

}  // namespace peg
