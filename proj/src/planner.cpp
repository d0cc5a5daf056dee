#include "peg/planner.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <unordered_map>

namespace peg {

namespace {

using Words = std::vector<std::uint64_t>;

struct WordsHash {
    std::size_t operator()(const Words& w) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (std::uint64_t x : w) {
            h ^= x;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

// Grounded view of a model: predicates indexed into a fixed bitset layout,
// actions as precondition/effect masks, sorted by name for determinism.
struct Grounding {
    std::vector<std::string> predicate_names;
    std::map<std::string, int> predicate_index;
    Words init;
    Words goal;

    struct GroundAction {
        std::string name;
        Words pre;
        Words soft;
        Words add;
        Words del;
        double base_cost;
    };
    std::vector<GroundAction> actions;
    std::size_t words = 0;

    explicit Grounding(const Model& model) {
        std::set<std::string> vocab = model.predicates;
        auto absorb = [&](const std::set<std::string>& s) { vocab.insert(s.begin(), s.end()); };
        absorb(model.init);
        absorb(model.goal);
        for (const auto& [name, a] : model.actions) {
            absorb(a.preconditions);
            absorb(a.soft_preconditions);
            absorb(a.add_effects);
            absorb(a.del_effects);
        }
        predicate_names.assign(vocab.begin(), vocab.end());
        for (int i = 0; i < static_cast<int>(predicate_names.size()); ++i) {
            predicate_index[predicate_names[i]] = i;
        }
        words = (predicate_names.size() + 63) / 64;
        if (words == 0) words = 1;

        init = mask(model.init);
        goal = mask(model.goal);
        for (const auto& [name, a] : model.actions) {
            actions.push_back({name, mask(a.preconditions), mask(a.soft_preconditions),
                               mask(a.add_effects), mask(a.del_effects), a.effective_cost()});
        }
    }

    Words mask(const std::set<std::string>& preds) const {
        Words w(words, 0);
        for (const auto& p : preds) {
            int i = predicate_index.at(p);
            w[i / 64] |= std::uint64_t(1) << (i % 64);
        }
        return w;
    }

    static bool subset(const Words& a, const Words& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if ((a[i] & b[i]) != a[i]) return false;
        }
        return true;
    }

    static int missing_count(const Words& need, const Words& have) {
        int n = 0;
        for (std::size_t i = 0; i < need.size(); ++i) {
            n += __builtin_popcountll(need[i] & ~have[i]);
        }
        return n;
    }

    static Words successor(const Words& s, const GroundAction& a) {
        Words out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            out[i] = (s[i] & ~a.del[i]) | a.add[i];
        }
        return out;
    }
};

// Tie-break key: state bits XOR init. Static fluents shared by every
// reachable state cancel out, so inert init additions cannot reorder the
// search (and thus cannot flip which optimal plan is returned).
Words relative_key(const Words& s, const Words& init) {
    Words out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] ^ init[i];
    return out;
}

struct QueueEntry {
    double g;
    Words key;
    std::string via;
    Words state;
    int parent;  // index into settled list, -1 for the root

    bool operator>(const QueueEntry& other) const {
        if (g != other.g) return g > other.g;
        if (key != other.key) return key > other.key;
        return via > other.via;
    }
};

}  // namespace

std::optional<Plan> optimal_plan(const Model& model, const PlannerOptions& options) {
    const Grounding g(model);

    struct Settled {
        Words state;
        double g;
        int parent;
        std::string via;
    };
    std::vector<Settled> settled;
    std::unordered_map<Words, int, WordsHash> seen;

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> open;
    open.push({0.0, relative_key(g.init, g.init), "", g.init, -1});

    int goal_index = -1;
    while (!open.empty()) {
        QueueEntry top = open.top();
        open.pop();
        if (seen.count(top.state)) continue;
        const int index = static_cast<int>(settled.size());
        seen.emplace(top.state, index);
        settled.push_back({top.state, top.g, top.parent, top.via});

        if (Grounding::subset(g.goal, top.state)) {
            goal_index = index;
            break;
        }
        for (const auto& a : g.actions) {
            if (!Grounding::subset(a.pre, top.state)) continue;
            const double step =
                a.base_cost +
                options.soft_precondition_penalty * Grounding::missing_count(a.soft, top.state);
            Words next = Grounding::successor(top.state, a);
            if (seen.count(next)) continue;
            open.push({top.g + step, relative_key(next, g.init), a.name, std::move(next), index});
        }
    }
    if (goal_index < 0) return std::nullopt;

    Plan plan;
    plan.total_cost = settled[goal_index].g;
    for (int i = goal_index; settled[i].parent >= 0; i = settled[i].parent) {
        plan.steps.push_back(settled[i].via);
    }
    std::reverse(plan.steps.begin(), plan.steps.end());
    return plan;
}

double optimal_cost(const Model& model, const PlannerOptions& options) {
    auto plan = optimal_plan(model, options);
    return plan ? plan->total_cost : kInfiniteCost;
}

PlanOutcome plan_cost_in(const Plan& plan, const Model& model, const PlannerOptions& options) {
    const double best = optimal_cost(model, options);

    const Grounding g(model);
    Words state = g.init;
    double cost = 0.0;
    bool applicable = true;
    for (const auto& step : plan.steps) {
        auto it = std::find_if(g.actions.begin(), g.actions.end(),
                               [&](const auto& a) { return a.name == step; });
        if (it == g.actions.end() || !Grounding::subset(it->pre, state)) {
            applicable = false;
            break;
        }
        cost += it->base_cost +
                options.soft_precondition_penalty * Grounding::missing_count(it->soft, state);
        state = Grounding::successor(state, *it);
    }
    if (applicable && !Grounding::subset(g.goal, state)) applicable = false;

    if (!applicable) {
        return {best == kInfiniteCost ? PlanStatus::unsolvable : PlanStatus::invalid,
                kInfiniteCost};
    }
    return {cost == best ? PlanStatus::optimal : PlanStatus::valid_suboptimal, cost};
}

const char* to_string(PlanStatus status) {
    switch (status) {
        case PlanStatus::optimal: return "optimal";
        case PlanStatus::valid_suboptimal: return "valid-suboptimal";
        case PlanStatus::invalid: return "invalid";
        case PlanStatus::unsolvable: return "unsolvable";
    }
    return "?";
}

}  // namespace peg
