#include "peg/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "peg/errors.hpp"

namespace peg {

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "x_min", "y_min", "x_max", "y_max", "cost_sq_distance", "action_distance"};

WeightVector WeightVector::zeros() {
    WeightVector w;
    w.values.assign(kFeatureCount, 0.0);
    w.feature_names.assign(kFeatureNames.begin(), kFeatureNames.end());
    return w;
}

WeightVector WeightVector::of(std::array<double, kFeatureCount> v) {
    WeightVector w = zeros();
    w.values.assign(v.begin(), v.end());
    return w;
}

std::vector<double> WeightVector::normalized() const {
    double max_abs = 0.0;
    for (double v : values) max_abs = std::max(max_abs, std::fabs(v));
    std::vector<double> out(values.size(), 0.0);
    if (max_abs == 0.0) return out;
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / max_abs;
    return out;
}

double rho(const WeightVector& weights, const FeatureVector& features) {
    if (weights.values.size() != features.values.size()) {
        throw LengthMismatchError("weight vector of length " +
                                  std::to_string(weights.values.size()) + " against " +
                                  std::to_string(features.values.size()) + " features");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.values.size(); ++i) {
        sum += weights.values[i] * features.values[i];
    }
    return sum;
}

double action_distance(const Plan& p1, const Plan& p2) {
    const std::set<std::string> a(p1.steps.begin(), p1.steps.end());
    const std::set<std::string> b(p2.steps.begin(), p2.steps.end());
    if (a.empty() && b.empty()) return 0.0;
    std::size_t common = 0;
    for (const auto& s : a) common += b.count(s);
    const std::size_t total = a.size() + b.size() - common;
    return 1.0 - static_cast<double>(common) / static_cast<double>(total);
}

double cost_distance_sq(const Model& m1, const Model& m2, double normalizer,
                        const PlannerOptions& options) {
    const double diff = optimal_cost(m1, options) - optimal_cost(m2, options);
    if (std::isnan(diff)) return 0.0;  // both unsolvable
    return diff * diff / normalizer;
}

std::array<double, 4> spatial_features(const SpatialContext& ctx,
                                       const std::vector<std::string>& applied_ids,
                                       const std::string& change_id) {
    auto locate = [&](const std::string& id) {
        auto it = ctx.coords.find(id);
        if (it == ctx.coords.end()) {
            throw UnknownContingencyError("no coordinates for change '" + id + "'");
        }
        return it->second;
    };
    const auto [fx, fy] = locate(change_id);

    int min_x = ctx.start_x, max_x = ctx.start_x;
    int min_y = ctx.start_y, max_y = ctx.start_y;
    bool first = true;
    for (const auto& id : applied_ids) {
        const auto [x, y] = locate(id);
        if (first) {
            min_x = max_x = x;
            min_y = max_y = y;
            first = false;
        } else {
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }
    const double w = ctx.width > 0 ? ctx.width : 1;
    const double h = ctx.height > 0 ? ctx.height : 1;
    return {std::max(0, min_x - fx) / w, std::max(0, min_y - fy) / h,
            std::max(0, fx - max_x) / w, std::max(0, fy - max_y) / h};
}

std::size_t ExplanationMdp::change_index(const std::string& id) const {
    for (std::size_t i = 0; i < changes_.size(); ++i) {
        if (changes_[i].id == id) return i;
    }
    throw InvalidTraceError("unknown change id '" + id + "'");
}

std::vector<std::string> ExplanationMdp::applied_ids(std::uint32_t mask) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < changes_.size(); ++i) {
        if (mask & (std::uint32_t(1) << i)) out.push_back(changes_[i].id);
    }
    return out;
}

Model ExplanationMdp::state_model(std::uint32_t mask) const {
    Model m = human_base_;
    for (std::size_t i = 0; i < changes_.size(); ++i) {
        if (mask & (std::uint32_t(1) << i)) m = apply_change(m, changes_[i]);
    }
    return m;
}

LatticeState ExplanationMdp::state(std::uint32_t mask) const {
    LatticeState s;
    s.mask = mask;
    s.applied = applied_ids(mask);
    s.model = state_model(mask);
    s.plan = plans_[mask];
    s.cost = costs_[mask];
    return s;
}

void ExplanationMdp::build_layers() {
    layers_.assign(changes_.size() + 1, {});
    for (std::uint32_t mask = 0; mask < state_count(); ++mask) {
        layers_[std::popcount(mask)].push_back(mask);
    }
}

ExplanationMdp ExplanationMdp::from_features(std::vector<std::string> change_ids,
                                             std::vector<FeatureVector> features) {
    ExplanationMdp mdp;
    for (auto& id : change_ids) {
        FeatureChange c{ChangeDirection::add, {}, std::move(id)};
        mdp.changes_.push_back(std::move(c));
    }
    std::sort(mdp.changes_.begin(), mdp.changes_.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    mdp.features_ = std::move(features);
    mdp.build_layers();
    return mdp;
}

ExplanationMdp ExplanationMdp::build(const ReconciliationProblem& problem,
                                     const std::vector<FeatureChange>& explanation,
                                     std::optional<SpatialContext> spatial,
                                     std::size_t limit) {
    if (explanation.size() > limit) {
        throw LatticeTooLargeError("explanation of " + std::to_string(explanation.size()) +
                                   " changes exceeds the lattice limit of " +
                                   std::to_string(limit));
    }
    ExplanationMdp mdp;
    mdp.changes_ = explanation;
    std::sort(mdp.changes_.begin(), mdp.changes_.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    mdp.human_base_ = problem.human_model;
    mdp.has_base_ = true;
    mdp.spatial_ = std::move(spatial);

    const std::size_t n = mdp.changes_.size();
    const std::uint32_t states = mdp.state_count();
    mdp.costs_.assign(states, kInfiniteCost);
    mdp.plans_.assign(states, Plan{});

    for (std::uint32_t mask = 0; mask < states; ++mask) {
        const Model m = mdp.state_model(mask);
        if (auto plan = optimal_plan(m, problem.planner_options)) {
            mdp.costs_[mask] = plan->total_cost;
            mdp.plans_[mask] = std::move(*plan);
        }
    }

    // Unsolvable states keep the empty plan; their cost surrogate is the
    // best solvable cost plus one grid traversal, kept finite so feature
    // vectors stay finite.
    double max_solvable = 0.0;
    bool any_solvable = false;
    for (std::uint32_t mask = 0; mask < states; ++mask) {
        if (mdp.costs_[mask] != kInfiniteCost) {
            max_solvable = std::max(max_solvable, mdp.costs_[mask]);
            any_solvable = true;
        }
    }
    const double traversal =
        mdp.spatial_ ? double(mdp.spatial_->width) * double(mdp.spatial_->height) : 1.0;
    const double surrogate = any_solvable ? max_solvable + traversal : traversal;
    auto effective_cost = [&](std::uint32_t mask) {
        return mdp.costs_[mask] == kInfiniteCost ? surrogate : mdp.costs_[mask];
    };

    double max_diff = 0.0;
    for (std::uint32_t mask = 0; mask < states; ++mask) {
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint32_t(1) << i)) continue;
            const std::uint32_t next = mask | (std::uint32_t(1) << i);
            max_diff = std::max(max_diff, std::fabs(effective_cost(next) - effective_cost(mask)));
        }
    }
    mdp.cost_normalizer_ = max_diff > 0.0 ? max_diff * max_diff : 1.0;

    mdp.features_.assign(std::size_t(states) * std::max<std::size_t>(n, 1), FeatureVector{});
    for (std::uint32_t mask = 0; mask < states; ++mask) {
        const auto applied = mdp.applied_ids(mask);
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint32_t(1) << i)) continue;
            const std::uint32_t next = mask | (std::uint32_t(1) << i);
            FeatureVector f;
            if (mdp.spatial_) {
                const auto s = spatial_features(*mdp.spatial_, applied, mdp.changes_[i].id);
                f[0] = s[0];
                f[1] = s[1];
                f[2] = s[2];
                f[3] = s[3];
            }
            const double diff = effective_cost(next) - effective_cost(mask);
            f[4] = diff * diff / mdp.cost_normalizer_;
            f[5] = action_distance(mdp.plans_[mask], mdp.plans_[next]);
            mdp.features_[mask * n + i] = f;
        }
    }
    mdp.build_layers();
    return mdp;
}

}  // namespace peg
