#include "peg/model.hpp"

#include <algorithm>
#include <charconv>
#include <system_error>

#include "peg/errors.hpp"

namespace peg {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw FormatError("not a number: '" + s + "'");
    }
    return v;
}

void Model::validate() const {
    auto check = [&](const std::set<std::string>& names, const std::string& where) {
        for (const auto& p : names) {
            if (!predicates.count(p)) {
                throw FormatError("undeclared predicate '" + p + "' in " + where);
            }
        }
    };
    check(init, "init");
    check(goal, "goal");
    for (const auto& [name, a] : actions) {
        check(a.preconditions, "pre of " + name);
        check(a.soft_preconditions, "soft of " + name);
        check(a.add_effects, "add of " + name);
        check(a.del_effects, "del of " + name);
        std::vector<std::string> overlap;
        std::set_intersection(a.add_effects.begin(), a.add_effects.end(),
                              a.del_effects.begin(), a.del_effects.end(),
                              std::back_inserter(overlap));
        if (!overlap.empty()) {
            throw FormatError("add/del effects of " + name + " overlap on '" + overlap[0] + "'");
        }
        for (double c : a.costs) {
            if (c < 0.0) throw FormatError("negative cost for " + name);
        }
    }
}

std::string ModelFeature::id() const {
    switch (kind) {
        case FeatureKind::init_has:
            return "init-has-" + predicate;
        case FeatureKind::goal_has:
            return "goal-has-" + predicate;
        case FeatureKind::action_precondition:
            return action + "-has-precondition-" + predicate;
        case FeatureKind::action_soft_precondition:
            return action + "-has-soft-precondition-" + predicate;
        case FeatureKind::action_add_effect:
            return action + "-has-add-effect-" + predicate;
        case FeatureKind::action_del_effect:
            return action + "-has-del-effect-" + predicate;
        case FeatureKind::action_cost:
            return action + "-has-cost-" + format_double(cost_value);
    }
    return "?";
}

FeatureChange make_change(ChangeDirection direction, ModelFeature feature) {
    FeatureChange c{direction, std::move(feature), ""};
    c.id = c.feature.id();
    return c;
}

std::set<ModelFeature> gamma(const Model& model) {
    std::set<ModelFeature> out;
    for (const auto& p : model.init) {
        out.insert({FeatureKind::init_has, "", p});
    }
    for (const auto& p : model.goal) {
        out.insert({FeatureKind::goal_has, "", p});
    }
    for (const auto& [name, a] : model.actions) {
        for (const auto& p : a.preconditions) {
            out.insert({FeatureKind::action_precondition, name, p});
        }
        for (const auto& p : a.soft_preconditions) {
            out.insert({FeatureKind::action_soft_precondition, name, p});
        }
        for (const auto& p : a.add_effects) {
            out.insert({FeatureKind::action_add_effect, name, p});
        }
        for (const auto& p : a.del_effects) {
            out.insert({FeatureKind::action_del_effect, name, p});
        }
        for (double c : a.costs) {
            out.insert({FeatureKind::action_cost, name, "", c});
        }
    }
    return out;
}

std::vector<FeatureChange> delta(const Model& m1, const Model& m2) {
    const auto f1 = gamma(m1);
    const auto f2 = gamma(m2);
    std::vector<FeatureChange> out;
    for (const auto& f : f1) {
        if (!f2.count(f)) out.push_back(make_change(ChangeDirection::add, f));
    }
    for (const auto& f : f2) {
        if (!f1.count(f)) out.push_back(make_change(ChangeDirection::remove, f));
    }
    std::sort(out.begin(), out.end(),
              [](const FeatureChange& a, const FeatureChange& b) { return a.id < b.id; });
    return out;
}

std::size_t model_distance_count(const Model& m1, const Model& m2) {
    return delta(m1, m2).size();
}

namespace {

void insert_or_throw(std::set<std::string>& s, const std::string& p, const std::string& what) {
    if (!s.insert(p).second) {
        throw InapplicableChangeError("add of already-present feature: " + what);
    }
}

void erase_or_throw(std::set<std::string>& s, const std::string& p, const std::string& what) {
    if (s.erase(p) == 0) {
        throw InapplicableChangeError("remove of absent feature: " + what);
    }
}

}  // namespace

Model apply_change(const Model& model, const FeatureChange& change) {
    Model out = model;
    const ModelFeature& f = change.feature;
    const bool adding = change.direction == ChangeDirection::add;
    const std::string what = f.id();

    if (!f.predicate.empty()) out.predicates.insert(f.predicate);

    switch (f.kind) {
        case FeatureKind::init_has:
            adding ? insert_or_throw(out.init, f.predicate, what)
                   : erase_or_throw(out.init, f.predicate, what);
            break;
        case FeatureKind::goal_has:
            adding ? insert_or_throw(out.goal, f.predicate, what)
                   : erase_or_throw(out.goal, f.predicate, what);
            break;
        default: {
            auto it = out.actions.find(f.action);
            if (it == out.actions.end()) {
                if (!adding) {
                    throw InapplicableChangeError("remove of absent feature: " + what);
                }
                Action fresh;
                fresh.name = f.action;
                fresh.costs.clear();
                it = out.actions.emplace(f.action, std::move(fresh)).first;
            }
            Action& a = it->second;
            switch (f.kind) {
                case FeatureKind::action_precondition:
                    adding ? insert_or_throw(a.preconditions, f.predicate, what)
                           : erase_or_throw(a.preconditions, f.predicate, what);
                    break;
                case FeatureKind::action_soft_precondition:
                    adding ? insert_or_throw(a.soft_preconditions, f.predicate, what)
                           : erase_or_throw(a.soft_preconditions, f.predicate, what);
                    break;
                case FeatureKind::action_add_effect:
                    adding ? insert_or_throw(a.add_effects, f.predicate, what)
                           : erase_or_throw(a.add_effects, f.predicate, what);
                    break;
                case FeatureKind::action_del_effect:
                    adding ? insert_or_throw(a.del_effects, f.predicate, what)
                           : erase_or_throw(a.del_effects, f.predicate, what);
                    break;
                case FeatureKind::action_cost:
                    if (adding) {
                        if (!a.costs.insert(f.cost_value).second) {
                            throw InapplicableChangeError("add of already-present feature: " + what);
                        }
                    } else if (a.costs.erase(f.cost_value) == 0) {
                        throw InapplicableChangeError("remove of absent feature: " + what);
                    }
                    break;
                default:
                    break;
            }
            // An action stripped of its last feature is gone from the model;
            // keeping the empty shell would break gamma injectivity.
            if (a.empty()) out.actions.erase(it);
            break;
        }
    }
    return out;
}

Model apply_changes(const Model& model, const std::vector<FeatureChange>& changes) {
    Model out = model;
    for (const auto& c : changes) out = apply_change(out, c);
    return out;
}

}  // namespace peg
