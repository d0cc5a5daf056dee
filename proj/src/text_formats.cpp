#include "peg/text_formats.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "peg/errors.hpp"

namespace peg {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::istringstream in(line);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

bool has_prefix(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

std::string join(const std::vector<std::string>& words, const std::string& sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += sep;
        out += words[i];
    }
    return out;
}

}  // namespace

Model parse_model(const std::string& text) {
    Model model;
    Action* current = nullptr;
    for (const auto& raw : split_lines(text)) {
        const std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (has_prefix(line, "action ")) {
            Action a;
            a.name = strip(line.substr(7));
            if (a.name.empty()) throw FormatError("action without a name");
            if (model.actions.count(a.name)) throw FormatError("duplicate action " + a.name);
            current = &model.actions.emplace(a.name, std::move(a)).first->second;
            continue;
        }
        if (colon == std::string::npos) throw FormatError("unparseable model line: " + line);
        const std::string key = strip(line.substr(0, colon));
        const auto words = split_words(line.substr(colon + 1));
        if (key == "predicates") {
            model.predicates.insert(words.begin(), words.end());
        } else if (key == "init") {
            model.init.insert(words.begin(), words.end());
        } else if (key == "goal") {
            model.goal.insert(words.begin(), words.end());
        } else if (key == "pre" || key == "soft" || key == "add" || key == "del" ||
                   key == "cost") {
            if (!current) throw FormatError("clause '" + key + "' outside an action block");
            if (key == "pre") current->preconditions.insert(words.begin(), words.end());
            else if (key == "soft") current->soft_preconditions.insert(words.begin(), words.end());
            else if (key == "add") current->add_effects.insert(words.begin(), words.end());
            else if (key == "del") current->del_effects.insert(words.begin(), words.end());
            else {
                if (words.size() != 1) throw FormatError("cost expects one value");
                current->costs = {parse_double(words[0])};
            }
        } else {
            throw FormatError("unknown model clause '" + key + "'");
        }
    }
    // Names used anywhere count as declared; the explicit list is optional.
    auto absorb = [&](const std::set<std::string>& s) {
        model.predicates.insert(s.begin(), s.end());
    };
    absorb(model.init);
    absorb(model.goal);
    for (const auto& [name, a] : model.actions) {
        absorb(a.preconditions);
        absorb(a.soft_preconditions);
        absorb(a.add_effects);
        absorb(a.del_effects);
    }
    model.validate();
    return model;
}

std::string emit_model(const Model& model) {
    std::string out;
    auto list = [](const std::set<std::string>& s) {
        return join(std::vector<std::string>(s.begin(), s.end()));
    };
    out += "predicates: " + list(model.predicates) + "\n";
    out += "init: " + list(model.init) + "\n";
    out += "goal: " + list(model.goal) + "\n";
    for (const auto& [name, a] : model.actions) {
        out += "action " + name + "\n";
        if (!a.preconditions.empty()) out += "  pre: " + list(a.preconditions) + "\n";
        if (!a.soft_preconditions.empty()) out += "  soft: " + list(a.soft_preconditions) + "\n";
        if (!a.add_effects.empty()) out += "  add: " + list(a.add_effects) + "\n";
        if (!a.del_effects.empty()) out += "  del: " + list(a.del_effects) + "\n";
        out += "  cost: " + format_double(a.effective_cost()) + "\n";
    }
    return out;
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    bool in_grid = true;
    for (const auto& raw : split_lines(text)) {
        if (in_grid && has_prefix(raw, "dangerous:")) in_grid = false;
        if (in_grid) {
            if (strip(raw).empty()) continue;
            s.grid.push_back(raw);
            continue;
        }
        const std::string line = strip(raw);
        if (line.empty()) continue;
        if (has_prefix(line, "dangerous:")) {
            for (const auto& w : split_words(line.substr(10))) {
                if (w.size() != 1) throw FormatError("dangerous letters must be single chars");
                s.dangerous[w[0]] = true;
            }
        } else if (has_prefix(line, "id:")) {
            s.id = strip(line.substr(3));
        } else {
            throw FormatError("unexpected scenario line: " + line);
        }
    }
    if (s.id.empty()) throw FormatError("scenario without an id line");
    s.validate();
    return s;
}

std::string emit_scenario(const Scenario& scenario) {
    std::string out;
    for (const auto& row : scenario.grid) out += row + "\n";
    std::vector<std::string> letters;
    for (char c : scenario.dangerous_letters()) letters.push_back(std::string(1, c));
    out += "dangerous: " + join(letters) + "\n";
    out += "id: " + scenario.id + "\n";
    return out;
}

std::vector<Trace> parse_traces(const std::string& text) {
    std::vector<Trace> out;
    TraceProvenance provenance = TraceProvenance::human;
    for (const auto& raw : split_lines(text)) {
        const std::string line = strip(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("provenance: synthetic") != std::string::npos) {
                provenance = TraceProvenance::synthetic;
            }
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw FormatError("trace line without scenario id");
        Trace t;
        t.scenario_id = strip(line.substr(0, colon));
        t.steps = split_words(line.substr(colon + 1));
        t.provenance = provenance;
        if (t.scenario_id.empty() || t.steps.empty()) {
            throw FormatError("malformed trace line: " + line);
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::string emit_traces(const std::vector<Trace>& traces) {
    std::string out;
    const bool synthetic = !traces.empty() &&
                           traces.front().provenance == TraceProvenance::synthetic;
    if (synthetic) out += "# provenance: synthetic\n";
    for (const auto& t : traces) {
        out += t.scenario_id + ": " + join(t.steps) + "\n";
    }
    return out;
}

WeightVector parse_weights(const std::string& text) {
    WeightVector w;
    w.feature_names.clear();
    bool header_seen = false;
    for (const auto& raw : split_lines(text)) {
        const std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "peg-weights v1") throw FormatError("not a peg-weights file");
            header_seen = true;
            continue;
        }
        if (has_prefix(line, "seed:")) {
            w.seed = std::stoull(strip(line.substr(5)));
        } else if (has_prefix(line, "iterations:")) {
            w.iterations = std::stol(strip(line.substr(11)));
        } else if (has_prefix(line, "converged:")) {
            w.converged = strip(line.substr(10)) == "true";
        } else if (has_prefix(line, "scenarios:")) {
            w.scenario_ids = split_words(line.substr(10));
        } else if (line == "feature\traw\tnormalized") {
            continue;
        } else {
            const auto words = split_words(line);
            if (words.size() != 3) throw FormatError("malformed weights line: " + line);
            w.feature_names.push_back(words[0]);
            w.values.push_back(parse_double(words[1]));
        }
    }
    if (w.values.size() != kFeatureCount) {
        throw FormatError("weights file must list exactly " + std::to_string(kFeatureCount) +
                          " features");
    }
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (w.feature_names[i] != kFeatureNames[i]) {
            throw FormatError("unexpected feature '" + w.feature_names[i] + "', want '" +
                              kFeatureNames[i] + "'");
        }
    }
    return w;
}

std::string emit_weights(const WeightVector& weights) {
    if (weights.values.size() != kFeatureCount) {
        throw LengthMismatchError("weight vector must have " + std::to_string(kFeatureCount) +
                                  " entries");
    }
    std::string out = "peg-weights v1\n";
    out += "seed: " + std::to_string(weights.seed) + "\n";
    out += "iterations: " + std::to_string(weights.iterations) + "\n";
    out += std::string("converged: ") + (weights.converged ? "true" : "false") + "\n";
    out += "scenarios: " + join(weights.scenario_ids) + "\n";
    out += "feature\traw\tnormalized\n";
    const auto normalized = weights.normalized();
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        out += std::string(kFeatureNames[i]) + "\t" + format_double(weights.values[i]) + "\t" +
               format_double(normalized[i]) + "\n";
    }
    return out;
}

OrderingRecord parse_ordering(const std::string& text) {
    OrderingRecord r;
    bool header_seen = false;
    for (const auto& raw : split_lines(text)) {
        const std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "peg-ordering v1") throw FormatError("not a peg-ordering file");
            header_seen = true;
            continue;
        }
        if (has_prefix(line, "scenario:")) {
            r.scenario_id = strip(line.substr(9));
        } else if (has_prefix(line, "method:")) {
            r.method = strip(line.substr(7));
        } else if (has_prefix(line, "set:")) {
            r.lattice_set = strip(line.substr(4));
        } else if (has_prefix(line, "seed:")) {
            r.seed = std::stoull(strip(line.substr(5)));
        } else if (has_prefix(line, "total_reward:")) {
            r.total_reward = parse_double(strip(line.substr(13)));
        } else if (has_prefix(line, "total_action_distance:")) {
            r.total_action_distance = parse_double(strip(line.substr(22)));
        } else if (line == "step\tchange\treward\taction_distance") {
            continue;
        } else {
            const auto words = split_words(line);
            if (words.size() != 4) throw FormatError("malformed ordering line: " + line);
            r.steps.push_back(words[1]);
            r.rewards.push_back(parse_double(words[2]));
            r.action_distances.push_back(parse_double(words[3]));
        }
    }
    return r;
}

std::string emit_ordering(const OrderingRecord& record) {
    std::string out = "peg-ordering v1\n";
    out += "scenario: " + record.scenario_id + "\n";
    out += "method: " + record.method + "\n";
    out += "set: " + record.lattice_set + "\n";
    out += "seed: " + std::to_string(record.seed) + "\n";
    out += "step\tchange\treward\taction_distance\n";
    for (std::size_t i = 0; i < record.steps.size(); ++i) {
        out += std::to_string(i + 1) + "\t" + record.steps[i] + "\t" +
               format_double(record.rewards[i]) + "\t" +
               format_double(record.action_distances[i]) + "\n";
    }
    out += "total_reward: " + format_double(record.total_reward) + "\n";
    out += "total_action_distance: " + format_double(record.total_action_distance) + "\n";
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

}  // namespace peg
