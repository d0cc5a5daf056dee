// peg: generate escape-room scenarios, learn a per-step explanation effort
// metric from ordered traces, and order complete explanations with it.
//
// Pipeline: generate -> trace-gen -> train -> explain / evaluate; mce
// computes minimally complete explanations for scenarios or model pairs.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "peg/errors.hpp"
#include "peg/escape_room.hpp"
#include "peg/irl.hpp"
#include "peg/lattice.hpp"
#include "peg/model.hpp"
#include "peg/ordering.hpp"
#include "peg/planner.hpp"
#include "peg/reconciliation.hpp"
#include "peg/rng.hpp"
#include "peg/text_formats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitData = 4;

// Flag echo for the manifest, collected as the commands parse.
using ConfigEcho = std::map<std::string, std::string>;

void write_manifest(const std::string& command, const fs::path& manifest_path,
                    const ConfigEcho& config, std::uint64_t seed,
                    const std::vector<fs::path>& artifacts) {
    json m;
    m["tool"] = "peg";
    m["version"] = kVersion;
    m["command"] = command;
    m["seed"] = seed;
    m["config"] = config;
    json files = json::array();
    for (const auto& a : artifacts) {
        files.push_back(fs::relative(a, manifest_path.parent_path()).generic_string());
    }
    m["artifacts"] = files;
    // Wall-clock stamps would break byte-identical reruns, so the stamp is
    // opt-in via the reproducible-builds convention.
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        m["generated_at"] = std::string(epoch);
    }
    peg::write_file_atomic(manifest_path.string(), m.dump(2) + "\n");
}

std::vector<fs::path> expand_scenario_paths(const std::vector<std::string>& inputs) {
    std::vector<fs::path> out;
    for (const auto& input : inputs) {
        const fs::path p(input);
        if (fs::is_directory(p)) {
            for (const auto& entry : fs::directory_iterator(p)) {
                if (entry.path().extension() == ".scenario") out.push_back(entry.path());
            }
        } else {
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<peg::Scenario> load_scenarios(const std::vector<std::string>& inputs) {
    std::vector<peg::Scenario> out;
    for (const auto& path : expand_scenario_paths(inputs)) {
        out.push_back(peg::parse_scenario(peg::read_file(path.string())));
    }
    return out;
}

peg::LatticeScope scope_for(const std::string& set) {
    return set == "marked" ? peg::LatticeScope::all_marked
                           : peg::LatticeScope::dangerous_only;
}

// Explanation set selection shared by explain / evaluate / train:
// `delta` orders every dangerous contingency (the complete explanation the
// escape-room lattice is built over), `mce` the minimal complete subset,
// `marked` all marked cells including safety confirmations.
peg::ExplanationMdp build_lattice(const peg::Scenario& scenario, const std::string& set,
                                  std::size_t limit) {
    const peg::CompiledPair compiled = compile_scenario(scenario, scope_for(set));
    std::vector<peg::FeatureChange> explanation;
    if (set == "mce") {
        auto mce = peg::minimally_complete_explanation(compiled.problem(), limit);
        explanation = with_catalog_ids(compiled, mce.changes);
    } else {
        explanation = compiled.explanation_changes();
    }
    return peg::ExplanationMdp::build(compiled.problem(), explanation,
                                      spatial_context(scenario, compiled), limit);
}

struct GenerateArgs {
    int count = 8;
    std::string grid = "10x10";
    int contingencies = 7;
    double danger_prob = 0.5;
    double wall_density = 0.3;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    peg::GeneratorConfig config;
    config.count = args.count;
    const auto x = args.grid.find('x');
    if (x == std::string::npos) throw peg::FormatError("--grid expects WxH, e.g. 10x10");
    config.width = std::stoi(args.grid.substr(0, x));
    config.height = std::stoi(args.grid.substr(x + 1));
    config.contingency_count = args.contingencies;
    config.danger_probability = args.danger_prob;
    config.wall_density = args.wall_density;
    config.seed = args.seed;

    const auto scenarios = peg::generate_scenarios(config);
    const fs::path out_dir(args.out);
    fs::create_directories(out_dir);
    std::vector<fs::path> artifacts;
    for (const auto& s : scenarios) {
        const fs::path path = out_dir / (s.id + ".scenario");
        peg::write_file_atomic(path.string(), peg::emit_scenario(s));
        artifacts.push_back(path);
    }
    ConfigEcho echo{{"count", std::to_string(args.count)},
                    {"grid", args.grid},
                    {"contingencies", std::to_string(args.contingencies)},
                    {"danger-prob", peg::format_double(args.danger_prob)},
                    {"wall-density", peg::format_double(args.wall_density)},
                    {"out", args.out}};
    write_manifest("generate", out_dir / "manifest.json", echo, args.seed, artifacts);
    std::cout << "generated " << scenarios.size() << " scenario(s) in " << args.out << "\n";
    return 0;
}

struct TraceGenArgs {
    std::vector<std::string> scenarios;
    std::string weights;
    int per_scenario = 5;
    std::uint64_t seed = 0;
    std::string set = "delta";
    std::string out;
};

int cmd_trace_gen(const TraceGenArgs& args) {
    const auto scenarios = load_scenarios(args.scenarios);
    const auto weights = peg::parse_weights(peg::read_file(args.weights));
    const auto traces = peg::synthesize_traces(scenarios, weights, args.per_scenario,
                                               args.seed, scope_for(args.set));
    peg::write_file_atomic(args.out, peg::emit_traces(traces));
    ConfigEcho echo{{"weights", args.weights},
                    {"per-scenario", std::to_string(args.per_scenario)},
                    {"set", args.set},
                    {"out", args.out}};
    write_manifest("trace-gen", args.out + ".manifest.json", echo, args.seed, {args.out});
    std::cout << "wrote " << traces.size() << " trace(s) to " << args.out << "\n";
    return 0;
}

struct TrainArgs {
    std::string traces;
    std::vector<std::string> scenarios;
    double learning_rate = 0.05;
    long iterations = 500;
    double tolerance = 1e-5;
    long sample_count = 1000;
    std::string mu1 = "exact";
    std::uint64_t seed = 0;
    std::string set = "delta";
    std::size_t lattice_limit = peg::ExplanationMdp::kDefaultLimit;
    std::string out;
    std::string log;
};

int cmd_train(const TrainArgs& args) {
    const auto traces = peg::parse_traces(peg::read_file(args.traces));
    const auto scenarios = load_scenarios(args.scenarios);

    std::map<std::string, peg::ExplanationMdp> lattices;
    for (const auto& s : scenarios) {
        lattices.emplace(s.id, build_lattice(s, args.set, args.lattice_limit));
    }
    std::map<std::string, const peg::ExplanationMdp*> mdps;
    for (const auto& [id, mdp] : lattices) mdps.emplace(id, &mdp);

    peg::TrainingConfig config;
    config.learning_rate = args.learning_rate;
    config.iterations = args.iterations;
    config.convergence_tolerance = args.tolerance;
    config.sample_count = args.sample_count;
    config.seed = args.seed;
    config.mu1_mode = args.mu1 == "sampled" ? peg::Mu1Mode::sampled : peg::Mu1Mode::exact;

    const peg::IrlResult result = peg::train(traces, mdps, config);
    peg::write_file_atomic(args.out, peg::emit_weights(result.weights));

    const std::string log_path = args.log.empty() ? args.out + ".log" : args.log;
    std::string log_text = "iteration\tlog_likelihood\tgradient_max_norm\n";
    for (std::size_t i = 0; i < result.log_likelihood_history.size(); ++i) {
        log_text += std::to_string(i) + "\t" +
                    peg::format_double(result.log_likelihood_history[i]) + "\t" +
                    peg::format_double(result.gradient_norm_history[i]) + "\n";
    }
    peg::write_file_atomic(log_path, log_text);

    ConfigEcho echo{{"traces", args.traces},
                    {"lr", peg::format_double(args.learning_rate)},
                    {"iterations", std::to_string(args.iterations)},
                    {"tolerance", peg::format_double(args.tolerance)},
                    {"sample-count", std::to_string(args.sample_count)},
                    {"mu1", args.mu1},
                    {"set", args.set},
                    {"out", args.out}};
    write_manifest("train", args.out + ".manifest.json", echo, args.seed,
                   {args.out, log_path});
    std::cout << "trained on " << traces.size() << " trace(s); converged="
              << (result.converged ? "true" : "false") << " after "
              << result.weights.iterations << " iteration(s)\n";
    return 0;
}

struct ExplainArgs {
    std::string scenario;
    std::string weights;
    std::string method = "peg";
    std::uint64_t seed = 0;
    std::string set = "delta";
    std::size_t lattice_limit = peg::ExplanationMdp::kDefaultLimit;
    std::string out;
};

peg::OrderingRecord make_record(const peg::ExplanationMdp& mdp,
                                const peg::WeightVector& weights,
                                const peg::OrderedExplanation& order,
                                const std::string& scenario_id, const std::string& set,
                                std::uint64_t seed) {
    peg::OrderingRecord record;
    record.scenario_id = scenario_id;
    record.method = peg::to_string(order.method);
    record.lattice_set = set;
    record.seed = seed;
    record.steps = order.step_ids();
    record.rewards = step_rewards(mdp, weights, record.steps);
    const auto profile = replanning_profile(order, mdp);
    record.action_distances = profile.step_distance;
    record.total_reward = order.total_reward;
    record.total_action_distance = profile.total;
    return record;
}

int cmd_explain(const ExplainArgs& args) {
    const auto scenario = peg::parse_scenario(peg::read_file(args.scenario));
    const auto weights = peg::parse_weights(peg::read_file(args.weights));
    const auto mdp = build_lattice(scenario, args.set, args.lattice_limit);

    peg::OrderedExplanation order;
    if (args.method == "peg") {
        order = peg_order(mdp, weights);
    } else if (args.method == "random") {
        order = random_order(mdp, weights, args.seed);
    } else if (args.method == "manhattan") {
        order = manhattan_order(mdp, weights);
    } else {
        throw peg::FormatError("unknown method '" + args.method + "'");
    }
    order.scenario_id = scenario.id;

    const auto record = make_record(mdp, weights, order, scenario.id, args.set, args.seed);
    peg::write_file_atomic(args.out, peg::emit_ordering(record));
    ConfigEcho echo{{"scenario", args.scenario},
                    {"weights", args.weights},
                    {"method", args.method},
                    {"set", args.set},
                    {"out", args.out}};
    write_manifest("explain", args.out + ".manifest.json", echo, args.seed, {args.out});
    std::cout << "wrote " << record.steps.size() << "-step " << args.method
              << " ordering to " << args.out << "\n";
    return 0;
}

struct EvaluateArgs {
    std::vector<std::string> scenarios;
    std::string weights;
    std::string methods = "peg,random,manhattan";
    int random_repeats = 50;
    std::uint64_t seed = 0;
    std::string set = "delta";
    std::size_t lattice_limit = peg::ExplanationMdp::kDefaultLimit;
    std::string out;
};

int cmd_evaluate(const EvaluateArgs& args) {
    const auto scenarios = load_scenarios(args.scenarios);
    const auto weights = peg::parse_weights(peg::read_file(args.weights));

    std::vector<std::string> methods;
    {
        std::string m;
        for (char c : args.methods + ",") {
            if (c == ',') {
                if (!m.empty()) methods.push_back(m);
                m.clear();
            } else {
                m += c;
            }
        }
    }

    std::string report = "peg-report v1\n";
    report += "seed: " + std::to_string(args.seed) + "\n";
    report += "methods: ";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        report += (i ? " " : "") + methods[i];
    }
    report += "\n";
    report += "random_repeats: " + std::to_string(args.random_repeats) + "\n";
    report += "scenarios: " + std::to_string(scenarios.size()) + "\n";
    report += "record\tscenario\tmethod\tstep\taction_distance\tcumulative\n";

    bool any_failure = false;
    std::map<std::string, std::vector<double>> totals_by_method;
    peg::Rng root(args.seed);

    for (std::size_t index = 0; index < scenarios.size(); ++index) {
        const auto& scenario = scenarios[index];
        try {
            const auto mdp = build_lattice(scenario, args.set, args.lattice_limit);
            for (const auto& method : methods) {
                std::vector<double> mean_steps;
                double mean_total = 0.0;
                if (method == "random") {
                    peg::Rng rng = root.child(index);
                    const int repeats = std::max(1, args.random_repeats);
                    mean_steps.assign(mdp.size(), 0.0);
                    for (int r = 0; r < repeats; ++r) {
                        const auto order = random_order(mdp, weights, rng.next());
                        const auto profile = replanning_profile(order, mdp);
                        for (std::size_t s = 0; s < profile.step_distance.size(); ++s) {
                            mean_steps[s] += profile.step_distance[s];
                        }
                        mean_total += profile.total;
                    }
                    for (double& v : mean_steps) v /= repeats;
                    mean_total /= repeats;
                } else {
                    peg::OrderedExplanation order;
                    if (method == "peg") order = peg_order(mdp, weights);
                    else if (method == "manhattan") order = manhattan_order(mdp, weights);
                    else throw peg::FormatError("unknown method '" + method + "'");
                    const auto profile = replanning_profile(order, mdp);
                    mean_steps = profile.step_distance;
                    mean_total = profile.total;
                }
                double cumulative = 0.0;
                for (std::size_t s = 0; s < mean_steps.size(); ++s) {
                    cumulative += mean_steps[s];
                    report += "profile\t" + scenario.id + "\t" + method + "\t" +
                              std::to_string(s + 1) + "\t" + peg::format_double(mean_steps[s]) +
                              "\t" + peg::format_double(cumulative) + "\n";
                }
                report += "total\t" + scenario.id + "\t" + method + "\t-\t-\t" +
                          peg::format_double(mean_total) + "\n";
                totals_by_method[method].push_back(mean_total);
            }
        } catch (const peg::PegError& e) {
            any_failure = true;
            report += "error\t" + scenario.id + "\t-\t-\t-\t" + std::string(e.what()) + "\n";
        }
    }

    std::map<std::string, double> means;
    for (const auto& method : methods) {
        const auto& totals = totals_by_method[method];
        double mean = 0.0;
        for (double t : totals) mean += t;
        if (!totals.empty()) mean /= static_cast<double>(totals.size());
        means[method] = mean;
        report += "mean\t-\t" + method + "\t-\t-\t" + peg::format_double(mean) + "\n";
    }
    for (const auto& method : methods) {
        if (method == "peg" || !means.count("peg")) continue;
        report += "paired\tpeg_vs_" + method + "\t-\t-\t" +
                  peg::format_double(means.at("peg")) + "\t" +
                  peg::format_double(means.at(method)) + "\n";
    }

    peg::write_file_atomic(args.out, report);
    ConfigEcho echo{{"weights", args.weights},
                    {"methods", args.methods},
                    {"random-repeats", std::to_string(args.random_repeats)},
                    {"set", args.set},
                    {"out", args.out}};
    write_manifest("evaluate", args.out + ".manifest.json", echo, args.seed, {args.out});
    std::cout << "wrote evaluation report to " << args.out << "\n";
    if (any_failure) {
        std::cerr << "one or more scenarios failed; see failure markers in the report\n";
        return kExitDomain;
    }
    return 0;
}

struct MceArgs {
    std::string scenario;
    std::string robot_model;
    std::string human_model;
    double soft_penalty = 0.0;
    std::size_t limit = 16;
    std::string out;
};

int cmd_mce(const MceArgs& args) {
    peg::ReconciliationProblem problem;
    std::string subject;
    std::optional<peg::CompiledPair> compiled;
    if (!args.scenario.empty()) {
        const auto scenario = peg::parse_scenario(peg::read_file(args.scenario));
        compiled = compile_scenario(scenario);
        problem = compiled->problem();
        subject = scenario.id;
    } else {
        if (args.robot_model.empty() || args.human_model.empty()) {
            throw peg::FormatError("need --scenario or both --robot-model and --human-model");
        }
        peg::PlannerOptions options;
        options.soft_precondition_penalty = args.soft_penalty;
        problem = peg::ReconciliationProblem::from_models(
            peg::parse_model(peg::read_file(args.robot_model)),
            peg::parse_model(peg::read_file(args.human_model)), options);
        subject = fs::path(args.robot_model).stem().string() + "/" +
                  fs::path(args.human_model).stem().string();
    }
    if (!problem.plan_is_optimal()) {
        throw peg::InvalidTraceError("robot plan is not optimal in the robot model");
    }

    auto mce = peg::minimally_complete_explanation(problem, args.limit);
    if (compiled) mce.changes = with_catalog_ids(*compiled, mce.changes);
    const double gap_before = problem.gap_in(problem.human_model);
    const double gap_after = problem.gap_in(apply_changes(problem.human_model, mce.changes));
    const std::size_t delta_size = model_distance_count(problem.robot_model, problem.human_model);

    std::string out = "peg-mce v1\n";
    out += "subject: " + subject + "\n";
    out += "delta_size: " + std::to_string(delta_size) + "\n";
    out += "gap_before: " + peg::format_double(gap_before) + "\n";
    out += "gap_after: " + peg::format_double(gap_after) + "\n";
    std::string ids;
    for (const auto& c : mce.changes) ids += (ids.empty() ? "" : " ") + c.id;
    out += ids.empty() ? "changes:\n" : "changes: " + ids + "\n";
    for (const auto& c : mce.changes) {
        out += "change\t" + c.id + "\t" +
               (c.direction == peg::ChangeDirection::add ? "add" : "remove") + "\t" +
               c.feature.id() + "\n";
    }
    peg::write_file_atomic(args.out, out);

    ConfigEcho echo{{"scenario", args.scenario},
                    {"robot-model", args.robot_model},
                    {"human-model", args.human_model},
                    {"soft-penalty", peg::format_double(args.soft_penalty)},
                    {"out", args.out}};
    write_manifest("mce", args.out + ".manifest.json", echo, 0, {args.out});
    std::cout << "wrote MCE of " << mce.changes.size() << " change(s) to " << args.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"progressive explanation generation for planning-model differences"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "generate escape-room scenarios");
    generate->add_option("--count", gen.count, "number of scenarios")->capture_default_str();
    generate->add_option("--grid", gen.grid, "grid size WxH")->capture_default_str();
    generate->add_option("--contingencies", gen.contingencies, "marked cells per scenario")
        ->capture_default_str();
    generate->add_option("--danger-prob", gen.danger_prob, "danger probability per marked cell")
        ->capture_default_str();
    generate->add_option("--wall-density", gen.wall_density, "wall probability per cell")
        ->capture_default_str();
    generate->add_option("--seed", gen.seed, "RNG seed")->envname("PEG_SEED");
    generate->add_option("--out", gen.out, "output directory")->required();

    TraceGenArgs tg;
    auto* trace_gen = app.add_subcommand("trace-gen", "synthesize expert traces");
    trace_gen->add_option("--scenarios", tg.scenarios, "scenario files or directories")
        ->required()
        ->check(CLI::ExistingPath);
    trace_gen->add_option("--weights", tg.weights, "ground-truth weights file")
        ->required()
        ->check(CLI::ExistingFile);
    trace_gen->add_option("--per-scenario", tg.per_scenario, "traces per scenario")
        ->capture_default_str();
    trace_gen->add_option("--seed", tg.seed, "RNG seed")->envname("PEG_SEED");
    trace_gen->add_option("--set", tg.set, "explanation set: delta|marked")
        ->check(CLI::IsMember({"delta", "marked"}))
        ->capture_default_str();
    trace_gen->add_option("--out", tg.out, "output trace file")->required();

    TrainArgs tr;
    auto* train = app.add_subcommand("train", "learn the effort metric from traces");
    train->add_option("--traces", tr.traces, "trace file")->required()->check(CLI::ExistingFile);
    train->add_option("--scenarios", tr.scenarios, "scenario files or directories")
        ->required()
        ->check(CLI::ExistingPath);
    train->add_option("--lr", tr.learning_rate, "learning rate")->capture_default_str();
    train->add_option("--iterations", tr.iterations, "iteration cap")->capture_default_str();
    train->add_option("--tolerance", tr.tolerance, "gradient max-norm tolerance")
        ->capture_default_str();
    train->add_option("--sample-count", tr.sample_count, "rollouts for sampled mu1")
        ->capture_default_str();
    train->add_option("--mu1", tr.mu1, "mu1 estimation: exact|sampled")
        ->check(CLI::IsMember({"exact", "sampled"}))
        ->capture_default_str();
    train->add_option("--seed", tr.seed, "RNG seed")->envname("PEG_SEED");
    train->add_option("--set", tr.set, "explanation set: delta|mce|marked")
        ->check(CLI::IsMember({"delta", "mce", "marked"}))
        ->capture_default_str();
    train->add_option("--lattice-limit", tr.lattice_limit, "max changes per lattice")
        ->capture_default_str();
    train->add_option("--out", tr.out, "output weights file")->required();
    train->add_option("--log", tr.log, "training log path (default <out>.log)");

    ExplainArgs ex;
    auto* explain = app.add_subcommand("explain", "order one scenario's explanation");
    explain->add_option("--scenario", ex.scenario, "scenario file")
        ->required()
        ->check(CLI::ExistingFile);
    explain->add_option("--weights", ex.weights, "weights file")
        ->required()
        ->check(CLI::ExistingFile);
    explain->add_option("--method", ex.method, "peg|random|manhattan")
        ->check(CLI::IsMember({"peg", "random", "manhattan"}))
        ->capture_default_str();
    explain->add_option("--seed", ex.seed, "RNG seed (random method)")->envname("PEG_SEED");
    explain->add_option("--set", ex.set, "explanation set: delta|mce|marked")
        ->check(CLI::IsMember({"delta", "mce", "marked"}))
        ->capture_default_str();
    explain->add_option("--lattice-limit", ex.lattice_limit, "max changes per lattice")
        ->capture_default_str();
    explain->add_option("--out", ex.out, "output ordering file")->required();

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand("evaluate", "compare orderings with the replanning oracle");
    evaluate->add_option("--scenarios", ev.scenarios, "scenario files or directories")
        ->required()
        ->check(CLI::ExistingPath);
    evaluate->add_option("--weights", ev.weights, "weights file")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate->add_option("--methods", ev.methods, "comma-separated methods")
        ->capture_default_str();
    evaluate->add_option("--random-repeats", ev.random_repeats, "permutations per scenario")
        ->capture_default_str();
    evaluate->add_option("--seed", ev.seed, "RNG seed")->envname("PEG_SEED");
    evaluate->add_option("--set", ev.set, "explanation set: delta|mce|marked")
        ->check(CLI::IsMember({"delta", "mce", "marked"}))
        ->capture_default_str();
    evaluate->add_option("--lattice-limit", ev.lattice_limit, "max changes per lattice")
        ->capture_default_str();
    evaluate->add_option("--out", ev.out, "output report file")->required();

    MceArgs mc;
    auto* mce = app.add_subcommand("mce", "minimally complete explanation");
    mce->add_option("--scenario", mc.scenario, "scenario file")->check(CLI::ExistingFile);
    mce->add_option("--robot-model", mc.robot_model, "robot model file")
        ->check(CLI::ExistingFile);
    mce->add_option("--human-model", mc.human_model, "human model file")
        ->check(CLI::ExistingFile);
    mce->add_option("--soft-penalty", mc.soft_penalty, "soft precondition violation penalty")
        ->capture_default_str();
    mce->add_option("--limit", mc.limit, "max delta size")->capture_default_str();
    mce->add_option("--out", mc.out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*generate) return cmd_generate(gen);
        if (*trace_gen) return cmd_trace_gen(tg);
        if (*train) return cmd_train(tr);
        if (*explain) return cmd_explain(ex);
        if (*evaluate) return cmd_evaluate(ev);
        if (*mce) return cmd_mce(mc);
    } catch (const peg::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const peg::InvalidTraceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const peg::NoCompleteExplanationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const peg::InapplicableChangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const peg::PegError& e) {
        // LatticeTooLarge, GenerationExhausted, UnsolvableScenario, Diverged.
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
