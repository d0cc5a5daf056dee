// Acceptance suite: one check per release criterion, each printed as a
// single [PASS]/[FAIL] line. Exits nonzero if any criterion fails.
//
// Usage: peg_acceptance --cli <peg binary> --data <fixture dir>
//                       --work <scratch dir> [--only N]

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "peg/errors.hpp"
#include "peg/escape_room.hpp"
#include "peg/irl.hpp"
#include "peg/lattice.hpp"
#include "peg/ordering.hpp"
#include "peg/planner.hpp"
#include "peg/reconciliation.hpp"
#include "peg/rng.hpp"
#include "peg/text_formats.hpp"

namespace fs = std::filesystem;
using namespace peg;

namespace {

std::string g_cli;
std::string g_data;
fs::path g_work;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

WeightVector random_weights(Rng& rng, double span = 2.0) {
    WeightVector w = WeightVector::zeros();
    for (auto& v : w.values) v = (rng.unit() * 2 - 1) * span;
    return w;
}

// Scenario lattices with exactly n dangerous contingencies, n = 2..6.
std::map<std::size_t, ExplanationMdp> sized_lattices() {
    std::map<std::size_t, ExplanationMdp> out;
    for (std::size_t n = 2; n <= 6; ++n) {
        GeneratorConfig config;
        config.count = 1;
        config.width = 10;
        config.height = 10;
        config.contingency_count = static_cast<int>(n);
        config.danger_probability = 1.0;
        config.seed = 600 + n;
        const auto scenario = generate_scenarios(config)[0];
        out.emplace(n, build_scenario_mdp(scenario, compile_scenario(scenario)));
    }
    return out;
}

// ---------------------------------------------------------------- 1 ----
Outcome planner_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    GeneratorConfig config;
    config.count = 100;
    config.width = 12;
    config.height = 12;
    config.contingency_count = 7;
    config.danger_probability = 0.5;
    config.seed = 101;
    const auto scenarios = generate_scenarios(config);

    std::vector<CompiledPair> compiled;
    compiled.reserve(scenarios.size());
    for (const auto& s : scenarios) compiled.push_back(compile_scenario(s));

    Rng rng(555);
    int checked = 0;
    for (int round = 0; round < 200; ++round) {
        const std::size_t pick = rng.bounded(scenarios.size());
        const auto changes = compiled[pick].explanation_changes();
        const std::uint32_t mask = rng.bounded(std::uint32_t(1) << changes.size());
        Model m = compiled[pick].human_model;
        std::set<char> revealed;
        for (std::size_t i = 0; i < changes.size(); ++i) {
            if (mask & (std::uint32_t(1) << i)) {
                m = apply_change(m, changes[i]);
                revealed.insert(changes[i].id[0]);
            }
        }
        const double planner_cost = optimal_cost(m);
        const double oracle_cost = oracle::grid_shortest_path(scenarios[pick], revealed);
        if (planner_cost != oracle_cost) {
            return {false, "state mismatch on " + scenarios[pick].id};
        }
        ++checked;
    }
    const double dt = seconds_since(t0);
    if (dt >= 60.0) return {false, "took " + std::to_string(dt) + " s (limit 60)"};
    return {true, std::to_string(checked) + " states exact in " + std::to_string(dt) + " s"};
}

// ---------------------------------------------------------------- 2 ----
Outcome maxent_consistency() {
    const auto lattices = sized_lattices();
    Rng rng(556);
    for (int draw = 0; draw < 20; ++draw) {
        const auto w = random_weights(rng);
        for (const auto& [n, mdp] : lattices) {
            const auto dist = trace_distribution(w, mdp);
            const auto policy = soft_policy(w, mdp);
            double sum = 0.0;
            for (const auto& entry : dist) {
                sum += entry.probability;
                double via_policy = 1.0;
                std::uint32_t mask = 0;
                for (const auto& id : entry.steps) {
                    const std::size_t i = mdp.change_index(id);
                    via_policy *= policy.prob(mask, i);
                    mask |= std::uint32_t(1) << i;
                }
                if (std::fabs(via_policy - entry.probability) >= 1e-10) {
                    return {false, "policy/enumeration gap at n=" + std::to_string(n)};
                }
            }
            if (std::fabs(sum - 1.0) >= 1e-12) {
                return {false, "distribution sum " + format_double(sum)};
            }
        }
    }
    return {true, "20 weight draws, n=2..6, within 1e-10 (sums 1e-12)"};
}

// ---------------------------------------------------------------- 3 ----
Outcome mpof_oracle() {
    const auto lattices = sized_lattices();
    Rng rng(557);
    for (int draw = 0; draw < 10; ++draw) {
        const auto w = random_weights(rng);
        for (const auto& [n, mdp] : lattices) {
            if (n > 5) continue;
            const auto policy = soft_policy(w, mdp);
            const auto dp = mpof(policy, mdp, exact_mu1(policy, mdp));
            const auto enumerated = oracle::enumerated_mpof(w, mdp);
            for (std::size_t i = 0; i < dp.size(); ++i) {
                if (std::fabs(dp[i] - enumerated[i]) >= 1e-9) {
                    return {false, "pair gap " + format_double(dp[i] - enumerated[i]) +
                                       " at n=" + std::to_string(n)};
                }
            }
        }
    }
    return {true, "10 weight draws, n=2..5, within 1e-9 per pair"};
}

// ---------------------------------------------------------------- 4 ----
Outcome gradient_check() {
    const auto lattices = sized_lattices();
    Rng rng(558);
    for (int instance = 0; instance < 10; ++instance) {
        const std::size_t n = 2 + instance % 4;  // 2..5
        const auto& mdp = lattices.at(n);
        const auto w = random_weights(rng, 1.0);

        const auto sampler = soft_policy(random_weights(rng, 1.0), mdp);
        std::vector<Trace> traces;
        Rng roll(900 + instance);
        const int count = 6 + static_cast<int>(rng.bounded(6));
        for (int t = 0; t < count; ++t) {
            traces.push_back({"s", rollout(sampler, mdp, roll), TraceProvenance::synthetic});
        }
        const auto grouped = group_traces(traces);
        const std::map<std::string, const ExplanationMdp*> mdps{{"s", &mdp}};
        const auto analytic = irl_gradient(w, grouped, mdps);
        const auto numeric = oracle::finite_difference_gradient(w, grouped, mdps, 1e-4);
        for (std::size_t k = 0; k < kFeatureCount; ++k) {
            const double diff = std::fabs(analytic[k] - numeric[k]);
            if (diff < 1e-9) continue;  // below central-difference noise
            const double rel = diff / std::max(std::fabs(analytic[k]), std::fabs(numeric[k]));
            if (rel >= 1e-5) {
                return {false, "entry " + std::string(kFeatureNames[k]) + " rel err " +
                                   format_double(rel)};
            }
        }
    }
    return {true, "10 instances, n<=5, 1e-5 relative at h=1e-4"};
}

// ---------------------------------------------------------------- 5 ----
Outcome peg_optimality() {
    const auto lattices = sized_lattices();
    Rng rng(559);
    int draws = 0;
    for (const auto& [n, mdp] : lattices) {
        for (int k = 0; k < 10; ++k, ++draws) {
            const auto w = k == 0 ? WeightVector::zeros() : random_weights(rng);
            const auto order = peg_order(mdp, w);
            const double best = oracle::brute_force_best_reward(mdp, w);
            if (order.total_reward != best) {
                return {false, "reward mismatch at n=" + std::to_string(n)};
            }
            // Unique maximum: the sequences must agree exactly. Several
            // bit-equal maxima (a 1-ulp suffix difference can round away
            // under the prefix): the DP's pick must be one of them, and
            // the lexicographic least under zero weights.
            const auto argmax_set = oracle::brute_force_argmax_set(mdp, w);
            if (argmax_set.size() == 1 && order.step_ids() != argmax_set.front()) {
                return {false, "argmax sequence mismatch at n=" + std::to_string(n)};
            }
            if (std::find(argmax_set.begin(), argmax_set.end(), order.step_ids()) ==
                argmax_set.end()) {
                return {false, "sequence outside the argmax set at n=" + std::to_string(n)};
            }
            if (k == 0 && order.step_ids() != argmax_set.front()) {
                return {false, "zero-weight tie-break mismatch at n=" + std::to_string(n)};
            }
        }
    }

    // Exact ties from twin changes (identical feature columns, dyadic
    // arithmetic): the documented lexicographic tie-break must decide.
    {
        const std::size_t n = 4;
        std::vector<FeatureVector> features(std::size_t(1) << n, FeatureVector{});
        features.resize((std::size_t(1) << n) * n);
        for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t role = i < 2 ? i : 2;  // C and D are twins
                FeatureVector f;
                f[5] = 0.25 * double(std::popcount(mask) + 1) * double(role + 1);
                f[0] = 0.5 * double(role);
                features[mask * n + i] = f;
            }
        }
        const auto mdp = ExplanationMdp::from_features({"A", "B", "C", "D"}, features);
        const auto w = WeightVector::of({0.5, 0.0, 0.0, 0.0, 0.0, 1.0});
        const auto order = peg_order(mdp, w);
        const auto argmax_set = oracle::brute_force_argmax_set(mdp, w);
        if (argmax_set.size() < 2) return {false, "twin fixture produced no exact tie"};
        if (order.step_ids() != argmax_set.front()) {
            return {false, "exact tie not resolved lexicographically"};
        }
    }
    return {true, std::to_string(draws) + " weight draws, n=2..6, exact argmax; ties lex-least"};
}

// ---------------------------------------------------------------- 6 ----
struct RecoverySuite {
    std::vector<Scenario> train_set;
    std::vector<Scenario> test_set;
    std::map<std::string, ExplanationMdp> lattices;
};

WeightVector recovery_ground_truth() {
    // Action distance dominant, spatial secondary, cost marginal.
    return WeightVector::of({-0.2, -0.22, -0.21, -0.24, 0.02, -3.0});
}

// Deterministic 5-train / 3-test suite. Training lattices must express
// the action-distance feature (its ordering total has to vary, otherwise
// the dominant weight is unidentifiable from traces); held-out lattices
// must have an argmax stable under weight noise of the magnitude a
// 200-trace fit actually leaves.
RecoverySuite build_recovery_suite(std::uint64_t suite_seed) {
    const WeightVector gt = recovery_ground_truth();
    RecoverySuite suite;
    for (std::uint64_t batch = 0;
         (suite.train_set.size() < 5 || suite.test_set.size() < 3) && batch < 500; ++batch) {
        GeneratorConfig config;
        config.count = 4;
        config.width = 12;
        config.height = 12;
        config.contingency_count = 7;
        config.danger_probability = 0.55;
        config.seed = suite_seed + batch;
        for (auto& scenario : generate_scenarios(config)) {
            const auto compiled = compile_scenario(scenario);
            const std::size_t n = compiled.change_catalog.size();
            if (n < 3 || n > 6) continue;
            auto mdp = build_scenario_mdp(scenario, compiled);
            if (suite.train_set.size() < 5) {
                WeightVector probe = WeightVector::zeros();
                probe.values[5] = -1.0;
                double lo = kInfiniteCost, hi = -kInfiniteCost;
                for (const auto& e : trace_distribution(probe, mdp)) {
                    const double r = ordering_reward(mdp, probe, e.steps);
                    lo = std::min(lo, r);
                    hi = std::max(hi, r);
                }
                if (hi - lo < 0.3) continue;
                suite.lattices.emplace(scenario.id, std::move(mdp));
                suite.train_set.push_back(scenario);
            } else if (suite.test_set.size() < 3) {
                const auto want = peg_order(mdp, gt).step_ids();
                Rng noise(4242);
                bool robust = true;
                for (int round = 0; round < 40 && robust; ++round) {
                    WeightVector perturbed = gt;
                    for (auto& v : perturbed.values) v += (noise.unit() * 2 - 1) * 1.0;
                    robust = peg_order(mdp, perturbed).step_ids() == want;
                }
                if (!robust) continue;
                suite.lattices.emplace(scenario.id, std::move(mdp));
                suite.test_set.push_back(scenario);
            }
        }
    }
    return suite;
}

WeightVector g_recovered;  // filled by criterion 6, consumed by 7

Outcome synthetic_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    const WeightVector gt = recovery_ground_truth();
    const auto suite = build_recovery_suite(9000);
    if (suite.train_set.size() < 5 || suite.test_set.size() < 3) {
        return {false, "suite construction failed"};
    }
    std::map<std::string, const ExplanationMdp*> train_mdps;
    for (const auto& s : suite.train_set) {
        train_mdps.emplace(s.id, &suite.lattices.at(s.id));
    }

    int matched = 0;
    int total = 0;
    for (int seed = 0; seed < 10; ++seed) {
        const auto traces = synthesize_traces(suite.train_set, gt, 40, 5000 + seed);
        TrainingConfig config;
        config.seed = static_cast<std::uint64_t>(seed);
        config.iterations = 40000;
        config.learning_rate = 0.3;
        const auto result = train(traces, train_mdps, config);
        if (seed == 0) g_recovered = result.weights;
        for (const auto& s : suite.test_set) {
            const auto& mdp = suite.lattices.at(s.id);
            ++total;
            if (peg_order(mdp, result.weights).step_ids() == peg_order(mdp, gt).step_ids()) {
                ++matched;
            }
        }
    }
    const double dt = seconds_since(t0);
    if (dt >= 600.0) return {false, "took " + std::to_string(dt) + " s (limit 600)"};
    const double rate = double(matched) / double(total);
    if (rate < 0.9) {
        return {false, std::to_string(matched) + "/" + std::to_string(total) +
                           " held-out orderings matched"};
    }
    return {true, std::to_string(matched) + "/" + std::to_string(total) + " matched in " +
                      std::to_string(dt) + " s"};
}

// ---------------------------------------------------------------- 7 ----
int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return status < 0 ? status : WEXITSTATUS(status);
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(line);
            line.clear();
        } else {
            line += c;
        }
    }
    return lines;
}

Outcome evaluation_report() {
    if (g_recovered.values.empty()) {
        return {false, "no recovered weights (criterion 6 must run first)"};
    }
    const fs::path dir = g_work / "fig5";
    fs::create_directories(dir / "scen");

    GeneratorConfig config;
    config.count = 20;
    config.width = 12;
    config.height = 12;
    config.contingency_count = 7;
    config.danger_probability = 0.55;
    config.seed = 707;
    for (const auto& s : generate_scenarios(config)) {
        write_file_atomic((dir / "scen" / (s.id + ".scenario")).string(), emit_scenario(s));
    }
    write_file_atomic((dir / "recovered.weights").string(), emit_weights(g_recovered));

    const fs::path report = dir / "report.txt";
    const int code = run_cli("evaluate --scenarios \"" + (dir / "scen").string() +
                                 "\" --weights \"" + (dir / "recovered.weights").string() +
                                 "\" --methods peg,random,manhattan --random-repeats 50" +
                                 " --seed 11 --out \"" + report.string() + "\"",
                             dir / "evaluate.log");
    if (code != 0) return {false, "cmd_evaluate exited " + std::to_string(code)};

    std::map<std::string, double> means;
    for (const auto& raw : lines_of(read_file(report.string()))) {
        if (raw.rfind("mean\t", 0) != 0) continue;
        std::vector<std::string> cols;
        std::string col;
        for (char c : raw + std::string(1, '\t')) {
            if (c == '\t') {
                cols.push_back(col);
                col.clear();
            } else {
                col += c;
            }
        }
        if (cols.size() >= 6) means[cols[2]] = parse_double(cols[5]);
    }
    if (!means.count("peg") || !means.count("random") || !means.count("manhattan")) {
        return {false, "report is missing method means"};
    }
    const double peg = means["peg"], rnd = means["random"], man = means["manhattan"];
    if (peg > rnd || peg > man) {
        return {false, "peg " + format_double(peg) + " vs random " + format_double(rnd) +
                           " / manhattan " + format_double(man)};
    }
    return {true, "peg " + format_double(peg) + " <= random " + format_double(rnd) +
                      " and <= manhattan " + format_double(man)};
}

// ---------------------------------------------------------------- 8 ----
Outcome reconciliation_fixtures() {
    const auto robot = parse_model(read_file(g_data + "/monica.model"));
    const auto human = parse_model(read_file(g_data + "/amy.model"));
    const auto problem = ReconciliationProblem::from_models(robot, human);

    const auto changes = delta(problem.robot_model, problem.human_model);
    if (changes.size() != 3) {
        return {false, "worked-example delta has " + std::to_string(changes.size()) + " changes"};
    }
    std::set<std::string> ids;
    for (const auto& c : changes) ids.insert(c.id);
    const std::set<std::string> expected{"init-has-not-holiday", "init-has-car-ready",
                                         "init-has-is-sunny"};
    if (ids != expected) return {false, "worked-example delta names differ"};
    if (!is_complete(problem, changes)) {
        return {false, "the worked-example edits are not a complete explanation"};
    }

    // MCE minimality against exhaustive subset enumeration, on the worked
    // example, the shipped maze, and generated scenarios (delta <= 10).
    std::vector<ReconciliationProblem> problems{problem};
    problems.push_back(
        compile_scenario(parse_scenario(read_file(g_data + "/plant.scenario"))).problem());
    GeneratorConfig config;
    config.count = 4;
    config.width = 10;
    config.height = 10;
    config.contingency_count = 7;
    config.danger_probability = 0.6;
    config.seed = 808;
    for (const auto& s : generate_scenarios(config)) {
        problems.push_back(compile_scenario(s).problem());
    }
    for (const auto& p : problems) {
        if (delta(p.robot_model, p.human_model).size() > 10) continue;
        const auto mce = minimally_complete_explanation(p);
        if (mce.changes.size() != oracle::brute_force_mce_size(p)) {
            return {false, "MCE size differs from brute force"};
        }
        if (!is_complete(p, mce.changes)) return {false, "MCE is not complete"};
        for (std::size_t skip = 0; skip < mce.changes.size(); ++skip) {
            std::vector<FeatureChange> smaller;
            for (std::size_t i = 0; i < mce.changes.size(); ++i) {
                if (i != skip) smaller.push_back(mce.changes[i]);
            }
            if (is_complete(p, smaller)) return {false, "MCE has a complete strict subset"};
        }
    }
    return {true, "worked example reproduced; MCE minimal on " +
                      std::to_string(problems.size()) + " fixtures"};
}

// ---------------------------------------------------------------- 9 ----
std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        out[fs::relative(entry.path(), dir).generic_string()] = read_file(entry.path().string());
    }
    return out;
}

Outcome determinism() {
    const fs::path dir = g_work / "det";
    fs::create_directories(dir);

    // Shared inputs both runs point at.
    GeneratorConfig config;
    config.count = 3;
    config.width = 10;
    config.height = 10;
    config.contingency_count = 7;
    config.danger_probability = 0.6;
    config.seed = 909;
    fs::create_directories(dir / "inputs" / "scen");
    for (const auto& s : generate_scenarios(config)) {
        write_file_atomic((dir / "inputs" / "scen" / (s.id + ".scenario")).string(),
                          emit_scenario(s));
    }
    write_file_atomic((dir / "inputs" / "gt.weights").string(),
                      emit_weights(recovery_ground_truth()));

    const std::string scen = (dir / "inputs" / "scen").string();
    const std::string gt = (dir / "inputs" / "gt.weights").string();
    const std::string one = scen + "/scn-909-00.scenario";

    const std::vector<std::pair<std::string, std::string>> commands{
        {"generate", "generate --count 3 --grid 10x10 --contingencies 7 --danger-prob 0.6"
                     " --seed 909 --out {OUT}/scen"},
        {"trace-gen", "trace-gen --scenarios " + scen + " --weights " + gt +
                          " --per-scenario 6 --seed 21 --out {OUT}/traces.txt"},
        {"train", "train --traces {OUT}/traces.txt --scenarios " + scen +
                      " --iterations 150 --seed 22 --out {OUT}/learned.weights"},
        {"explain-peg", "explain --scenario " + one + " --weights " + gt +
                            " --method peg --out {OUT}/peg.txt"},
        {"explain-random", "explain --scenario " + one + " --weights " + gt +
                               " --method random --seed 23 --out {OUT}/random.txt"},
        {"explain-manhattan", "explain --scenario " + one + " --weights " + gt +
                                  " --method manhattan --out {OUT}/manhattan.txt"},
        {"evaluate", "evaluate --scenarios " + scen + " --weights " + gt +
                         " --random-repeats 10 --seed 24 --out {OUT}/report.txt"},
        {"mce-scenario", "mce --scenario " + one + " --out {OUT}/mce.txt"},
        {"mce-models", "mce --robot-model " + g_data + "/monica.model --human-model " +
                           g_data + "/amy.model --out {OUT}/mce_models.txt"},
    };

    for (const auto& [name, command_template] : commands) {
        const fs::path out_dir = dir / name;
        std::map<std::string, std::string> first;
        for (int run = 0; run < 2; ++run) {
            fs::remove_all(out_dir);
            fs::create_directories(out_dir);
            std::string command = command_template;
            const std::string placeholder = "{OUT}";
            for (std::size_t at = command.find(placeholder); at != std::string::npos;
                 at = command.find(placeholder)) {
                command.replace(at, placeholder.size(), out_dir.string());
            }
            // train consumes a trace file regenerated inside its own dir.
            if (name == "train") {
                const int code = run_cli("trace-gen --scenarios " + scen + " --weights " + gt +
                                             " --per-scenario 6 --seed 21 --out " +
                                             (out_dir / "traces.txt").string(),
                                         dir / (name + ".pre.log"));
                if (code != 0) return {false, name + " setup exited " + std::to_string(code)};
            }
            const int code = run_cli(command, dir / (name + ".log"));
            if (code != 0) return {false, name + " exited " + std::to_string(code)};
            if (run == 0) {
                first = snapshot(out_dir);
            } else if (snapshot(out_dir) != first) {
                return {false, name + " artifacts differ between identical runs"};
            }
        }
    }
    return {true, std::to_string(commands.size()) + " commands byte-identical on rerun"};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") g_cli = argv[i + 1];
        else if (flag == "--data") g_data = argv[i + 1];
        else if (flag == "--work") g_work = argv[i + 1];
        else if (flag == "--only") only = std::atoi(argv[i + 1]);
    }
    if (g_cli.empty() || g_data.empty() || g_work.empty()) {
        std::cerr << "usage: peg_acceptance --cli <peg> --data <dir> --work <dir> [--only N]\n";
        return 2;
    }
    fs::remove_all(g_work);
    fs::create_directories(g_work);

    struct Criterion {
        int number;
        const char* name;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {1, "planner matches brute-force grid search on sampled lattice states", planner_oracle},
        {2, "policy products equal the explicit trace distribution", maxent_consistency},
        {3, "dynamic-programming MPOF matches trace enumeration", mpof_oracle},
        {4, "analytic gradient matches central finite differences", gradient_check},
        {5, "lattice DP ordering equals the factorial argmax", peg_optimality},
        {6, "synthetic end-to-end recovery of the ordering preference", synthetic_recovery},
        {7, "evaluation report: peg cumulative action distance beats baselines",
         evaluation_report},
        {8, "worked-example fixtures and MCE minimality", reconciliation_fixtures},
        {9, "CLI reruns are byte-identical", determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && only != criterion.number) continue;
        Outcome outcome{false, "exception"};
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.number, criterion.name, outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
