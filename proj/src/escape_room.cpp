#include "peg/escape_room.hpp"

#include <algorithm>
#include <deque>

#include "peg/errors.hpp"
#include "peg/rng.hpp"

namespace peg {

namespace {

bool is_marker(char c) {
    return c >= 'A' && c <= 'Z' && c != 'S' && c != 'G';
}

std::string cell_name(const char* prefix, int x, int y) {
    return std::string(prefix) + "_" + std::to_string(x) + "_" + std::to_string(y);
}

// Marker letters; S and G are reserved for the start and goal cells.
const std::string kLetterPool = "ABCDEFHIJKLMNOPQRTUVWXYZ";

}  // namespace

std::pair<int, int> Scenario::start_cell() const {
    for (int y = 0; y < height(); ++y) {
        for (int x = 0; x < width(); ++x) {
            if (at(x, y) == 'S') return {x, y};
        }
    }
    throw FormatError("scenario '" + id + "' has no start cell");
}

std::pair<int, int> Scenario::goal_cell() const {
    for (int y = 0; y < height(); ++y) {
        for (int x = 0; x < width(); ++x) {
            if (at(x, y) == 'G') return {x, y};
        }
    }
    throw FormatError("scenario '" + id + "' has no goal cell");
}

std::pair<int, int> Scenario::marker_cell(char letter) const {
    for (int y = 0; y < height(); ++y) {
        for (int x = 0; x < width(); ++x) {
            if (at(x, y) == letter) return {x, y};
        }
    }
    throw UnknownContingencyError(std::string("no cell marked '") + letter + "' in scenario '" +
                                  id + "'");
}

std::vector<char> Scenario::letters() const {
    std::vector<char> out;
    for (const auto& row : grid) {
        for (char c : row) {
            if (is_marker(c)) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<char> Scenario::dangerous_letters() const {
    std::vector<char> out;
    for (const auto& [letter, is_dangerous] : dangerous) {
        if (is_dangerous) out.push_back(letter);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void Scenario::validate() const {
    if (grid.empty()) throw FormatError("scenario '" + id + "' has an empty grid");
    for (const auto& row : grid) {
        if (static_cast<int>(row.size()) != width()) {
            throw FormatError("scenario '" + id + "' has ragged grid rows");
        }
    }
    int starts = 0, goals = 0;
    std::map<char, int> marker_count;
    for (const auto& row : grid) {
        for (char c : row) {
            if (c == 'S') ++starts;
            else if (c == 'G') ++goals;
            else if (is_marker(c)) ++marker_count[c];
            else if (c != '#' && c != '.') {
                throw FormatError(std::string("scenario '") + id + "' has invalid cell '" + c +
                                  "'");
            }
        }
    }
    if (starts != 1) throw FormatError("scenario '" + id + "' needs exactly one S");
    if (goals != 1) throw FormatError("scenario '" + id + "' needs exactly one G");
    for (const auto& [letter, n] : marker_count) {
        if (n > 1) {
            throw FormatError(std::string("scenario '") + id + "' repeats marker '" + letter +
                              "'");
        }
    }
    for (const auto& [letter, _] : dangerous) {
        if (!marker_count.count(letter)) {
            throw FormatError(std::string("scenario '") + id + "' lists unknown marker '" +
                              letter + "'");
        }
    }
}

std::vector<FeatureChange> CompiledPair::explanation_changes() const {
    std::vector<FeatureChange> out;
    for (const auto& [letter, change] : change_catalog) out.push_back(change);
    return out;
}

ReconciliationProblem CompiledPair::problem() const {
    return {robot_model, human_model, robot_plan, {}};
}

CompiledPair compile_scenario(const Scenario& scenario, LatticeScope scope) {
    scenario.validate();
    const int w = scenario.width();
    const int h = scenario.height();

    Model human;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (scenario.at(x, y) == '#') continue;
            human.predicates.insert(cell_name("at", x, y));
            human.predicates.insert(cell_name("trav", x, y));
            human.init.insert(cell_name("trav", x, y));
        }
    }
    const auto [sx, sy] = scenario.start_cell();
    const auto [gx, gy] = scenario.goal_cell();
    human.init.insert(cell_name("at", sx, sy));
    human.goal.insert(cell_name("at", gx, gy));

    static constexpr int kDx[4] = {1, -1, 0, 0};
    static constexpr int kDy[4] = {0, 0, 1, -1};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (scenario.at(x, y) == '#') continue;
            for (int d = 0; d < 4; ++d) {
                const int nx = x + kDx[d];
                const int ny = y + kDy[d];
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                if (scenario.at(nx, ny) == '#') continue;
                Action move;
                move.name = "move" + std::to_string(x) + "_" + std::to_string(y) + "_to_" +
                            std::to_string(nx) + "_" + std::to_string(ny);
                move.preconditions = {cell_name("at", x, y), cell_name("trav", nx, ny)};
                move.add_effects = {cell_name("at", nx, ny)};
                move.del_effects = {cell_name("at", x, y)};
                human.actions.emplace(move.name, std::move(move));
            }
        }
    }

    Model robot = human;
    for (char letter : scenario.dangerous_letters()) {
        const auto [x, y] = scenario.marker_cell(letter);
        robot.init.erase(cell_name("trav", x, y));
    }
    // In the all-marked scope the robot additionally holds a safety
    // confirmation fact per safe marker; explaining one is a no-op on the
    // plan but a real unit feature change (so the lattice has 2^7 states).
    if (scope == LatticeScope::all_marked) {
        for (char letter : scenario.letters()) {
            if (scenario.dangerous.count(letter) && scenario.dangerous.at(letter)) continue;
            const std::string pred = std::string("confirmed_safe_") + letter;
            human.predicates.insert(pred);
            robot.predicates.insert(pred);
            robot.init.insert(pred);
        }
    }
    human.validate();
    robot.validate();

    CompiledPair out;
    out.scope = scope;
    out.human_model = std::move(human);
    out.robot_model = std::move(robot);
    auto plan = optimal_plan(out.robot_model);
    if (!plan) {
        throw UnsolvableScenarioError("scenario '" + scenario.id +
                                      "' has no start-to-goal path in the robot maze");
    }
    out.robot_plan = std::move(*plan);

    for (char letter : scenario.letters()) {
        const bool is_dangerous =
            scenario.dangerous.count(letter) && scenario.dangerous.at(letter);
        if (is_dangerous) {
            const auto [x, y] = scenario.marker_cell(letter);
            FeatureChange change = make_change(
                ChangeDirection::remove,
                {FeatureKind::init_has, "", cell_name("trav", x, y)});
            change.id = std::string(1, letter);
            out.change_catalog.emplace(letter, std::move(change));
        } else if (scope == LatticeScope::all_marked) {
            FeatureChange change = make_change(
                ChangeDirection::add,
                {FeatureKind::init_has, "", std::string("confirmed_safe_") + letter});
            change.id = std::string(1, letter);
            out.change_catalog.emplace(letter, std::move(change));
        }
    }
    return out;
}

std::vector<FeatureChange> with_catalog_ids(const CompiledPair& compiled,
                                            std::vector<FeatureChange> changes) {
    for (auto& change : changes) {
        for (const auto& [letter, known] : compiled.change_catalog) {
            if (known.feature == change.feature && known.direction == change.direction) {
                change.id = known.id;
                break;
            }
        }
    }
    return changes;
}

SpatialContext spatial_context(const Scenario& scenario, const CompiledPair& compiled) {
    SpatialContext ctx;
    ctx.width = scenario.width();
    ctx.height = scenario.height();
    const auto [sx, sy] = scenario.start_cell();
    ctx.start_x = sx;
    ctx.start_y = sy;
    for (const auto& [letter, change] : compiled.change_catalog) {
        ctx.coords[change.id] = scenario.marker_cell(letter);
    }
    return ctx;
}

ExplanationMdp build_scenario_mdp(const Scenario& scenario, const CompiledPair& compiled,
                                  std::size_t limit) {
    return ExplanationMdp::build(compiled.problem(), compiled.explanation_changes(),
                                 spatial_context(scenario, compiled), limit);
}

namespace {

bool has_path(const std::vector<std::string>& grid, std::pair<int, int> from,
              std::pair<int, int> to, const std::vector<std::pair<int, int>>& blocked) {
    const int h = static_cast<int>(grid.size());
    const int w = static_cast<int>(grid[0].size());
    std::vector<char> open(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            open[y * w + x] = grid[y][x] != '#';
        }
    }
    for (const auto& [x, y] : blocked) open[y * w + x] = 0;
    if (!open[from.second * w + from.first] || !open[to.second * w + to.first]) return false;

    std::vector<char> seen(open.size(), 0);
    std::deque<std::pair<int, int>> queue{from};
    seen[from.second * w + from.first] = 1;
    static constexpr int kDx[4] = {1, -1, 0, 0};
    static constexpr int kDy[4] = {0, 0, 1, -1};
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        if (x == to.first && y == to.second) return true;
        for (int d = 0; d < 4; ++d) {
            const int nx = x + kDx[d];
            const int ny = y + kDy[d];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            if (!open[ny * w + nx] || seen[ny * w + nx]) continue;
            seen[ny * w + nx] = 1;
            queue.push_back({nx, ny});
        }
    }
    return false;
}

// Interior cells of one shortest open-maze route. Marked cells are placed
// preferentially on it so contingencies interact: revealing one reroutes
// the plan across others, the way the hand-built mazes are laid out.
std::vector<std::pair<int, int>> shortest_route_cells(const std::vector<std::string>& grid,
                                                      std::pair<int, int> from,
                                                      std::pair<int, int> to) {
    const int h = static_cast<int>(grid.size());
    const int w = static_cast<int>(grid[0].size());
    std::vector<int> parent(static_cast<std::size_t>(w) * h, -2);
    std::deque<int> queue;
    parent[from.second * w + from.first] = -1;
    queue.push_back(from.second * w + from.first);
    static constexpr int kDx[4] = {1, -1, 0, 0};
    static constexpr int kDy[4] = {0, 0, 1, -1};
    const int goal = to.second * w + to.first;
    while (!queue.empty()) {
        const int cell = queue.front();
        queue.pop_front();
        if (cell == goal) break;
        const int x = cell % w;
        const int y = cell / w;
        for (int d = 0; d < 4; ++d) {
            const int nx = x + kDx[d];
            const int ny = y + kDy[d];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            if (grid[ny][nx] == '#' || parent[ny * w + nx] != -2) continue;
            parent[ny * w + nx] = cell;
            queue.push_back(ny * w + nx);
        }
    }
    std::vector<std::pair<int, int>> route;
    if (parent[goal] == -2) return route;
    for (int cell = parent[goal]; cell >= 0 && parent[cell] != -1; cell = parent[cell]) {
        route.push_back({cell % w, cell / w});
    }
    return route;
}

}  // namespace

std::vector<Scenario> generate_scenarios(const GeneratorConfig& config) {
    if (config.contingency_count > static_cast<int>(kLetterPool.size())) {
        throw GenerationExhaustedError("at most " + std::to_string(kLetterPool.size()) +
                                       " contingencies supported");
    }
    std::vector<Scenario> out;
    Rng root(config.seed);
    for (int index = 0; index < config.count; ++index) {
        Rng rng = root.child(static_cast<std::uint64_t>(index));
        bool accepted = false;
        for (int attempt = 0; attempt < config.max_attempts_per_scenario && !accepted;
             ++attempt) {
            Scenario s;
            s.id = "scn-" + std::to_string(config.seed) + "-" +
                   (index < 10 ? "0" : "") + std::to_string(index);
            s.grid.assign(config.height, std::string(config.width, '.'));
            for (auto& row : s.grid) {
                for (auto& c : row) {
                    if (rng.unit() < config.wall_density) c = '#';
                }
            }
            std::vector<std::pair<int, int>> free_cells;
            for (int y = 0; y < config.height; ++y) {
                for (int x = 0; x < config.width; ++x) {
                    if (s.grid[y][x] == '.') free_cells.push_back({x, y});
                }
            }
            if (static_cast<int>(free_cells.size()) < config.contingency_count + 2) continue;
            rng.shuffle(free_cells);
            const auto start = free_cells[0];
            const auto goal = free_cells[1];
            // Skip trivially short mazes.
            if (std::abs(start.first - goal.first) + std::abs(start.second - goal.second) <
                (config.width + config.height) / 3) {
                continue;
            }
            if (!has_path(s.grid, start, goal, {})) continue;
            s.grid[start.second][start.first] = 'S';
            s.grid[goal.second][goal.first] = 'G';

            // Two placement pools: cells on a current shortest route and
            // the remaining free cells. Route placement dominates so that
            // contingencies actually force replanning.
            auto route = shortest_route_cells(s.grid, start, goal);
            rng.shuffle(route);
            std::vector<std::pair<int, int>> off_route;
            for (const auto& cell : free_cells) {
                if (cell == start || cell == goal) continue;
                if (std::find(route.begin(), route.end(), cell) == route.end()) {
                    off_route.push_back(cell);
                }
            }
            std::size_t next_route = 0;
            std::size_t next_off = 0;
            std::vector<std::pair<int, int>> dangerous_cells;
            bool placed_all = true;
            for (int k = 0; k < config.contingency_count; ++k) {
                std::pair<int, int> cell;
                const bool prefer_route = rng.unit() < 0.6;
                if (prefer_route && next_route < route.size()) {
                    cell = route[next_route++];
                } else if (next_off < off_route.size()) {
                    cell = off_route[next_off++];
                } else if (next_route < route.size()) {
                    cell = route[next_route++];
                } else {
                    placed_all = false;
                    break;
                }
                const char letter = kLetterPool[k];
                s.grid[cell.second][cell.first] = letter;
                if (rng.unit() < config.danger_probability) {
                    s.dangerous[letter] = true;
                    dangerous_cells.push_back(cell);
                }
            }
            if (!placed_all) continue;
            if (!has_path(s.grid, start, goal, dangerous_cells)) continue;
            s.validate();
            out.push_back(std::move(s));
            accepted = true;
        }
        if (!accepted) {
            throw GenerationExhaustedError("no valid scenario after " +
                                           std::to_string(config.max_attempts_per_scenario) +
                                           " attempts; relax the generator parameters");
        }
    }
    return out;
}

std::vector<Trace> synthesize_traces(const std::vector<Scenario>& scenarios,
                                     const WeightVector& ground_truth,
                                     int traces_per_scenario, std::uint64_t seed,
                                     LatticeScope scope) {
    std::vector<Trace> out;
    Rng root(seed);
    std::uint64_t scenario_index = 0;
    for (const auto& scenario : scenarios) {
        const CompiledPair compiled = compile_scenario(scenario, scope);
        const ExplanationMdp mdp = build_scenario_mdp(scenario, compiled);
        const SoftPolicy policy = soft_policy(ground_truth, mdp);
        Rng rng = root.child(scenario_index++);
        for (int t = 0; t < traces_per_scenario; ++t) {
            Trace trace;
            trace.scenario_id = scenario.id;
            trace.steps = rollout(policy, mdp, rng);
            trace.provenance = TraceProvenance::synthetic;
            out.push_back(std::move(trace));
        }
    }
    return out;
}

}  // namespace peg
