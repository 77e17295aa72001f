#include "symbreak/run.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace symbreak::run {

using json = nlohmann::json;
using ordering::OrderingKind;
using symmetry::Scheme;

namespace {

std::string normalize(std::string s) {
    // Trim and collapse interior whitespace to single spaces.
    std::string out;
    bool in_space = true;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!in_space) out += ' ';
            in_space = true;
        } else {
            out += c;
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

const std::vector<std::pair<std::string, OrderingKind>> kKinds = {
    {"anti-lex", OrderingKind::AntiLex},
    {"anti-gray", OrderingKind::AntiGray},
    {"lex", OrderingKind::Lex},
    {"gray", OrderingKind::Gray},
};

const std::vector<std::pair<std::string, Scheme>> kSchemes = {
    {"row", Scheme::Row},
    {"col-snake", Scheme::ColSnake},
    {"col", Scheme::Col},
    {"snake", Scheme::Snake},
    {"spiral-in", Scheme::SpiralIn},
    {"spiral-out", Scheme::SpiralOut},
    {"spiral", Scheme::SpiralIn},
    {"left2right", Scheme::Left2Right},
    {"right2left", Scheme::Right2Left},
    {"rev", Scheme::Right2Left},
    {"outside-in", Scheme::OutsideIn},
    {"inside-out", Scheme::InsideOut},
};

std::optional<Scheme> parse_scheme(const std::string& text) {
    for (const auto& [label, scheme] : kSchemes)
        if (text == label) return scheme;
    return std::nullopt;
}

bool is_sequence_scheme(Scheme s) {
    return s == Scheme::Left2Right || s == Scheme::Right2Left || s == Scheme::OutsideIn ||
           s == Scheme::InsideOut;
}

} // namespace

symmetry::Scheme default_scheme(const engine::Shape& shape) {
    return shape.kind == engine::Shape::Kind::Matrix ? Scheme::Row : Scheme::Left2Right;
}

namespace {

// Breaking labels follow the result-table vocabulary: "spiral" and "rev"
// rather than the heuristic names "spiral-in" and "right2left".
std::string breaking_scheme_label(Scheme s) {
    if (s == Scheme::SpiralIn) return "spiral";
    if (s == Scheme::Right2Left) return "rev";
    return symmetry::scheme_label(s);
}

} // namespace

std::string BreakSpec::label(const engine::Shape& shape) const {
    switch (kind) {
    case Kind::None: return "none";
    case Kind::DoubleLex: return "doublelex";
    case Kind::SnakeLex:
        return variant == symmetry::SnakeLexVariant::Columnwise ? "snakelex columnwise"
                                                                : "snakelex rowwise";
    case Kind::Leader: break;
    }
    std::string out = strict ? "strict-" : "";
    out += ordering::kind_label(order);
    Scheme s = scheme.value_or(default_scheme(shape));
    // Sequence labels leave the default traversal implicit, as the result
    // tables do ("lex", "lex rev"); matrix labels always carry a scheme.
    if (shape.kind == engine::Shape::Kind::Matrix || s != Scheme::Left2Right)
        out += std::string(" ") + breaking_scheme_label(s);
    return out;
}

BreakSpec parse_break(const std::string& raw) {
    std::string text = normalize(raw);
    BreakSpec spec;
    if (text.empty() || text == "none") return spec;

    if (text == "doublelex") {
        spec.kind = BreakSpec::Kind::DoubleLex;
        return spec;
    }
    if (text.rfind("snakelex", 0) == 0) {
        spec.kind = BreakSpec::Kind::SnakeLex;
        std::string rest = text.size() > 8 ? text.substr(8) : "";
        if (!rest.empty() && (rest[0] == ' ' || rest[0] == '-')) rest = rest.substr(1);
        if (rest.empty() || rest == "col" || rest == "columnwise")
            spec.variant = symmetry::SnakeLexVariant::Columnwise;
        else if (rest == "row" || rest == "rowwise")
            spec.variant = symmetry::SnakeLexVariant::Rowwise;
        else
            throw ConfigError("unknown snakelex variant: '" + rest + "'");
        return spec;
    }

    spec.kind = BreakSpec::Kind::Leader;
    std::string rest = text;
    if (rest.rfind("strict-", 0) == 0) {
        spec.strict = true;
        rest = rest.substr(7);
    }
    bool kind_found = false;
    for (const auto& [label, kind] : kKinds) {
        if (rest == label) {
            spec.order = kind;
            kind_found = true;
            rest.clear();
            break;
        }
        if (rest.rfind(label, 0) == 0 && rest.size() > label.size() &&
            (rest[label.size()] == ' ' || rest[label.size()] == '-')) {
            spec.order = kind;
            kind_found = true;
            rest = rest.substr(label.size() + 1);
            break;
        }
    }
    if (!kind_found) throw ConfigError("unknown symmetry-breaking config: '" + raw + "'");
    if (!rest.empty()) {
        auto scheme = parse_scheme(rest);
        if (!scheme) throw ConfigError("unknown linearization scheme: '" + rest + "'");
        spec.scheme = scheme;
    }
    return spec;
}

models::ModelKind parse_model(const std::string& name) {
    if (name == "still-life") return models::ModelKind::StillLife;
    if (name == "labs") return models::ModelKind::Labs;
    if (name == "queens-armies") return models::ModelKind::QueensArmies;
    if (name == "free-matrix") return models::ModelKind::FreeMatrix;
    throw ConfigError("unknown model: '" + name + "' (expected still-life, labs, "
                      "queens-armies or free-matrix)");
}

void apply_breaking(models::Instance& instance, const BreakSpec& spec) {
    engine::Model& model = instance.model;
    switch (spec.kind) {
    case BreakSpec::Kind::None:
        return;
    case BreakSpec::Kind::DoubleLex:
        if (instance.kind != models::ModelKind::FreeMatrix)
            throw ConfigError("doublelex breaks row/column symmetry; use it on free-matrix");
        symmetry::post_doublelex(model);
        return;
    case BreakSpec::Kind::SnakeLex:
        if (instance.kind != models::ModelKind::FreeMatrix)
            throw ConfigError("snakelex breaks row/column symmetry; use it on free-matrix");
        symmetry::post_snakelex(model, spec.variant);
        return;
    case BreakSpec::Kind::Leader: {
        Scheme scheme = spec.scheme.value_or(default_scheme(*model.shape));
        bool seq_scheme = is_sequence_scheme(scheme);
        if (seq_scheme != (model.shape->kind == engine::Shape::Kind::Sequence))
            throw ConfigError(std::string("scheme '") + symmetry::scheme_label(scheme) +
                              "' does not fit this model's shape");
        auto lin = symmetry::linearize(*model.shape, scheme);
        auto group = models::natural_group(instance.kind, instance.n);
        symmetry::post_leader_constraints(model, group, spec.order, lin, spec.strict);
        return;
    }
    }
}

oracle::BreakingUnderTest breaking_under_test(const models::Instance& instance,
                                              const BreakSpec& spec) {
    oracle::BreakingUnderTest out;
    out.label = spec.label(*instance.model.shape);
    if (spec.kind == BreakSpec::Kind::None) return out;
    models::ModelKind kind = instance.kind;
    int n = instance.n;
    symmetry::SnakeLexVariant variant = spec.variant;
    if (spec.kind == BreakSpec::Kind::DoubleLex) {
        out.post = [](engine::Model& m) { symmetry::post_doublelex(m); };
    } else if (spec.kind == BreakSpec::Kind::SnakeLex) {
        out.post = [variant](engine::Model& m) { symmetry::post_snakelex(m, variant); };
    } else {
        Scheme scheme = spec.scheme.value_or(default_scheme(*instance.model.shape));
        auto lin = symmetry::linearize(*instance.model.shape, scheme);
        auto order = spec.order;
        bool strict = spec.strict;
        out.post = [kind, n, order, lin, strict](engine::Model& m) {
            symmetry::post_leader_constraints(m, models::natural_group(kind, n), order, lin,
                                              strict);
        };
        if (!strict) out.leader = std::make_pair(order, lin);
    }
    return out;
}

engine::HeuristicSpec parse_heuristic(const std::string& name, const models::Instance& inst) {
    const engine::Shape& shape = *inst.model.shape;
    std::string h = name.empty() ? default_heuristic(shape) : normalize(name);
    if (h == "degree") return engine::HeuristicSpec::degree();
    if (h == "constr") return engine::HeuristicSpec::constr();
    if (h == "ff")
        return engine::HeuristicSpec::ff(symmetry::linearize(shape, default_scheme(shape)).order);
    if (h == "ff-spiral") {
        if (shape.kind != engine::Shape::Kind::Matrix)
            throw ConfigError("ff-spiral needs a matrix model");
        return engine::HeuristicSpec::ff(symmetry::linearize(shape, Scheme::SpiralIn).order);
    }
    auto scheme = parse_scheme(h);
    if (!scheme) throw ConfigError("unknown heuristic: '" + name + "'");
    if (is_sequence_scheme(*scheme) != (shape.kind == engine::Shape::Kind::Sequence))
        throw ConfigError("heuristic '" + h + "' does not fit this model's shape");
    return engine::HeuristicSpec::static_order(symmetry::linearize(shape, *scheme).order);
}

std::string default_heuristic(const engine::Shape& shape) {
    return shape.kind == engine::Shape::Kind::Matrix ? "row" : "left2right";
}

std::string RunConfig::config_label() const {
    std::string heur = heuristic;
    std::string out = model + " | " + breaking;
    if (!heur.empty()) out += " | " + heur;
    if (value_order != "asc") out += " | " + value_order;
    return out;
}

namespace {

engine::SearchLimits limits_of(const RunConfig& config) {
    engine::SearchLimits limits;
    if (config.node_budget > 0) limits.node_budget = config.node_budget;
    limits.time_budget_ms = config.time_budget_ms;
    return limits;
}

std::vector<int> project_decisions(const engine::Model& model, const engine::Assignment& full) {
    std::vector<int> out(model.decision_vars.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = full[model.decision_vars[i]];
    return out;
}

} // namespace

RunResult cmd_solve(const RunConfig& config) {
    RunResult result;
    result.config = config;

    models::ModelKind kind = parse_model(config.model);
    if (kind == models::ModelKind::FreeMatrix)
        throw ConfigError("free-matrix has no objective; it is for the verify command");
    models::Instance instance = models::build(kind, config.n);

    BreakSpec spec = parse_break(config.breaking);
    result.config.breaking = spec.label(*instance.model.shape); // canonical echo
    apply_breaking(instance, spec);

    engine::HeuristicSpec heuristic = parse_heuristic(config.heuristic, instance);
    if (result.config.heuristic.empty())
        result.config.heuristic = default_heuristic(*instance.model.shape);
    engine::ValueOrder order;
    if (config.value_order == "asc" || config.value_order.empty())
        order = engine::ValueOrder::Ascending;
    else if (config.value_order == "desc")
        order = engine::ValueOrder::Descending;
    else
        throw ConfigError("value order must be asc or desc");

    engine::OptimizeResult opt =
        engine::solve_optimize(instance.model, heuristic, order, limits_of(config));
    result.stats = opt.stats;
    result.incumbent = opt.incumbent;
    switch (opt.status) {
    case engine::SolveStatus::Optimal:
        result.status = "optimal";
        result.optimum = opt.optimum;
        break;
    case engine::SolveStatus::BudgetExceeded:
        result.status = "budget-exceeded";
        break;
    case engine::SolveStatus::Infeasible:
        result.status = "infeasible";
        break;
    }
    if (opt.witness) result.witness = project_decisions(instance.model, *opt.witness);
    return result;
}

std::string result_to_json(const RunResult& r) {
    json j;
    j["config"] = {{"model", r.config.model},
                   {"n", r.config.n},
                   {"break", r.config.breaking},
                   {"heur", r.config.heuristic},
                   {"value_order", r.config.value_order.empty() ? "asc" : r.config.value_order}};
    if (r.config.node_budget > 0) j["config"]["node_budget"] = r.config.node_budget;
    if (r.config.time_budget_ms >= 0) j["config"]["time_budget_ms"] = r.config.time_budget_ms;
    j["status"] = r.status;
    j["optimum"] = r.optimum ? json(*r.optimum) : json(nullptr);
    if (r.incumbent && !r.optimum) j["incumbent"] = *r.incumbent;
    j["stats"] = {{"backtracks", r.stats.backtracks},
                  {"nodes", r.stats.nodes},
                  {"solutions", r.stats.solutions},
                  {"time_ms", r.stats.time_ms}};
    if (r.witness) j["witness"] = *r.witness;
    return j.dump(2) + "\n";
}

std::string result_summary(const RunResult& r) {
    std::ostringstream out;
    out << r.config.model << " n=" << r.config.n << "  break=" << r.config.breaking
        << "  heur=" << r.config.heuristic << "  value-order="
        << (r.config.value_order.empty() ? "asc" : r.config.value_order) << "\n";
    out << "status: " << r.status;
    if (r.optimum) out << "  optimum: " << *r.optimum;
    if (r.incumbent && !r.optimum) out << "  best-found: " << *r.incumbent;
    out << "\nbacktracks: " << r.stats.backtracks << "  nodes: " << r.stats.nodes
        << "  time: " << r.stats.time_ms << " ms\n";
    if (r.witness) {
        models::ModelKind kind = parse_model(r.config.model);
        if (kind == models::ModelKind::Labs) {
            out << "sequence: ";
            for (int v : *r.witness) out << v;
            out << "\n";
        } else {
            int n = r.config.n;
            for (int row = 0; row < n; ++row) {
                for (int col = 0; col < n; ++col) {
                    int v = (*r.witness)[row * n + col];
                    out << (v == 0 ? '.' : (v == 1 ? '#' : 'o'));
                }
                out << "\n";
            }
        }
    }
    return out.str();
}

// --- Sweeps -------------------------------------------------------------------

std::vector<RunConfig> parse_sweep(const std::string& text, uint64_t node_budget,
                                   int64_t time_budget_ms) {
    std::vector<RunConfig> configs;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = normalize(line);
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(normalize(field));
        if (fields.size() < 4 || fields.size() > 5)
            throw ConfigError("sweep line " + std::to_string(line_no) +
                              ": expected model,n,break,heur[,value_order]");
        RunConfig c;
        c.model = fields[0];
        try {
            c.n = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw ConfigError("sweep line " + std::to_string(line_no) + ": bad size");
        }
        c.breaking = fields[2];
        c.heuristic = fields[3];
        c.value_order = fields.size() == 5 ? fields[4] : "asc";
        c.node_budget = node_budget;
        c.time_budget_ms = time_budget_ms;
        configs.push_back(std::move(c));
    }
    return configs;
}

std::vector<RunResult> run_sweep(const std::vector<RunConfig>& configs) {
    std::vector<RunResult> results;
    results.reserve(configs.size());
    for (const auto& config : configs) {
        try {
            results.push_back(cmd_solve(config));
        } catch (const std::exception& e) {
            RunResult r;
            r.config = config;
            r.status = std::string("error: ") + e.what();
            results.push_back(std::move(r));
        }
    }
    return results;
}

std::string results_to_csv(const std::vector<RunResult>& results, TimeColumn mode) {
    std::ostringstream out;
    out << "config,n,backtracks,nodes,optimum,time-ms,status\n";
    for (const auto& r : results) {
        out << r.config.config_label() << "," << r.config.n << "," << r.stats.backtracks << ","
            << r.stats.nodes << ",";
        if (r.optimum) out << *r.optimum;
        out << "," << (mode == TimeColumn::Wall ? r.stats.time_ms : 0) << "," << r.status << "\n";
    }
    return out.str();
}

// --- Verification --------------------------------------------------------------

VerifyOutcome cmd_verify(const std::string& model, int n, const std::string& breaking) {
    models::ModelKind kind = parse_model(model);
    models::Instance instance = models::build(kind, n);
    BreakSpec spec = parse_break(breaking);
    if ((spec.kind == BreakSpec::Kind::DoubleLex || spec.kind == BreakSpec::Kind::SnakeLex) &&
        kind != models::ModelKind::FreeMatrix)
        throw ConfigError("doublelex/snakelex verify runs on free-matrix");
    if (spec.kind == BreakSpec::Kind::Leader) {
        Scheme scheme = spec.scheme.value_or(default_scheme(*instance.model.shape));
        if (is_sequence_scheme(scheme) != (instance.model.shape->kind ==
                                           engine::Shape::Kind::Sequence))
            throw ConfigError("scheme does not fit this model's shape");
    }

    symmetry::SymmetryGroup group = models::natural_group(kind, n);
    oracle::BreakingUnderTest under_test = breaking_under_test(instance, spec);
    oracle::OrbitReport report = oracle::verify_sound_complete(instance, group, under_test);

    VerifyOutcome outcome;
    outcome.report = report;
    bool complete_required = report.leader_config;
    outcome.passed = report.group_preserves_solutions && report.sound() &&
                     (!complete_required || report.complete());

    std::ostringstream out;
    out << "verify " << model << " n=" << n << "  break=" << under_test.label << "\n";
    out << "solutions: " << report.total_solutions << "  orbits: " << report.orbit_count
        << "  survivors: " << report.surviving_solutions << "\n";
    out << "survivor histogram (survivors -> orbits):";
    for (const auto& [survivors, orbits] : report.survivor_histogram)
        out << "  " << survivors << " -> " << orbits;
    out << "\n";
    out << "unsound orbits: " << report.unsound_orbits
        << "  multi-survivor orbits: " << report.multi_survivor_orbits
        << "  canonical mismatches: " << report.canonical_mismatches.size() << "\n";
    if (!report.first_counterexample.empty())
        out << "counterexample: " << report.first_counterexample << "\n";
    out << (outcome.passed ? "PASS" : "FAIL") << "\n";
    outcome.rendered = out.str();

    json j;
    j["model"] = model;
    j["n"] = n;
    j["break"] = under_test.label;
    j["solutions"] = report.total_solutions;
    j["orbit_count"] = report.orbit_count;
    j["survivors"] = report.surviving_solutions;
    json hist = json::object();
    for (const auto& [survivors, orbits] : report.survivor_histogram)
        hist[std::to_string(survivors)] = orbits;
    j["survivor_histogram"] = hist;
    j["unsound_orbits"] = report.unsound_orbits;
    j["multi_survivor_orbits"] = report.multi_survivor_orbits;
    j["canonical_mismatches"] = report.canonical_mismatches;
    if (!report.first_counterexample.empty())
        j["first_counterexample"] = report.first_counterexample;
    j["pass"] = outcome.passed;
    outcome.json = j.dump(2) + "\n";
    return outcome;
}

} // namespace symbreak::run
