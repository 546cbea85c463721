#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sfm/bench.hpp"
#include "sfm/dsl.hpp"
#include "sfm/gmt.hpp"
#include "sfm/infer.hpp"
#include "sfm/prob.hpp"
#include "sfm/team.hpp"

namespace {

using nlohmann::json;
using namespace sfm;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { text, structured };

struct Common {
    std::string format{"text"};
    std::uint64_t seed{0};
    std::uint64_t budget{kDefaultEnumerationBudget};
    std::size_t limit{100};

    Format parsed_format() const {
        if (format == "text") return Format::text;
        if (format == "json" || format == "json-like-structured") {
            return Format::structured;
        }
        throw UsageError("unknown format " + format);
    }
};

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--format", common.format,
                    "Output format: text or json-like-structured");
    sub->add_option("--seed", common.seed, "Random seed for sampling");
    sub->add_option("--budget", common.budget, "Enumeration budget");
    sub->add_option("--limit", common.limit, "Answer limit for backward queries");
}

void emit(const Common& common, const std::string& text, const json& structured) {
    if (common.parsed_format() == Format::structured) {
        std::cout << structured.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

json to_json(const Assignment& a) {
    json j = json::object();
    for (const auto& [u, v] : a) j[u.name] = v.str();
    return j;
}

json to_json(const std::vector<NodeId>& nodes) {
    json j = json::array();
    for (const auto& u : nodes) j.push_back(u.name);
    return j;
}

std::set<NodeId> parse_node_list(const std::string& text) {
    std::set<NodeId> out;
    std::string item;
    std::stringstream in(text);
    while (std::getline(in, item, ',')) {
        while (!item.empty() && item.front() == ' ') item.erase(item.begin());
        while (!item.empty() && item.back() == ' ') item.pop_back();
        if (!item.empty()) out.insert(NodeId(item));
    }
    if (out.empty()) throw UsageError("empty node list");
    return out;
}

/// Loads a scenario file, falling back to a bare model file (wrapped in a
/// sectionless doc).  On double failure the scenario diagnostic wins.
struct Loaded {
    dsl::ScenarioDoc doc;
    bool has_section{false};
};

Loaded load_flexible(const std::string& path) {
    if (!std::filesystem::exists(path)) throw UsageError("cannot open " + path);
    try {
        return {dsl::load_scenario_file(path), true};
    } catch (const dsl::ParseException& first) {
        try {
            Loaded loaded;
            loaded.doc.model = dsl::load_model_file(path);
            return loaded;
        } catch (const dsl::ParseException&) {
            throw first;
        }
    }
}

// --- validate ---------------------------------------------------------------

int cmd_validate(const Common& common, const std::string& path) {
    Loaded loaded = load_flexible(path);
    std::vector<NodeId> order = topological_order(loaded.doc.model);
    std::string text = "valid\norder:";
    for (const auto& u : order) text += " " + u.name;
    text += "\n";
    json j{{"command", "validate"}, {"valid", true}, {"order", to_json(order)}};
    emit(common, text, j);
    return 0;
}

// --- infer ------------------------------------------------------------------

int cmd_infer(const Common& common, const std::string& path,
              const std::string& exo_literal, const std::string& targets_literal) {
    Loaded loaded = load_flexible(path);
    Assignment exo;
    if (!exo_literal.empty()) {
        exo = dsl::parse_assignment_literal(exo_literal);
    } else if (loaded.doc.kind == dsl::ScenarioKind::query_vfi && loaded.has_section) {
        exo = loaded.doc.query_exo;
    } else {
        throw UsageError("no exo assignment: pass --exo or use a vfi scenario");
    }

    json j{{"command", "infer"}};
    std::string text;
    if (!targets_literal.empty()) {
        std::set<NodeId> targets = parse_node_list(targets_literal);
        PartialResult r = partial_fi(loaded.doc.model, exo, targets);
        text = "values: " + r.values.str() + "\nevals: " +
               std::to_string(r.total_evals()) + "\n";
        j["values"] = to_json(r.values);
        j["total_evals"] = r.total_evals();
    } else {
        InferResult r = vfi(loaded.doc.model, exo);
        text = "world: " + r.world.str() + "\nevals: " +
               std::to_string(r.total_evals()) + "\n";
        j["world"] = to_json(r.world);
        j["total_evals"] = r.total_evals();
    }
    emit(common, text, j);
    return 0;
}

// --- contrast -----------------------------------------------------------------

int cmd_contrast(const Common& common, const std::string& path,
                 const std::string& actual_literal, const std::string& default_literal,
                 const std::string& tweak_literal) {
    if (!default_literal.empty() && !tweak_literal.empty()) {
        throw UsageError("--default and --tweak are mutually exclusive");
    }
    Loaded loaded = load_flexible(path);
    dsl::ScenarioDoc doc = loaded.doc;
    if (!actual_literal.empty()) {
        doc.actual_world = dsl::parse_assignment_literal(actual_literal);
    }
    if (!default_literal.empty()) {
        doc.kind = dsl::ScenarioKind::contrast_default;
        doc.default_world = dsl::parse_assignment_literal(default_literal);
    } else if (!tweak_literal.empty()) {
        doc.kind = dsl::ScenarioKind::contrast_tweak;
        doc.tweak = dsl::parse_assignment_literal(tweak_literal);
    } else if (!loaded.has_section ||
               (doc.kind != dsl::ScenarioKind::contrast_default &&
                doc.kind != dsl::ScenarioKind::contrast_tweak)) {
        throw UsageError("no contrast given: pass --default or --tweak, "
                         "or use a contrast scenario file");
    }
    doc.expected.reset();
    dsl::ScenarioResult result = dsl::run_scenario(doc);
    json j{{"command", "contrast"},
           {"cause", to_json(result.utterance->cause)},
           {"effect", to_json(result.utterance->effect)},
           {"utterance", result.rendered}};
    emit(common, result.rendered + "\n", j);
    return 0;
}

// --- csp ----------------------------------------------------------------------

int cmd_csp(const Common& common, const std::string& path,
            const std::string& known_literal, const std::string& targets_literal) {
    Loaded loaded = load_flexible(path);
    Assignment known;
    std::set<NodeId> targets;
    if (loaded.has_section && loaded.doc.kind == dsl::ScenarioKind::query_csp) {
        known = loaded.doc.csp_known;
        targets = loaded.doc.csp_targets;
    }
    if (!known_literal.empty()) known = dsl::parse_assignment_literal(known_literal);
    if (!targets_literal.empty()) targets = parse_node_list(targets_literal);
    if (targets.empty()) {
        throw UsageError("no targets: pass --targets or use a csp scenario");
    }
    std::vector<Assignment> answers =
        csp_solve(loaded.doc.model, known, targets, common.limit);
    std::string text;
    json rows = json::array();
    for (const auto& a : answers) {
        text += a.str() + "\n";
        rows.push_back(to_json(a));
    }
    text += std::to_string(answers.size()) + " answers\n";
    json j{{"command", "csp"}, {"answers", rows}, {"count", answers.size()}};
    emit(common, text, j);
    return 0;
}

// --- scenario run ---------------------------------------------------------------

std::string render_answers(const std::vector<Assignment>& answers) {
    std::string out;
    for (std::size_t i = 0; i < answers.size(); ++i) {
        if (i) out += ", ";
        out += answers[i].str();
    }
    return out.empty() ? "no answers" : out;
}

int cmd_scenario_run(const Common& common, const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    fs::path root(dir);
    if (fs::is_directory(root)) {
        for (const auto& entry : fs::directory_iterator(root)) {
            if (entry.is_regular_file() && entry.path().extension() == ".scn") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
    } else if (fs::is_regular_file(root)) {
        files.push_back(root);
    } else {
        throw UsageError("no such scenario file or directory: " + dir);
    }

    int passed = 0;
    int failed = 0;
    std::string text;
    json rows = json::array();
    for (const auto& file : files) {
        std::string name = file.stem().string();
        std::string detail;
        bool ok = false;
        try {
            dsl::ScenarioDoc doc = dsl::load_scenario_file(file);
            dsl::ScenarioResult result = dsl::run_scenario(doc, common.limit);
            ok = !result.passed || *result.passed;
            if (result.utterance) {
                detail = result.rendered;
            } else {
                detail = render_answers(result.answers);
            }
            if (!ok && doc.expected) {
                if (doc.expected->kind == dsl::Expectation::Kind::utterance) {
                    Utterance want{doc.expected->cause, doc.expected->effect, {}};
                    detail += ", expected " + render_utterance(want, doc.model);
                } else {
                    detail += ", expected " + render_answers(doc.expected->answers);
                }
            }
        } catch (const SfmError& e) {
            detail = e.what();
        }
        text += (ok ? "PASS " : "FAIL ") + name + ": " + detail + "\n";
        rows.push_back(json{{"name", name}, {"passed", ok}, {"detail", detail}});
        (ok ? passed : failed)++;
    }
    text += std::to_string(passed) + " passed, " + std::to_string(failed) + " failed\n";
    json j{{"command", "scenario-run"},
           {"results", rows},
           {"passed", passed},
           {"failed", failed}};
    emit(common, text, j);
    return failed == 0 ? 0 : 1;
}

// --- team and fd ------------------------------------------------------------------

int cmd_team(const Common& common, const std::string& path) {
    Loaded loaded = load_flexible(path);
    Team team = enumerate_team(loaded.doc.model, common.budget);
    std::string text;
    json rows = json::array();
    for (const auto& member : team) {
        text += member.str() + "\n";
        rows.push_back(to_json(member));
    }
    text += std::to_string(team.size()) + " worlds\n";
    json j{{"command", "team"}, {"worlds", rows}, {"count", team.size()}};
    emit(common, text, j);
    return 0;
}

int cmd_fd(const Common& common, const std::string& path, const std::string& x_literal,
           const std::string& y_literal, const std::string& value_literal) {
    Loaded loaded = load_flexible(path);
    Team team = enumerate_team(loaded.doc.model, common.budget);
    std::set<NodeId> targets = parse_node_list(y_literal);
    bool holds;
    if (!value_literal.empty()) {
        Assignment fragment = dsl::parse_assignment_literal(value_literal);
        holds = fd_value_holds(team, fragment, targets);
    } else {
        holds = fd_holds(team, parse_node_list(x_literal), targets);
    }
    json j{{"command", "fd"}, {"holds", holds}};
    emit(common, std::string(holds ? "fd holds\n" : "fd fails\n"), j);
    return holds ? 0 : 1;
}

// --- gmt -------------------------------------------------------------------------

int cmd_gmt(const Common& common, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::set<NodeId> nodes;
    std::set<std::pair<NodeId, NodeId>> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream fields(line);
        std::vector<std::string> tokens;
        std::string token;
        while (fields >> token) tokens.push_back(token);
        if (tokens.empty()) continue;
        if (tokens.size() == 1) {
            nodes.insert(NodeId(tokens[0]));
        } else if (tokens.size() == 2) {
            nodes.insert(NodeId(tokens[0]));
            nodes.insert(NodeId(tokens[1]));
            edges.insert({NodeId(tokens[0]), NodeId(tokens[1])});
        } else {
            throw dsl::ParseException(dsl::ParseError{
                line_no, 1, "expected one node or one SRC DST pair per line", {}});
        }
    }
    GmtWitness witness = gmt_witness(nodes, edges);
    std::string text;
    json j{{"command", "gmt"}};
    if (witness.kind == GmtWitness::Kind::root) {
        text = "root: " + witness.root.name + "\n";
        j["kind"] = "root";
        j["root"] = witness.root.name;
    } else {
        text = "cycle:";
        for (const auto& u : witness.cycle) text += " " + u.name;
        text += "\n";
        j["kind"] = "cycle";
        j["cycle"] = to_json(witness.cycle);
    }
    emit(common, text, j);
    return 0;
}

// --- prob -------------------------------------------------------------------------

Value parse_value_token(const std::string& token, int line_no) {
    if (token == "true") return Value::boolean(true);
    if (token == "false") return Value::boolean(false);
    auto bad = [&]() -> dsl::ParseException {
        return dsl::ParseException(
            dsl::ParseError{line_no, 1, "bad value token " + token, {}});
    };
    if (token.empty()) throw bad();
    char first = token[0];
    if (first == '-' || (first >= '0' && first <= '9')) {
        auto slash = token.find('/');
        errno = 0;
        char* rest = nullptr;
        if (slash == std::string::npos) {
            long long n = std::strtoll(token.c_str(), &rest, 10);
            if (errno || rest != token.c_str() + token.size()) throw bad();
            return Value::integer(n);
        }
        std::string num = token.substr(0, slash);
        std::string den = token.substr(slash + 1);
        long long n = std::strtoll(num.c_str(), &rest, 10);
        if (errno || num.empty() || rest != num.c_str() + num.size()) throw bad();
        long long d = std::strtoll(den.c_str(), &rest, 10);
        if (errno || den.empty() || rest != den.c_str() + den.size() || d == 0) {
            throw bad();
        }
        return Value::rational(n, d);
    }
    return Value::symbol(token);
}

Rational parse_rational_token(const std::string& token, int line_no) {
    Value v = parse_value_token(token, line_no);
    if (!v.is_numeric()) {
        throw dsl::ParseException(
            dsl::ParseError{line_no, 1, "bad probability " + token, {}});
    }
    return v.numeric();
}

/// Columnar network file: `node NAME v...`, `parents NODE p...`, and
/// `cpt NODE TUPLE VALUE PROB` lines, where TUPLE is `-` or comma-joined
/// parent values and PROB is `p/q`.  `#` comments.
prob::BayesNet load_bayes_net(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);

    std::map<NodeId, Domain> domains;
    std::map<NodeId, std::vector<NodeId>> parents;
    std::map<NodeId, std::map<std::vector<Value>, std::vector<prob::WeightedValue>>>
        cpt_rows;

    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& message) -> dsl::ParseException {
        return dsl::ParseException(dsl::ParseError{line_no, 1, message, {}});
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream fields(line);
        std::vector<std::string> tokens;
        std::string token;
        while (fields >> token) tokens.push_back(token);
        if (tokens.empty()) continue;
        const std::string& head = tokens[0];
        if (head == "node") {
            if (tokens.size() < 3) throw fail("node line needs a name and values");
            std::vector<Value> values;
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                values.push_back(parse_value_token(tokens[i], line_no));
            }
            if (!domains.insert({NodeId(tokens[1]), Domain::finite(values)}).second) {
                throw fail("node " + tokens[1] + " declared twice");
            }
        } else if (head == "parents") {
            if (tokens.size() < 3) throw fail("parents line needs a node and parents");
            std::vector<NodeId>& list = parents[NodeId(tokens[1])];
            if (!list.empty()) throw fail("parents of " + tokens[1] + " declared twice");
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                list.push_back(NodeId(tokens[i]));
            }
        } else if (head == "cpt") {
            if (tokens.size() != 5) throw fail("cpt line needs node, tuple, value, p/q");
            std::vector<Value> key;
            if (tokens[2] != "-") {
                std::stringstream parts(tokens[2]);
                std::string part;
                while (std::getline(parts, part, ',')) {
                    key.push_back(parse_value_token(part, line_no));
                }
            }
            cpt_rows[NodeId(tokens[1])][key].push_back(
                {parse_value_token(tokens[3], line_no),
                 parse_rational_token(tokens[4], line_no)});
        } else {
            throw fail("unknown directive " + head);
        }
    }

    std::set<NodeId> nodes;
    std::set<Edge> edges;
    for (const auto& [u, d] : domains) nodes.insert(u);
    for (const auto& [u, list] : parents) {
        for (const auto& p : list) edges.insert({p, u});
    }
    std::map<NodeId, prob::Cpt> cpts;
    for (const auto& u : nodes) {
        prob::Cpt cpt;
        if (auto it = parents.find(u); it != parents.end()) cpt.params = it->second;
        auto rows = cpt_rows.find(u);
        if (rows == cpt_rows.end()) {
            throw dsl::ParseException(
                dsl::ParseError{line_no, 1, "node " + u.name + " has no cpt lines", {}});
        }
        for (const auto& [key, support] : rows->second) {
            cpt.rows.insert({key, prob::Distribution(support)});
        }
        cpts.insert({u, std::move(cpt)});
    }
    return prob::BayesNet(std::move(nodes), std::move(edges), std::move(domains),
                          std::move(cpts));
}

int cmd_import_bn(const Common& common, const std::string& path) {
    prob::BnImport imported = prob::import_bayes_net(load_bayes_net(path));
    std::string text = dsl::print_model(imported.model.base());
    json noise = json::object();
    for (const auto& [node, root] : imported.noise_of) {
        text += "noise " + node.name + " " + root.name + "\n";
        noise[node.name] = root.name;
    }
    json dists = json::object();
    for (const auto& [root, rv] : imported.model.root_distributions()) {
        std::string dist_line = "dist " + root.name;
        json support = json::array();
        for (const auto& wv : rv.dist.support()) {
            dist_line += " " + wv.value.str() + ":" + wv.probability.str();
            support.push_back(json{{"value", wv.value.str()},
                                   {"p", wv.probability.str()}});
        }
        text += dist_line + "\n";
        dists[root.name] = support;
    }
    json j{{"command", "import-bn"},
           {"model", dsl::print_model(imported.model.base())},
           {"noise_of", noise},
           {"distributions", dists}};
    emit(common, text, j);
    return 0;
}

int cmd_prob_push(const Common& common, const std::string& path) {
    prob::BayesNet bn = load_bayes_net(path);
    prob::BnImport imported = prob::import_bayes_net(bn);
    std::map<Assignment, Rational> dist =
        prob::push_forward(imported.model, Assignment(), common.budget);
    std::set<NodeId> net_nodes = bn.nodes();
    std::map<Assignment, Rational> marginal;
    for (const auto& [world, p] : dist) {
        auto [it, fresh] = marginal.insert({world.restrict_to(net_nodes), p});
        if (!fresh) it->second += p;
    }
    std::string text;
    json rows = json::array();
    for (const auto& [world, p] : marginal) {
        text += world.str() + ": " + p.str() + "\n";
        rows.push_back(json{{"world", to_json(world)}, {"p", p.str()}});
    }
    json j{{"command", "prob-push"}, {"distribution", rows}};
    emit(common, text, j);
    return 0;
}

int cmd_prob_sample(const Common& common, const std::string& path, long long draws) {
    prob::BayesNet bn = load_bayes_net(path);
    prob::BnImport imported = prob::import_bayes_net(bn);
    prob::SampleStats stats =
        prob::sample(imported.model, Assignment(), common.seed, draws);
    std::set<NodeId> net_nodes = bn.nodes();
    std::map<Assignment, long long> marginal;
    for (const auto& [world, count] : stats.counts) {
        marginal[world.restrict_to(net_nodes)] += count;
    }
    std::string text;
    json rows = json::array();
    for (const auto& [world, count] : marginal) {
        text += world.str() + ": " + std::to_string(count) + "\n";
        rows.push_back(json{{"world", to_json(world)}, {"count", count}});
    }
    text += "draws: " + std::to_string(stats.draws) + "\n";
    json j{{"command", "prob-sample"}, {"counts", rows}, {"draws", stats.draws}};
    emit(common, text, j);
    return 0;
}

// --- bench -------------------------------------------------------------------------

int cmd_bench(const Common& common, const std::string& path,
              const std::string& exo_literal,
              const std::vector<std::string>& tweak_literals) {
    Loaded loaded = load_flexible(path);
    const Sfm& model = loaded.doc.model;
    Assignment reference;
    if (!exo_literal.empty()) {
        reference = vfi(model, dsl::parse_assignment_literal(exo_literal)).world;
    } else if (!loaded.doc.actual_world.empty()) {
        reference = loaded.doc.actual_world;
    } else if (loaded.has_section &&
               loaded.doc.kind == dsl::ScenarioKind::query_vfi) {
        reference = vfi(model, loaded.doc.query_exo).world;
    } else {
        throw UsageError("no reference world: pass --exo or use a scenario file");
    }
    std::vector<Assignment> tweaks;
    for (const auto& literal : tweak_literals) {
        tweaks.push_back(dsl::parse_assignment_literal(literal));
    }
    if (tweaks.empty() && loaded.doc.kind == dsl::ScenarioKind::contrast_tweak) {
        tweaks.push_back(loaded.doc.tweak);
    }
    if (tweaks.empty()) throw UsageError("no tweaks: pass --tweak at least once");

    BenchTable table = bench_eval_counts(model, reference, tweaks);
    std::string text;
    json rows = json::array();
    for (const auto& row : table.rows) {
        text += "tweak " + row.tweak.str() + ": vfi " + std::to_string(row.vfi_evals) +
                ", cfi " + std::to_string(row.cfi_evals) + ", saved " +
                std::to_string(row.saved) + "\n";
        rows.push_back(json{{"tweak", to_json(row.tweak)},
                            {"vfi", row.vfi_evals},
                            {"cfi", row.cfi_evals},
                            {"saved", row.saved}});
    }
    text += "total: vfi " + std::to_string(table.vfi_total) + ", cfi " +
            std::to_string(table.cfi_total) + ", saved " +
            std::to_string(table.saved_total) + "\n";
    json j{{"command", "bench"},
           {"rows", rows},
           {"vfi_total", table.vfi_total},
           {"cfi_total", table.cfi_total},
           {"saved_total", table.saved_total}};
    emit(common, text, j);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural functional model engine"};
    app.require_subcommand(1);
    Common common;

    std::string path;
    std::string exo_literal, targets_literal, known_literal;
    std::string actual_literal, default_literal, tweak_literal;
    std::string x_literal, y_literal, value_literal;
    std::vector<std::string> tweak_literals;
    long long draws = 10000;
    int status = 0;

    CLI::App* validate = app.add_subcommand("validate", "Check a model or scenario file");
    validate->add_option("file", path)->required();
    add_common(validate, common);
    validate->callback([&] { status = cmd_validate(common, path); });

    CLI::App* infer = app.add_subcommand("infer", "Forward inference");
    infer->add_option("file", path)->required();
    infer->add_option("--exo", exo_literal, "Root assignment, e.g. 'A:1,B:0'");
    infer->add_option("--targets", targets_literal, "Restrict inference to these nodes");
    add_common(infer, common);
    infer->callback([&] { status = cmd_infer(common, path, exo_literal, targets_literal); });

    CLI::App* contrast = app.add_subcommand("contrast", "Causal contrast between worlds");
    contrast->add_option("file", path)->required();
    contrast->add_option("--actual", actual_literal, "Actual world");
    contrast->add_option("--default", default_literal, "Contrastive default world");
    contrast->add_option("--tweak", tweak_literal, "Root tweak fragment");
    add_common(contrast, common);
    contrast->callback([&] {
        status = cmd_contrast(common, path, actual_literal, default_literal,
                              tweak_literal);
    });

    CLI::App* csp = app.add_subcommand("csp", "Backward inference");
    csp->add_option("file", path)->required();
    csp->add_option("--known", known_literal, "Known fragment");
    csp->add_option("--targets", targets_literal, "Nodes to solve for");
    add_common(csp, common);
    csp->callback([&] { status = cmd_csp(common, path, known_literal, targets_literal); });

    CLI::App* scenario = app.add_subcommand("scenario", "Scenario corpus tools");
    scenario->require_subcommand(1);
    CLI::App* run = scenario->add_subcommand("run", "Run scenario files");
    run->add_option("dir", path, "Directory of .scn files, or one file")->required();
    add_common(run, common);
    run->callback([&] { status = cmd_scenario_run(common, path); });

    CLI::App* team = app.add_subcommand("team", "Enumerate all satisfying worlds");
    team->add_option("file", path)->required();
    add_common(team, common);
    team->callback([&] { status = cmd_team(common, path); });

    CLI::App* fd = app.add_subcommand("fd", "Functional dependency check");
    fd->add_option("file", path)->required();
    fd->add_option("--x", x_literal, "Source nodes, comma separated");
    fd->add_option("--y", y_literal, "Target nodes, comma separated")->required();
    fd->add_option("--value", value_literal, "Value-level source fragment");
    add_common(fd, common);
    fd->callback([&] { status = cmd_fd(common, path, x_literal, y_literal, value_literal); });

    CLI::App* gmt = app.add_subcommand("gmt", "Root-or-cycle witness for an edge list");
    gmt->add_option("file", path)->required();
    add_common(gmt, common);
    gmt->callback([&] { status = cmd_gmt(common, path); });

    CLI::App* prob = app.add_subcommand("prob", "Probabilistic commands");
    prob->require_subcommand(1);
    CLI::App* import_bn = prob->add_subcommand("import-bn", "Rewrite a network as a model");
    import_bn->add_option("file", path)->required();
    add_common(import_bn, common);
    import_bn->callback([&] { status = cmd_import_bn(common, path); });
    CLI::App* push = prob->add_subcommand("push", "Exact distribution over worlds");
    push->add_option("file", path)->required();
    add_common(push, common);
    push->callback([&] { status = cmd_prob_push(common, path); });
    CLI::App* sample = prob->add_subcommand("sample", "Seeded sampling");
    sample->add_option("file", path)->required();
    sample->add_option("--draws", draws, "Number of draws");
    add_common(sample, common);
    sample->callback([&] { status = cmd_prob_sample(common, path, draws); });

    CLI::App* bench = app.add_subcommand("bench", "Eval counts: full vs change-driven");
    bench->add_option("file", path)->required();
    bench->add_option("--exo", exo_literal, "Reference root assignment");
    bench->add_option("--tweak", tweak_literals, "Tweak fragment (repeatable)");
    add_common(bench, common);
    bench->callback([&] { status = cmd_bench(common, path, exo_literal, tweak_literals); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sfm::dsl::ParseException& e) {
        std::cerr << "parse error: " << e.error().str() << "\n";
        return 2;
    } catch (const sfm::BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const sfm::SfmError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return status;
}
