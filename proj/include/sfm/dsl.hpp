#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sfm/contrast.hpp"
#include "sfm/errors.hpp"
#include "sfm/model.hpp"

namespace sfm::dsl {

/// Position and expectation information for a rejected input.  Line and
/// column are 1-based.
struct ParseError {
    int line{0};
    int col{0};
    std::string message;
    std::set<std::string> expected;

    std::string str() const;
};

class ParseException : public SfmError {
public:
    explicit ParseException(ParseError error)
        : SfmError(error.str()), error_(std::move(error)) {}

    const ParseError& error() const { return error_; }

private:
    ParseError error_;
};

enum class ScenarioKind { contrast_default, contrast_tweak, query_vfi, query_csp };

struct Expectation {
    enum class Kind { utterance, answers };

    Kind kind;
    Assignment cause;                  // kind == utterance
    Assignment effect;                 // kind == utterance; may be empty
    std::vector<Assignment> answers;   // kind == answers

    bool operator==(const Expectation& o) const {
        return kind == o.kind && cause == o.cause && effect == o.effect &&
               answers == o.answers;
    }
};

/// One parsed scenario: a model plus either a world contrast or a query,
/// optionally with the expected result.
struct ScenarioDoc {
    Sfm model;
    ScenarioKind kind{ScenarioKind::query_vfi};
    Assignment default_world;          // contrast_default
    Assignment actual_world;           // both contrast kinds
    Assignment tweak;                  // contrast_tweak
    Assignment query_exo;              // query_vfi
    Assignment csp_known;              // query_csp
    std::set<NodeId> csp_targets;      // query_csp
    std::optional<Expectation> expected;

    bool operator==(const ScenarioDoc& o) const;
};

/// Parses a standalone model document ("model { ... }").  Post-parse checks
/// reject models that do not validate.
Sfm parse_model(std::string_view text);

/// Parses a full scenario document.  An `include` directive in place of the
/// model section only resolves when the text comes from a file; use
/// load_scenario_file for that.
ScenarioDoc parse_scenario(std::string_view text);

Sfm load_model_file(const std::filesystem::path& path);
ScenarioDoc load_scenario_file(const std::filesystem::path& path);

/// Canonical text forms; parsing them back yields structurally equal data.
std::string print_model(const Sfm& model);
std::string print_scenario(const ScenarioDoc& doc);

/// Parses a command-line assignment literal such as "A:1,B:2/3" (braces
/// optional).  Uses the same value syntax as scenario files.
Assignment parse_assignment_literal(std::string_view text);

struct ScenarioResult {
    ScenarioKind kind;
    std::optional<Utterance> utterance;  // contrast kinds
    std::string rendered;                // contrast kinds: canonical sentence
    std::vector<Assignment> answers;     // query kinds
    std::map<NodeId, int> evals;
    std::optional<bool> passed;          // set when the doc carries an expectation
};

/// Executes the scenario's contrast or query.  Answer limit for backward
/// queries is `csp_limit`.
ScenarioResult run_scenario(const ScenarioDoc& doc, std::size_t csp_limit = 100);

/// Switch-circuit family for property tests: roots X1..Xn wired into one
/// output Y whose table realizes Boolean function number `function_index`
/// (bit i of the index is the output for the parent tuple with binary code
/// i, X1 most significant).  n must lie in [1, 3].
Sfm make_switch_circuit(int n, std::uint64_t function_index);

} // namespace sfm::dsl
