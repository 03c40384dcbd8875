#pragma once

// validate -> cocycles -> clannish and Jacobian algebras -> Morita
// comparison, per file and over a directory of files.

#include "orbiclan/algebra.hpp"
#include "orbiclan/species.hpp"
#include "orbiclan/surface.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbiclan::pipeline {

/// B-like species against the clannish algebra over C, C-like against R.
enum class Pairing { BComplex, CReal, Both };

std::string to_string(Pairing p);
Pairing parse_pairing(const std::string& s);   // "b", "c" or "both"

enum class Format { Json, Text };

struct RunConfig {
    std::string input;
    Pairing pairing = Pairing::Both;
    std::size_t degree_cap = 32;
    std::size_t cocycle_cap = 4096;
    std::string output;                 // empty: standard output
    Format format = Format::Json;
    species::PotentialConvention convention = species::PotentialConvention::SecondTwisted;

    /// Throws InputError on non-positive caps.
    void check() const;
};

nlohmann::json convention_block(const RunConfig& cfg);

struct SideResult {
    std::vector<std::size_t> graded_dims;
    std::size_t dim = 0;
    algebra::MoritaProfile profile;
};

struct CaseResult {
    std::size_t cocycle_index = 0;
    nlohmann::json cocycle;
    Pairing pairing = Pairing::BComplex;
    std::string status;                 // "consistent", "inconsistent" or "skipped"
    std::string reason;                 // for skipped cases
    bool mutated = false;               // relations dropped through meta.mutation
    std::optional<SideResult> clannish;
    std::optional<SideResult> jacobian;
    std::optional<algebra::MoritaVerdict> verdict;

    nlohmann::json to_json() const;
};

struct Report {
    std::string input;
    bool valid = false;
    surface::ValidationReport validation;
    std::string error;                  // parse or schema failure
    std::optional<surface::TriangleCensus> census;
    std::size_t cocycle_count = 0;
    std::vector<CaseResult> cases;
    RunConfig config;

    /// 0 all consistent, 1 some inconsistency, 2 invalid input.
    int exit_code() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// Compares the two sides for one colored triangulation and pairing.
CaseResult run_case(const surface::TriangulationData& t, const complex::CWComplex& c, const complex::Cocycle& xi,
                    std::size_t index, Pairing pairing, const RunConfig& cfg);

Report run_pipeline(const surface::TriangulationData& t, const RunConfig& cfg);

/// Reads cfg.input. Parse failures come back as an invalid report.
Report run_pipeline(const RunConfig& cfg);

struct SweepRow {
    std::string file;
    std::size_t cocycle_index = 0;
    std::string pairing;
    std::string status;
    std::size_t clannish_dim = 0;
    std::size_t jacobian_dim = 0;
    std::string clannish_hash;
    std::string jacobian_hash;
};

struct SweepSummary {
    std::vector<SweepRow> rows;
    std::vector<std::pair<std::string, std::string>> failures;   // (file, reason)

    int exit_code() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// Every *.json file of dir in name order.
SweepSummary corpus_sweep(const std::string& dir, const RunConfig& defaults);

} // namespace orbiclan::pipeline
