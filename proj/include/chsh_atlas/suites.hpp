#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chsh_atlas/scenarios.hpp"

namespace chsh {

struct SuiteResult {
    std::vector<CheckLine> lines;
    bool all_pass = true;

    void add(CheckLine line) {
        all_pass = all_pass && line.pass;
        lines.push_back(std::move(line));
    }
    void merge(const SuiteResult& other) {
        for (const CheckLine& l : other.lines) add(l);
    }
};

// Each criterion function runs the corresponding acceptance checks at full
// scale and returns one or more pass/fail lines tagged "C<k>/...".
SuiteResult criterion_classical_max(const SearchConfig& cfg);        // C1
SuiteResult criterion_quantum_max(const SearchConfig& cfg);          // C2
SuiteResult criterion_strictness(const SearchConfig& cfg);           // C3
SuiteResult criterion_markov_identities(const SearchConfig& cfg);    // C4
SuiteResult criterion_markov_variant(const SearchConfig& cfg);       // C5
SuiteResult criterion_monotonicity_violation(const SearchConfig& cfg);  // C6
SuiteResult criterion_classicability(const SearchConfig& cfg);       // C7
SuiteResult criterion_membership_certificates(const SearchConfig& cfg);  // C8
SuiteResult criterion_venn(const SearchConfig& cfg, const std::filesystem::path& dir);   // C9
SuiteResult criterion_hardy(const SearchConfig& cfg, const std::filesystem::path& dir);  // C10
SuiteResult criterion_oracles(const SearchConfig& cfg);              // C11

/// Suites: classical {C1,C3}, quantum {C2,C6,C7}, markov {C4,C5},
/// venn {C8,C9,C10,C11}, all = union.
SuiteResult run_suite(const std::string& name, const SearchConfig& cfg,
                      const std::filesystem::path& witness_dir);

}  // namespace chsh
