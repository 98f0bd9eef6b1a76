#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chsh_atlas/extremal.hpp"
#include "chsh_atlas/realizability.hpp"

namespace chsh {

enum class Evidence { certified, numerical };

const char* evidence_name(Evidence e);

struct SetClaim {
    MembershipStatus status = MembershipStatus::UNKNOWN;
    Evidence evidence = Evidence::numerical;
    std::string note;
};

inline constexpr std::array<const char*, 5> kSetNames{"lm", "snfg", "markov", "fcyc", "qnfg"};

/// One region of the membership diagram: a stored belief collection, the
/// claimed status per set, and stored realizing witnesses for IN claims.
struct RegionWitness {
    std::string id;     // e.g. "mkov&qnfg"
    std::string label;  // human-readable region description
    BeliefCollection beliefs;
    std::map<std::string, SetClaim> claims;

    std::optional<JointPmf> pmf;
    std::optional<ChainFactors> chain;
    std::optional<CycleFactors> cycle;
    std::optional<QnfgModel> model;
};

struct BellGame {
    QnfgModel model;
    BeliefCollection beliefs;
};

struct HardyReport {
    QnfgModel model;
    BeliefCollection beliefs;
    double zero14 = 0;   // beta_14(0,0)
    double zero32 = 0;   // beta_32(0,0)
    double zero34 = 0;   // beta_34(1,1)
    double p12_00 = 0;   // achieved beta_12(0,0)
};

/// Directory holding the stored witnesses: CHSH_ATLAS_WITNESS_DIR when set,
/// otherwise ./witnesses.
std::filesystem::path default_witness_dir();

// --- generation (maintenance path; deterministic given the seed) ---

BellGame generate_bell_game(const SearchConfig& cfg);

/// Constrained maximization of beta_12(0,0): for fixed unitaries the three
/// zero constraints are linear in a pure state, so the state is taken from
/// the null space and only the unitaries are searched.
HardyReport generate_hardy(const SearchConfig& cfg);

std::vector<RegionWitness> generate_venn_witnesses(const SearchConfig& cfg);

/// Writes manifest.json plus per-region and scenario files into dir.
void write_witness_files(const std::filesystem::path& dir, const SearchConfig& cfg);

// --- stored accessors (tests verify, never regenerate) ---

BellGame bell_game_model(const std::filesystem::path& dir = default_witness_dir());
HardyReport hardy_model(const std::filesystem::path& dir = default_witness_dir());
std::vector<RegionWitness> venn_witnesses(const std::filesystem::path& dir = default_witness_dir());

/// The classical-impossibility LP of the Hardy pattern: joint PMFs with the
/// three zeros (<= 1e-9) and beta_12(0,0) >= floor. Infeasible for any
/// positive floor; the certificate is the mechanical form of the paradox.
LpProblem hardy_classical_lp(double floor = 0.01);

// --- verification ---

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Re-verifies every stored claim from scratch: certified claims by their
/// exact procedure, numerical OUT claims by multi-seed residual scans.
std::vector<CheckLine> verify_venn(const std::filesystem::path& dir, const SearchConfig& cfg,
                                   int scan_seeds = 16, double scan_floor = 1e-4);

}  // namespace chsh
