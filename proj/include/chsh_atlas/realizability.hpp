#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chsh_atlas/factor_graphs.hpp"
#include "chsh_atlas/json_text.hpp"
#include "chsh_atlas/lp.hpp"
#include "chsh_atlas/optimize.hpp"
#include "chsh_atlas/quantum.hpp"

namespace chsh {

enum class MembershipStatus { IN, OUT, UNKNOWN };

const char* status_name(MembershipStatus s);

/// Verdict with a re-verified witness (IN), a certificate (OUT), or the best
/// search residual (UNKNOWN). Exactly one witness field is set for IN.
struct MembershipVerdict {
    MembershipStatus status = MembershipStatus::UNKNOWN;

    std::optional<JointPmf> witness_pmf;
    std::optional<ChainFactors> witness_chain;
    std::optional<CycleFactors> witness_cycle;
    std::optional<QnfgModel> witness_model;

    std::vector<LmViolation> lm_violations;       // OUT: not even locally consistent
    std::optional<FarkasCertificate> farkas;      // OUT of the joint-PMF set
    std::vector<std::string> mismatch;            // OUT: chain reconstruction mismatch
    std::optional<double> residual;               // UNKNOWN: best fit residual

    ojson to_json() const;
};

/// Sum of squared entry differences over the four pairwise matrices.
double beliefs_residual(const BeliefCollection& a, const BeliefCollection& b);

/// The LP deciding realizability by a single factor node (= any joint PMF):
/// p on the 16-simplex with every cycle-pair marginal within `band` of b.
/// Inputs are rationalized from their 16-significant-digit decimal form.
LpProblem snfg_marginal_problem(const BeliefCollection& b, double band = 1e-13);

/// Exact membership in M(single-node) via rational LP; always decides.
/// IN: witness joint PMF reproducing b within 1e-12. OUT: Farkas certificate
/// for snfg_marginal_problem(b, band).
MembershipVerdict member_snfg(const BeliefCollection& b, double band = 1e-13);

/// Closed-form chain test: reconstruct the factors from b, recompose, and
/// compare all four pairwise matrices at 1e-10. Always decides. Conditionals
/// on zero-probability values use the row (1, 0).
MembershipVerdict member_markov(const BeliefCollection& b);

/// Heuristic cycle fit over log-parametrized factor tables; IN when the
/// squared mismatch drops below cfg.accept_residual, UNKNOWN otherwise
/// (never OUT: local search cannot prove non-existence).
MembershipVerdict member_fcyc(const BeliefCollection& b, const SearchConfig& cfg = {});

/// Heuristic model fit (lower-triangular square-root chart for rho, 4-real
/// charts for the unitaries); IN below cfg.accept_residual, else UNKNOWN.
MembershipVerdict member_qnfg(const BeliefCollection& b, const SearchConfig& cfg = {});

/// Best-fit residuals reached per seed; used for multi-seed OUT evidence.
std::vector<double> qnfg_residual_scan(const BeliefCollection& b, const SearchConfig& cfg,
                                       int seeds);
std::vector<double> fcyc_residual_scan(const BeliefCollection& b, const SearchConfig& cfg,
                                       int seeds);

}  // namespace chsh
