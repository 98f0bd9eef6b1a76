#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chsh_atlas/factor_graphs.hpp"
#include "chsh_atlas/optimize.hpp"
#include "chsh_atlas/quantum.hpp"

namespace chsh {

/// Best value found, the realizing argument, and per-restart best values.
struct OptResult {
    double value = 0;
    std::optional<JointPmf> pmf;
    std::optional<QnfgModel> model;
    std::optional<ChainFactors> chain;
    std::vector<double> restart_values;
    std::vector<TracePoint> trace;
};

enum class Direction { maximize, minimize };

/// Max (or min) of corr_chsh over joint PMFs via a softmax chart on the
/// 16-simplex; `product_only` restricts to p(x1) p(x2) p(x3) p(x4).
OptResult maximize_classical_chsh(const SearchConfig& cfg, Direction dir = Direction::maximize,
                                  bool product_only = false, bool record_trace = false);

/// Max of corr_chsh over models; pure-state chart by default, mixed chart
/// (lower-triangular square root of rho) when `mixed` is set.
OptResult maximize_quantum_chsh(const SearchConfig& cfg, bool mixed = false,
                                bool record_trace = false);

/// Max of |Corr(b_34)| - |Corr(b_12)| over models; positive values witness
/// that quantum marginals escape the chain monotonicity.
OptResult find_quantum_monotonicity_violation(const SearchConfig& cfg, bool record_trace = false);

/// Max of Corr(b_12) + Corr(b_24) + Corr(b_13) - Corr(b_34) over chains
/// (pairs {2,4} and {1,3} computed from the chain's full joint PMF).
OptResult maximize_markov_variant(const SearchConfig& cfg, bool record_trace = false);

struct StrictnessReport {
    double max_abs_sampled = 0;   // over random joint PMFs
    double max_abs_optimized = 0; // optimizer's best |corr_chsh|
    int samples = 0;
    bool below_quantum_bound = false;  // everything < 2 sqrt 2 - margin
};

/// Samples `samples` random joint PMFs and runs the classical optimizer;
/// checks nothing reaches 2 sqrt(2) - margin.
StrictnessReport verify_strictness(const SearchConfig& cfg, int samples = 100000,
                                   double margin = 1e-3);

struct MarkovReport {
    double max_product_deviation = 0;   // |Corr34 - Corr32 Corr12 Corr14|
    double max_monotonicity_violation = 0;
    int trials = 0;
};

/// Random chains with interior singles: checks the product identity and the
/// |Corr34| <= |Corr12| <= 1 chain.
MarkovReport verify_markov_chains(const SearchConfig& cfg, int trials = 1000);

/// Uniformly samples a chain with entries bounded away from 0/1.
ChainFactors random_chain(Prng& rng);

JointPmf random_joint_pmf(Prng& rng);

/// Chart used by the classical optimizer: softmax of 16 logits.
JointPmf pmf_from_logits(const Eigen::VectorXd& logits);

/// Chart used by the quantum searches (pure): 8 state reals + 4 + 4 angles.
QnfgModel model_from_pure_params(const Eigen::VectorXd& params);

/// Mixed chart: 16 reals for the lower-triangular square root of rho
/// (diagonal first, then re/im of the strictly-lower entries) + 4 + 4 angles.
QnfgModel model_from_mixed_params(const Eigen::VectorXd& params);

ChainFactors chain_from_params(const Eigen::VectorXd& params);

}  // namespace chsh
