#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "chsh_atlas/rng.hpp"

namespace chsh {

/// Shared knobs for the multi-start searches. All randomness flows from
/// `seed` through counter-based streams, one per restart, so results are
/// identical for any thread count.
struct SearchConfig {
    uint64_t seed = 0;
    int restarts = 64;
    int iterations = 2000;
    int polish_iterations = 3000;   // continuation from the best restart
    double init_step = 0.25;
    double fd_step = 1e-6;          // central-difference step
    double accept_residual = 1e-9;  // residual below which fitters claim IN
    double guard_eps = 1e-6;        // interiority penalty threshold
    int threads = 0;                // 0: CHSH_ATLAS_THREADS or 1

    SearchConfig with_seed(uint64_t s) const {
        SearchConfig c = *this;
        c.seed = s;
        return c;
    }
    SearchConfig with_restarts(int r) const {
        SearchConfig c = *this;
        c.restarts = r;
        return c;
    }
};

struct TracePoint {
    int restart;
    int iteration;
    double objective;
};

struct MultistartResult {
    double best_value = 0;  // minimum found
    Eigen::VectorXd best_params;
    int best_restart = -1;
    std::vector<double> restart_values;  // best value per restart
    std::vector<TracePoint> trace;       // filled when record_trace is set
};

using Objective = std::function<double(const Eigen::VectorXd&)>;
using InitSampler = std::function<Eigen::VectorXd(Prng&)>;

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double h);

/// Multi-start adaptive gradient descent (backtracking step control,
/// central-difference gradients). Ties between restarts break toward the
/// lower restart index.
MultistartResult minimize_multistart(const Objective& f, int dim, const SearchConfig& cfg,
                                     const InitSampler& init, bool record_trace = false);

/// Thread budget: `requested` if positive, else CHSH_ATLAS_THREADS, else 1.
int resolve_threads(int requested);

}  // namespace chsh
