#include "chsh_atlas/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace chsh {

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double h) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        double orig = x(k);
        xp(k) = orig + h;
        double fp = f(xp);
        xp(k) = orig - h;
        double fm = f(xp);
        xp(k) = orig;
        g(k) = (fp - fm) / (2 * h);
    }
    return g;
}

namespace {

struct RestartOutcome {
    double value;
    Eigen::VectorXd params;
    std::vector<TracePoint> trace;
};

RestartOutcome descend(const Objective& f, Eigen::VectorXd x, const SearchConfig& cfg, int iterations,
                       int restart_index, bool record_trace) {
    double fx = f(x);
    double step = cfg.init_step;
    RestartOutcome out;
    out.trace.reserve(record_trace ? static_cast<size_t>(iterations) : 0);
    for (int iter = 0; iter < iterations; ++iter) {
        Eigen::VectorXd g = fd_gradient(f, x, cfg.fd_step);
        double gnorm = g.norm();
        if (!(gnorm > 0) || !std::isfinite(gnorm)) break;
        bool improved = false;
        for (int backoff = 0; backoff < 40; ++backoff) {
            Eigen::VectorXd cand = x - (step / gnorm) * g;
            double fc = f(cand);
            if (fc < fx) {
                x = std::move(cand);
                fx = fc;
                improved = true;
                step = std::min(step * 1.6, 1e3);
                break;
            }
            step *= 0.5;
            if (step < 1e-14) break;
        }
        if (record_trace) out.trace.push_back({restart_index, iter, fx});
        if (!improved && step < 1e-14) break;
    }
    out.value = fx;
    out.params = std::move(x);
    return out;
}

RestartOutcome run_restart(const Objective& f, int dim, const SearchConfig& cfg, const InitSampler& init,
                           int restart_index, bool record_trace) {
    Prng rng = Prng(cfg.seed).derive(static_cast<uint64_t>(restart_index));
    Eigen::VectorXd x = init(rng);
    if (x.size() != dim) throw std::logic_error("init sampler returned wrong dimension");
    return descend(f, std::move(x), cfg, cfg.iterations, restart_index, record_trace);
}

}  // namespace

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHSH_ATLAS_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

MultistartResult minimize_multistart(const Objective& f, int dim, const SearchConfig& cfg,
                                     const InitSampler& init, bool record_trace) {
    if (cfg.restarts < 1 || cfg.iterations < 1)
        throw std::invalid_argument("SearchConfig: restarts and iterations must be >= 1");
    std::vector<RestartOutcome> outcomes(static_cast<size_t>(cfg.restarts));
    int threads = std::min(resolve_threads(cfg.threads), cfg.restarts);
    if (threads <= 1) {
        for (int r = 0; r < cfg.restarts; ++r)
            outcomes[static_cast<size_t>(r)] = run_restart(f, dim, cfg, init, r, record_trace);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                while (true) {
                    int r = next.fetch_add(1);
                    if (r >= cfg.restarts) return;
                    outcomes[static_cast<size_t>(r)] = run_restart(f, dim, cfg, init, r, record_trace);
                }
            });
        for (auto& th : pool) th.join();
    }
    MultistartResult res;
    res.restart_values.reserve(static_cast<size_t>(cfg.restarts));
    for (int r = 0; r < cfg.restarts; ++r) {
        const RestartOutcome& o = outcomes[static_cast<size_t>(r)];
        res.restart_values.push_back(o.value);
        if (res.best_restart < 0 || o.value < res.best_value) {
            res.best_value = o.value;
            res.best_params = o.params;
            res.best_restart = r;
        }
        if (record_trace)
            res.trace.insert(res.trace.end(), o.trace.begin(), o.trace.end());
    }
    if (cfg.polish_iterations > 0 && res.best_restart >= 0) {
        SearchConfig pcfg = cfg;
        pcfg.init_step = 0.02;
        RestartOutcome polished =
            descend(f, res.best_params, pcfg, cfg.polish_iterations, -1, record_trace);
        if (polished.value < res.best_value) {
            res.best_value = polished.value;
            res.best_params = std::move(polished.params);
        }
        if (record_trace)
            res.trace.insert(res.trace.end(), polished.trace.begin(), polished.trace.end());
    }
    return res;
}

}  // namespace chsh
