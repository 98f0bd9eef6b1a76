#include "chsh_atlas/extremal.hpp"

#include <cmath>

namespace chsh {

namespace {

constexpr double kBadValue = 1e6;

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// corr_chsh without throwing: returns NaN-free value or kBadValue when a
// single sits on the boundary; adds an interiority penalty below guard_eps.
double penalized_neg_corr(const BeliefCollection& b, double guard_eps, double direction) {
    double pen = 0;
    for (int v = 1; v <= 4; ++v)
        for (int r = 0; r < 2; ++r) {
            double s = b.single(v)(r);
            if (s < 1e-12 || s > 1 - 1e-12) return kBadValue;
            if (s < guard_eps) pen += (guard_eps - s) / guard_eps;
            if (s > 1 - guard_eps) pen += (s - (1 - guard_eps)) / guard_eps;
        }
    double total = 0;
    for (KPair p : kAllPairs) {
        auto [vi, vj] = pair_vars(p);
        double di = b.single(vi)(0) * b.single(vi)(1);
        double dj = b.single(vj)(0) * b.single(vj)(1);
        double corr = b.pair(p).determinant() / std::sqrt(di * dj);
        total += (p == KPair::p34) ? -corr : corr;
    }
    return direction * total + pen;
}

}  // namespace

JointPmf pmf_from_logits(const Eigen::VectorXd& logits) {
    Eigen::Array<double, 16, 1> t;
    double mx = logits.maxCoeff();
    for (int i = 0; i < 16; ++i) t(i) = std::exp(logits(i) - mx);
    t /= t.sum();
    return JointPmf{t};
}

QnfgModel model_from_pure_params(const Eigen::VectorXd& params) {
    Eigen::Vector4cd psi;
    for (int k = 0; k < 4; ++k) psi(k) = Complex(params(2 * k), params(2 * k + 1));
    double n = psi.norm();
    if (n < 1e-12) {
        psi.setZero();
        psi(0) = 1.0;
    } else {
        psi /= n;
    }
    Mat2c u1 = chart_unitary(params(8), params(9), params(10), params(11));
    Mat2c u2 = chart_unitary(params(12), params(13), params(14), params(15));
    Mat4c rho = psi * psi.adjoint();
    return QnfgModel{DensityMatrix{rho}, Unitary2{u1}, Unitary2{u2}};
}

QnfgModel model_from_mixed_params(const Eigen::VectorXd& params) {
    Mat4c ell = Mat4c::Zero();
    for (int k = 0; k < 4; ++k) ell(k, k) = params(k);
    int idx = 4;
    for (int r = 1; r < 4; ++r)
        for (int c = 0; c < r; ++c) {
            ell(r, c) = Complex(params(idx), params(idx + 1));
            idx += 2;
        }
    Mat4c rho = ell * ell.adjoint();
    double tr = rho.trace().real();
    if (tr < 1e-12)
        rho = 0.25 * Mat4c::Identity();
    else
        rho /= tr;
    rho = Mat4c((rho + rho.adjoint()) / 2.0);
    Mat2c u1 = chart_unitary(params(16), params(17), params(18), params(19));
    Mat2c u2 = chart_unitary(params(20), params(21), params(22), params(23));
    return QnfgModel{DensityMatrix{rho}, Unitary2{u1}, Unitary2{u2}};
}

ChainFactors chain_from_params(const Eigen::VectorXd& params) {
    ChainFactors cf;
    double mx = params.head<4>().maxCoeff();
    double sum = 0;
    for (int k = 0; k < 4; ++k) {
        double e = std::exp(params(k) - mx);
        cf.m12(k / 2, k % 2) = e;
        sum += e;
    }
    cf.m12 /= sum;
    for (int r = 0; r < 2; ++r) {
        double a = sigmoid(params(4 + r));
        cf.m4given1(r, 0) = a;
        cf.m4given1(r, 1) = 1 - a;
        double b = sigmoid(params(6 + r));
        cf.m3given2(r, 0) = b;
        cf.m3given2(r, 1) = 1 - b;
    }
    return cf;
}

JointPmf random_joint_pmf(Prng& rng) {
    Eigen::Array<double, 16, 1> t;
    for (int i = 0; i < 16; ++i) t(i) = rng.uniform() + 1e-6;
    t /= t.sum();
    return JointPmf{t};
}

ChainFactors random_chain(Prng& rng) {
    ChainFactors cf;
    double sum = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            cf.m12(r, c) = rng.uniform(0.05, 1.0);
            sum += cf.m12(r, c);
        }
    cf.m12 /= sum;
    for (int r = 0; r < 2; ++r) {
        double a = rng.uniform(0.05, 0.95);
        cf.m4given1(r, 0) = a;
        cf.m4given1(r, 1) = 1 - a;
        double b = rng.uniform(0.05, 0.95);
        cf.m3given2(r, 0) = b;
        cf.m3given2(r, 1) = 1 - b;
    }
    return cf;
}

OptResult maximize_classical_chsh(const SearchConfig& cfg, Direction dir, bool product_only,
                                  bool record_trace) {
    const double direction = dir == Direction::maximize ? -1.0 : 1.0;
    const int dim = product_only ? 4 : 16;
    auto chart = [product_only](const Eigen::VectorXd& params) {
        if (!product_only) return pmf_from_logits(params);
        double q[4];
        for (int v = 0; v < 4; ++v) q[v] = sigmoid(params(v));
        Eigen::Array<double, 16, 1> t;
        for (int idx = 0; idx < 16; ++idx) {
            double val = 1;
            for (int v = 0; v < 4; ++v) {
                int bit = (idx >> (3 - v)) & 1;
                val *= bit == 0 ? q[v] : 1 - q[v];
            }
            t(idx) = val;
        }
        return JointPmf{t};
    };
    Objective f = [&](const Eigen::VectorXd& params) {
        return penalized_neg_corr(beliefs_of(chart(params)), cfg.guard_eps, direction);
    };
    InitSampler init = [dim](Prng& rng) {
        Eigen::VectorXd x(dim);
        for (int k = 0; k < dim; ++k) x(k) = 2.0 * rng.gauss();
        return x;
    };
    MultistartResult ms = minimize_multistart(f, dim, cfg, init, record_trace);
    OptResult out;
    out.restart_values = std::move(ms.restart_values);
    out.trace = std::move(ms.trace);
    // The optimum sits on a face of the simplex; the softmax chart can only
    // approach it, so also evaluate copies with the near-dead entries snapped
    // to exact zero and keep whichever scores best.
    JointPmf raw = chart(ms.best_params);
    out.pmf = raw;
    out.value = corr_chsh(beliefs_of(raw), 1e-9);
    for (double snap : {1e-4, 1e-6}) {
        Eigen::Array<double, 16, 1> t = raw.table;
        double cutoff = snap * t.maxCoeff();
        for (int i = 0; i < 16; ++i)
            if (t(i) < cutoff) t(i) = 0.0;
        t /= t.sum();
        JointPmf cand{t};
        double v;
        try {
            v = corr_chsh(beliefs_of(cand), 1e-9);
        } catch (const DegenerateMarginal&) {
            continue;
        }
        bool better = dir == Direction::maximize ? v > out.value : v < out.value;
        if (better) {
            out.value = v;
            out.pmf = cand;
        }
    }
    return out;
}

OptResult maximize_quantum_chsh(const SearchConfig& cfg, bool mixed, bool record_trace) {
    const int dim = mixed ? 24 : 16;
    Objective f = [&, mixed](const Eigen::VectorXd& params) {
        if (!mixed) {
            Eigen::Vector4cd psi;
            for (int k = 0; k < 4; ++k) psi(k) = Complex(params(2 * k), params(2 * k + 1));
            double n = psi.norm();
            if (n < 1e-12) return kBadValue;
            psi /= n;
            Mat2c pm;
            pm << psi(0), psi(1), psi(2), psi(3);
            BeliefCollection b = quantum_beliefs_pure(pm, chart_unitary(params(8), params(9), params(10), params(11)),
                                                      chart_unitary(params(12), params(13), params(14), params(15)));
            return penalized_neg_corr(b, cfg.guard_eps, -1.0);
        }
        return penalized_neg_corr(quantum_beliefs(model_from_mixed_params(params)), cfg.guard_eps, -1.0);
    };
    InitSampler init = [dim](Prng& rng) {
        Eigen::VectorXd x(dim);
        for (int k = 0; k < dim; ++k) x(k) = rng.gauss();
        return x;
    };
    MultistartResult ms = minimize_multistart(f, dim, cfg, init, record_trace);
    OptResult out;
    out.model = mixed ? model_from_mixed_params(ms.best_params) : model_from_pure_params(ms.best_params);
    out.value = corr_chsh(quantum_beliefs(*out.model), 1e-9);
    out.restart_values = std::move(ms.restart_values);
    out.trace = std::move(ms.trace);
    return out;
}

OptResult find_quantum_monotonicity_violation(const SearchConfig& cfg, bool record_trace) {
    const int dim = 16;
    Objective f = [&](const Eigen::VectorXd& params) {
        Eigen::Vector4cd psi;
        for (int k = 0; k < 4; ++k) psi(k) = Complex(params(2 * k), params(2 * k + 1));
        double n = psi.norm();
        if (n < 1e-12) return kBadValue;
        psi /= n;
        Mat2c pm;
        pm << psi(0), psi(1), psi(2), psi(3);
        BeliefCollection b = quantum_beliefs_pure(pm, chart_unitary(params(8), params(9), params(10), params(11)),
                                                  chart_unitary(params(12), params(13), params(14), params(15)));
        double pen = 0;
        for (int v = 1; v <= 4; ++v)
            for (int r = 0; r < 2; ++r) {
                double s = b.single(v)(r);
                if (s < 1e-12 || s > 1 - 1e-12) return kBadValue;
                if (s < cfg.guard_eps) pen += (cfg.guard_eps - s) / cfg.guard_eps;
            }
        auto corr = [&](KPair p) {
            auto [vi, vj] = pair_vars(p);
            double di = b.single(vi)(0) * b.single(vi)(1);
            double dj = b.single(vj)(0) * b.single(vj)(1);
            return b.pair(p).determinant() / std::sqrt(di * dj);
        };
        return -(std::abs(corr(KPair::p34)) - std::abs(corr(KPair::p12))) + pen;
    };
    InitSampler init = [dim](Prng& rng) {
        Eigen::VectorXd x(dim);
        for (int k = 0; k < dim; ++k) x(k) = rng.gauss();
        return x;
    };
    MultistartResult ms = minimize_multistart(f, dim, cfg, init, record_trace);
    OptResult out;
    out.model = model_from_pure_params(ms.best_params);
    BeliefCollection b = quantum_beliefs(*out.model);
    out.value = std::abs(pcc(b, KPair::p34, 1e-9)) - std::abs(pcc(b, KPair::p12, 1e-9));
    out.restart_values = std::move(ms.restart_values);
    out.trace = std::move(ms.trace);
    return out;
}

namespace {

double markov_variant_value(const ChainFactors& cf, double guard) {
    JointPmf p = induced_pmf(cf.build());
    BeliefCollection b = beliefs_of(p);
    Eigen::ArrayXd m24 = marginal(p, {2, 4});
    Eigen::ArrayXd m13 = marginal(p, {1, 3});
    Mat2 j24, j13;
    j24 << m24(0), m24(1), m24(2), m24(3);
    j13 << m13(0), m13(1), m13(2), m13(3);
    return pcc(b, KPair::p12, guard) + pcc_of_joint(j24, guard) + pcc_of_joint(j13, guard) -
           pcc(b, KPair::p34, guard);
}

}  // namespace

OptResult maximize_markov_variant(const SearchConfig& cfg, bool record_trace) {
    Objective f = [&](const Eigen::VectorXd& params) {
        ChainFactors cf = chain_from_params(params);
        JointPmf p = induced_pmf(cf.build());
        BeliefCollection b = beliefs_of(p);
        double pen = 0;
        for (int v = 1; v <= 4; ++v)
            for (int r = 0; r < 2; ++r) {
                double s = b.single(v)(r);
                if (s < 1e-12 || s > 1 - 1e-12) return kBadValue;
                if (s < cfg.guard_eps) pen += (cfg.guard_eps - s) / cfg.guard_eps;
            }
        Eigen::ArrayXd m24 = marginal(p, {2, 4});
        Eigen::ArrayXd m13 = marginal(p, {1, 3});
        Mat2 j24, j13;
        j24 << m24(0), m24(1), m24(2), m24(3);
        j13 << m13(0), m13(1), m13(2), m13(3);
        auto raw = [&](const Mat2& joint) {
            Vec2 si = joint.rowwise().sum();
            Vec2 sj = joint.colwise().sum().transpose();
            return joint.determinant() / std::sqrt(si(0) * si(1) * sj(0) * sj(1));
        };
        double val = raw(b.pair(KPair::p12)) + raw(j24) + raw(j13) - raw(b.pair(KPair::p34));
        return -val + pen;
    };
    InitSampler init = [](Prng& rng) {
        Eigen::VectorXd x(8);
        for (int k = 0; k < 8; ++k) x(k) = 3.0 * rng.gauss();
        return x;
    };
    MultistartResult ms = minimize_multistart(f, 8, cfg, init, record_trace);
    OptResult out;
    out.chain = chain_from_params(ms.best_params);
    out.value = markov_variant_value(*out.chain, 1e-9);
    out.restart_values = std::move(ms.restart_values);
    out.trace = std::move(ms.trace);
    return out;
}

StrictnessReport verify_strictness(const SearchConfig& cfg, int samples, double margin) {
    StrictnessReport rep;
    rep.samples = samples;
    Prng rng = Prng(cfg.seed).derive(0xabcdef);
    for (int k = 0; k < samples; ++k) {
        BeliefCollection b = beliefs_of(random_joint_pmf(rng));
        double v;
        try {
            v = corr_chsh(b, 1e-9);
        } catch (const DegenerateMarginal&) {
            continue;
        }
        rep.max_abs_sampled = std::max(rep.max_abs_sampled, std::abs(v));
    }
    OptResult hi = maximize_classical_chsh(cfg, Direction::maximize);
    OptResult lo = maximize_classical_chsh(cfg, Direction::minimize);
    rep.max_abs_optimized = std::max(std::abs(hi.value), std::abs(lo.value));
    const double tsirelson = 2.0 * std::sqrt(2.0);
    rep.below_quantum_bound =
        rep.max_abs_sampled < tsirelson - margin && rep.max_abs_optimized < tsirelson - margin;
    return rep;
}

MarkovReport verify_markov_chains(const SearchConfig& cfg, int trials) {
    MarkovReport rep;
    rep.trials = trials;
    Prng rng = Prng(cfg.seed).derive(0x51a7e);
    for (int k = 0; k < trials; ++k) {
        ChainFactors cf = random_chain(rng);
        BeliefCollection b = beliefs_of(induced_pmf(cf.build()));
        double c12 = pcc(b, KPair::p12), c14 = pcc(b, KPair::p14);
        double c32 = pcc(b, KPair::p32), c34 = pcc(b, KPair::p34);
        rep.max_product_deviation =
            std::max(rep.max_product_deviation, std::abs(c34 - c32 * c12 * c14));
        double mono = std::max(std::abs(c34) - std::abs(c12), std::abs(c12) - 1.0);
        rep.max_monotonicity_violation = std::max(rep.max_monotonicity_violation, mono);
    }
    return rep;
}

}  // namespace chsh
