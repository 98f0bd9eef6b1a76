#include "chsh_atlas/realizability.hpp"

#include "chsh_atlas/extremal.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>

namespace chsh {

const char* status_name(MembershipStatus s) {
    switch (s) {
        case MembershipStatus::IN: return "IN";
        case MembershipStatus::OUT: return "OUT";
        case MembershipStatus::UNKNOWN: return "UNKNOWN";
    }
    return "?";
}

double beliefs_residual(const BeliefCollection& a, const BeliefCollection& b) {
    double r = 0;
    for (KPair p : kAllPairs) r += (a.pair(p) - b.pair(p)).squaredNorm();
    return r;
}

namespace {

MembershipVerdict out_of_lm(LmReport rep) {
    MembershipVerdict v;
    v.status = MembershipStatus::OUT;
    v.lm_violations = std::move(rep.violations);
    return v;
}

int var_bit(int idx, int var) { return (idx >> (4 - var)) & 1; }

}  // namespace

LpProblem snfg_marginal_problem(const BeliefCollection& b, double band) {
    LpProblem lp;
    lp.num_vars = 16;
    Rational delta = Rational::from_double(band, 3);
    std::vector<Rational> ones(16, Rational(1));
    lp.add_eq(ones, Rational(1));
    for (KPair p : kAllPairs) {
        auto [vi, vj] = pair_vars(p);
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c) {
                std::vector<Rational> row(16);
                for (int idx = 0; idx < 16; ++idx)
                    if (var_bit(idx, vi) == a && var_bit(idx, vj) == c)
                        row[static_cast<size_t>(idx)] = Rational(1);
                Rational beta = Rational::from_double(b.pair(p)(a, c), 16);
                // beta - band <= marginal <= beta + band
                lp.add_le(row, beta + delta);
                for (Rational& r : row) r = -r;
                lp.add_le(std::move(row), delta - beta);
            }
    }
    return lp;
}

MembershipVerdict member_snfg(const BeliefCollection& b, double band) {
    LmReport rep = validate_lm(b, 1e-9);
    if (!rep.member) return out_of_lm(std::move(rep));

    LpProblem lp = snfg_marginal_problem(b, band);
    LpResult res = solve_lp_feasibility(lp);
    MembershipVerdict v;
    if (!res.feasible) {
        v.status = MembershipStatus::OUT;
        v.farkas = std::move(res.certificate);
        return v;
    }
    Eigen::Array<double, 16, 1> t;
    for (int i = 0; i < 16; ++i) t(i) = res.point[static_cast<size_t>(i)].to_double();
    JointPmf witness = JointPmf::from_table(t);
    double err = 0;
    BeliefCollection wb = beliefs_of(witness);
    for (KPair p : kAllPairs) err = std::max(err, (wb.pair(p) - b.pair(p)).cwiseAbs().maxCoeff());
    if (err > 1e-12)
        throw std::logic_error("member_snfg: witness fails to reproduce the input beliefs");
    v.status = MembershipStatus::IN;
    v.witness_pmf = witness;
    return v;
}

MembershipVerdict member_markov(const BeliefCollection& b) {
    LmReport rep = validate_lm(b, 1e-9);
    if (!rep.member) return out_of_lm(std::move(rep));

    ChainFactors cf;
    cf.m12 = b.pair(KPair::p12) / b.pair(KPair::p12).sum();
    for (int x1 = 0; x1 < 2; ++x1) {
        double mass = b.single(1)(x1);
        if (mass > 0) {
            double p0 = std::clamp(b.pair(KPair::p14)(x1, 0) / mass, 0.0, 1.0);
            cf.m4given1(x1, 0) = p0;
            cf.m4given1(x1, 1) = 1 - p0;
        } else {
            cf.m4given1(x1, 0) = 1;
            cf.m4given1(x1, 1) = 0;
        }
    }
    for (int x2 = 0; x2 < 2; ++x2) {
        double mass = b.single(2)(x2);
        if (mass > 0) {
            double p0 = std::clamp(b.pair(KPair::p32)(0, x2) / mass, 0.0, 1.0);
            cf.m3given2(x2, 0) = p0;
            cf.m3given2(x2, 1) = 1 - p0;
        } else {
            cf.m3given2(x2, 0) = 1;
            cf.m3given2(x2, 1) = 0;
        }
    }

    BeliefCollection composed = beliefs_of(induced_pmf(cf.build()));
    MembershipVerdict v;
    std::vector<std::string> mismatch;
    char buf[96];
    for (KPair p : kAllPairs)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                double got = composed.pair(p)(r, c), want = b.pair(p)(r, c);
                if (std::abs(got - want) > 1e-10) {
                    std::snprintf(buf, sizeof buf, "beta_%s(%d,%d): chain gives %.12g, input has %.12g",
                                  pair_name(p), r, c, got, want);
                    mismatch.push_back(buf);
                }
            }
    if (mismatch.empty()) {
        v.status = MembershipStatus::IN;
        v.witness_chain = cf;
    } else {
        v.status = MembershipStatus::OUT;
        v.mismatch = std::move(mismatch);
    }
    return v;
}

namespace {

CycleFactors cycle_from_logs(const Eigen::VectorXd& params) {
    auto table = [&](int base) {
        Mat2 m;
        for (int k = 0; k < 4; ++k)
            m(k / 2, k % 2) = std::exp(std::clamp(params(base + k), -60.0, 60.0));
        return m;
    };
    return CycleFactors{table(0), table(4), table(8), table(12)};
}

Eigen::VectorXd logs_of_cycle(const CycleFactors& cf) {
    Eigen::VectorXd x(16);
    const Mat2* tabs[4] = {&cf.f12, &cf.f14, &cf.f32, &cf.f34};
    for (int t = 0; t < 4; ++t)
        for (int k = 0; k < 4; ++k)
            x(4 * t + k) = std::log(std::max((*tabs[t])(k / 2, k % 2), 1e-26));
    return x;
}

double cycle_residual(const CycleFactors& cf, const BeliefCollection& b) {
    return beliefs_residual(beliefs_of(induced_pmf(cf.build())), b);
}

// factor tables with every entry below 1e-6 * max snapped to exact zero
CycleFactors snapped_cycle(const CycleFactors& cf) {
    CycleFactors out = cf;
    Mat2* tabs[4] = {&out.f12, &out.f14, &out.f32, &out.f34};
    for (Mat2* t : tabs) {
        double mx = t->maxCoeff();
        for (int k = 0; k < 4; ++k)
            if ((*t)(k / 2, k % 2) < 1e-6 * mx) (*t)(k / 2, k % 2) = 0.0;
    }
    return out;
}

// chain-shaped starting point: the cycle that reproduces b exactly whenever
// b is chain-realizable (f34 constant)
CycleFactors chain_shaped_init(const BeliefCollection& b) {
    CycleFactors cf;
    cf.f12 = b.pair(KPair::p12);
    for (int x1 = 0; x1 < 2; ++x1) {
        double mass = b.single(1)(x1);
        for (int x4 = 0; x4 < 2; ++x4)
            cf.f14(x1, x4) = mass > 1e-12 ? b.pair(KPair::p14)(x1, x4) / mass : (x4 == 0 ? 1.0 : 0.0);
    }
    for (int x2 = 0; x2 < 2; ++x2) {
        double mass = b.single(2)(x2);
        for (int x3 = 0; x3 < 2; ++x3)
            cf.f32(x3, x2) = mass > 1e-12 ? b.pair(KPair::p32)(x3, x2) / mass : (x3 == 0 ? 1.0 : 0.0);
    }
    cf.f34 = Mat2::Ones();
    return cf;
}

}  // namespace

MembershipVerdict member_fcyc(const BeliefCollection& b, const SearchConfig& cfg) {
    LmReport rep = validate_lm(b, 1e-9);
    if (!rep.member) return out_of_lm(std::move(rep));

    Objective f = [&](const Eigen::VectorXd& params) {
        return cycle_residual(cycle_from_logs(params), b);
    };
    InitSampler init = [](Prng& rng) {
        Eigen::VectorXd x(16);
        for (int k = 0; k < 16; ++k) x(k) = rng.gauss();
        return x;
    };
    MultistartResult ms = minimize_multistart(f, 16, cfg, init);

    CycleFactors best = cycle_from_logs(ms.best_params);
    double residual = cycle_residual(best, b);
    auto consider = [&](const CycleFactors& cand) {
        double r;
        try {
            r = cycle_residual(cand, b);
        } catch (const AllZeroGlobalFunction&) {
            return;
        }
        if (r < residual) {
            residual = r;
            best = cand;
        }
    };
    consider(snapped_cycle(best));
    {
        // descend once from the chain-shaped start as well
        SearchConfig refit = cfg.with_restarts(1);
        Eigen::VectorXd start = logs_of_cycle(chain_shaped_init(b));
        InitSampler fixed = [&start](Prng&) { return start; };
        MultistartResult again = minimize_multistart(f, 16, refit, fixed);
        CycleFactors cand = cycle_from_logs(again.best_params);
        consider(cand);
        consider(snapped_cycle(cand));
    }

    MembershipVerdict v;
    v.residual = residual;
    if (residual < cfg.accept_residual) {
        v.status = MembershipStatus::IN;
        v.witness_cycle = best;
    } else {
        v.status = MembershipStatus::UNKNOWN;
    }
    return v;
}

namespace {

// Mixed-chart parameters whose rho is the best model's top eigenvector made
// pure: restarting the descent from the rank-1 boundary escapes the flat
// directions of nearly-pure optima.
Eigen::VectorXd purified_params(const QnfgModel& m) {
    Eigen::SelfAdjointEigenSolver<Mat4c> es(m.rho.rho);
    Eigen::Vector4cd psi = es.eigenvectors().col(3);
    psi *= std::exp(Complex(0, -std::arg(psi(0) == Complex(0) ? Complex(1) : psi(0))));
    Eigen::VectorXd params = Eigen::VectorXd::Zero(24);
    params(0) = psi(0).real();
    params(4) = psi(1).real();
    params(5) = psi(1).imag();
    params(6) = psi(2).real();
    params(7) = psi(2).imag();
    params(10) = psi(3).real();
    params(11) = psi(3).imag();
    params.segment<4>(16) = unitary_chart_params(m.u1.u);
    params.segment<4>(20) = unitary_chart_params(m.u2.u);
    return params;
}

}  // namespace

MembershipVerdict member_qnfg(const BeliefCollection& b, const SearchConfig& cfg) {
    LmReport rep = validate_lm(b, 1e-9);
    if (!rep.member) return out_of_lm(std::move(rep));

    Objective f = [&](const Eigen::VectorXd& params) {
        return beliefs_residual(quantum_beliefs(model_from_mixed_params(params)), b);
    };
    InitSampler init = [](Prng& rng) {
        Eigen::VectorXd x(24);
        for (int k = 0; k < 24; ++k) x(k) = rng.gauss();
        return x;
    };
    MultistartResult ms = minimize_multistart(f, 24, cfg, init);
    Eigen::VectorXd best_params = ms.best_params;
    double residual = f(best_params);
    if (residual >= cfg.accept_residual) {
        Eigen::VectorXd seed_params = purified_params(model_from_mixed_params(best_params));
        SearchConfig refit = cfg.with_restarts(1);
        InitSampler fixed = [&seed_params](Prng&) { return seed_params; };
        MultistartResult again = minimize_multistart(f, 24, refit, fixed);
        if (again.best_value < residual) {
            best_params = again.best_params;
            residual = again.best_value;
        }
    }
    QnfgModel best = model_from_mixed_params(best_params);
    residual = beliefs_residual(quantum_beliefs(best), b);
    MembershipVerdict v;
    v.residual = residual;
    if (residual < cfg.accept_residual) {
        v.status = MembershipStatus::IN;
        v.witness_model = best;
    } else {
        v.status = MembershipStatus::UNKNOWN;
    }
    return v;
}

std::vector<double> qnfg_residual_scan(const BeliefCollection& b, const SearchConfig& cfg, int seeds) {
    std::vector<double> out;
    for (int s = 0; s < seeds; ++s) {
        MembershipVerdict v = member_qnfg(b, cfg.with_seed(cfg.seed + static_cast<uint64_t>(s)));
        out.push_back(v.residual.value_or(0.0));
    }
    return out;
}

std::vector<double> fcyc_residual_scan(const BeliefCollection& b, const SearchConfig& cfg, int seeds) {
    std::vector<double> out;
    for (int s = 0; s < seeds; ++s) {
        MembershipVerdict v = member_fcyc(b, cfg.with_seed(cfg.seed + static_cast<uint64_t>(s)));
        out.push_back(v.residual.value_or(0.0));
    }
    return out;
}

namespace {

ojson pmf_json(const JointPmf& p) {
    ojson arr = ojson::array();
    for (int i = 0; i < 16; ++i) arr.push_back(p.table(i));
    return ojson{{"kind", "pmf"}, {"table", arr}};
}

ojson mat_json(const Mat2& m) { return ojson{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}; }

}  // namespace

ojson MembershipVerdict::to_json() const {
    ojson j;
    j["status"] = status_name(status);
    if (witness_pmf) j["witness"] = pmf_json(*witness_pmf);
    if (witness_chain)
        j["witness"] = ojson{{"kind", "chain"},
                             {"m12", mat_json(witness_chain->m12)},
                             {"m4given1", mat_json(witness_chain->m4given1)},
                             {"m3given2", mat_json(witness_chain->m3given2)}};
    if (witness_cycle)
        j["witness"] = ojson{{"kind", "cycle"},
                             {"f12", mat_json(witness_cycle->f12)},
                             {"f14", mat_json(witness_cycle->f14)},
                             {"f32", mat_json(witness_cycle->f32)},
                             {"f34", mat_json(witness_cycle->f34)}};
    if (witness_model) j["witness"] = ojson{{"kind", "model"}, {"model", ojson::parse(model_to_json(*witness_model, -1))}};
    if (!lm_violations.empty()) {
        ojson arr = ojson::array();
        for (const auto& v : lm_violations) arr.push_back({{"constraint", v.constraint}, {"magnitude", v.magnitude}});
        j["certificate"] = ojson{{"kind", "lm_violations"}, {"violations", arr}};
    }
    if (farkas) {
        ojson eq = ojson::array(), le = ojson::array();
        for (const Rational& r : farkas->eq_dual) eq.push_back(r.to_string());
        for (const Rational& r : farkas->le_dual) le.push_back(r.to_string());
        j["certificate"] = ojson{{"kind", "farkas"}, {"eq_dual", eq}, {"le_dual", le}};
    }
    if (!mismatch.empty()) {
        ojson arr = ojson::array();
        for (const std::string& s : mismatch) arr.push_back(s);
        j["certificate"] = ojson{{"kind", "chain_mismatch"}, {"entries", arr}};
    }
    if (residual) j["residual"] = *residual;
    return j;
}

}  // namespace chsh
