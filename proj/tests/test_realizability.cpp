#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chsh_atlas/extremal.hpp"
#include "chsh_atlas/realizability.hpp"

using namespace chsh;

namespace {

SearchConfig fit_cfg(uint64_t seed = 0) {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.restarts = 24;
    cfg.iterations = 1500;
    cfg.threads = 2;
    return cfg;
}

BeliefCollection all_point_six() {
    Mat2 m;
    m << 0.4, 0.1, 0.1, 0.4;
    return BeliefCollection::from_pairwise({m, m, m, m});
}

}  // namespace

TEST_CASE("member_snfg round trip over random joint pmfs") {
    Prng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        JointPmf p = random_joint_pmf(rng);
        BeliefCollection b = beliefs_of(p);
        MembershipVerdict v = member_snfg(b);
        REQUIRE(v.status == MembershipStatus::IN);
        REQUIRE(v.witness_pmf.has_value());
        BeliefCollection wb = beliefs_of(*v.witness_pmf);
        for (KPair pp : kAllPairs)
            CHECK((wb.pair(pp) - b.pair(pp)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("member_snfg rejects the PR box with a rational certificate") {
    BeliefCollection pr = BeliefCollection::pr_box();
    MembershipVerdict v = member_snfg(pr);
    REQUIRE(v.status == MembershipStatus::OUT);
    REQUIRE(v.farkas.has_value());
    CHECK(check_farkas(snfg_marginal_problem(pr), *v.farkas));
    // serialized certificate entries are rational strings
    ojson j = v.to_json();
    CHECK(j.at("certificate").at("kind") == "farkas");
    CHECK(j.at("status") == "OUT");
}

TEST_CASE("member_snfg is consistent with the linear and correlation bounds") {
    // any b violating a linear CHSH bound or |corr_chsh| > 5/2 must be OUT
    for (double lambda : {0.55, 0.7, 0.85, 1.0}) {
        BeliefCollection b = convex_combination(
            {BeliefCollection::pr_box(), BeliefCollection::uniform()}, {lambda, 1 - lambda});
        CHECK(linear_chsh(b) == doctest::Approx(4 * lambda));
        if (4 * lambda > 2 + 1e-9) CHECK(member_snfg(b).status == MembershipStatus::OUT);
    }
    // a rotated maximally entangled model beats 5/2
    Prng rng(103);
    int beyond = 0;
    for (int trial = 0; trial < 50; ++trial) {
        OptResult r = maximize_quantum_chsh(fit_cfg(trial).with_restarts(2));
        BeliefCollection b = quantum_beliefs(*r.model);
        if (std::abs(corr_chsh(b)) > 2.5 + 1e-6) {
            ++beyond;
            CHECK(member_snfg(b).status == MembershipStatus::OUT);
        }
        if (beyond >= 3) break;
    }
    CHECK(beyond >= 3);
    (void)rng;
}

TEST_CASE("member_snfg reports LM violations as OUT") {
    BeliefCollection bad = BeliefCollection::uniform();
    bad.pair(KPair::p12)(0, 0) = 0.3;  // breaks normalization and consistency
    MembershipVerdict v = member_snfg(bad);
    CHECK(v.status == MembershipStatus::OUT);
    CHECK(!v.lm_violations.empty());
}

TEST_CASE("member_markov round trips and the forced product correlation") {
    Prng rng(107);
    for (int trial = 0; trial < 200; ++trial) {
        ChainFactors cf = random_chain(rng);
        BeliefCollection b = beliefs_of(induced_pmf(cf.build()));
        MembershipVerdict v = member_markov(b);
        REQUIRE(v.status == MembershipStatus::IN);
        REQUIRE(v.witness_chain.has_value());
        BeliefCollection wb = beliefs_of(induced_pmf(v.witness_chain->build()));
        for (KPair p : kAllPairs)
            CHECK((wb.pair(p) - b.pair(p)).cwiseAbs().maxCoeff() < 1e-10);
        // the reconstructed chain obeys the product identity
        double c12 = pcc(wb, KPair::p12), c14 = pcc(wb, KPair::p14);
        double c32 = pcc(wb, KPair::p32), c34 = pcc(wb, KPair::p34);
        CHECK(std::abs(c34 - c32 * c12 * c14) < 1e-12);
    }

    CHECK(member_markov(BeliefCollection::uniform()).status == MembershipStatus::IN);

    MembershipVerdict out = member_markov(all_point_six());
    REQUIRE(out.status == MembershipStatus::OUT);
    CHECK(!out.mismatch.empty());
    // forced correlation on pair 34 is 0.6^3 = 0.216, mismatch 0.6 - 0.216 on the energy scale
    BeliefCollection composed = beliefs_of(induced_pmf(ChainFactors{
        all_point_six().pair(KPair::p12),
        (Mat2() << 0.8, 0.2, 0.2, 0.8).finished(),
        (Mat2() << 0.8, 0.2, 0.2, 0.8).finished()}.build()));
    CHECK(pcc(composed, KPair::p34) == doctest::Approx(0.216).epsilon(1e-12));
}

TEST_CASE("member_fcyc round trips cycles and reports residuals otherwise") {
    CHECK(member_fcyc(BeliefCollection::uniform(), fit_cfg()).status == MembershipStatus::IN);

    Prng rng(109);
    Mat2 f12(Mat2::Ones()), f14, f32, f34;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            f12(r, c) = rng.uniform(0.2, 1.0);
            f14(r, c) = rng.uniform(0.2, 1.0);
            f32(r, c) = rng.uniform(0.2, 1.0);
            f34(r, c) = rng.uniform(0.2, 1.0);
        }
    BeliefCollection b = beliefs_of(induced_pmf(build_cycle_graph(f12, f14, f32, f34)));
    MembershipVerdict v = member_fcyc(b, fit_cfg());
    REQUIRE(v.status == MembershipStatus::IN);
    REQUIRE(v.witness_cycle.has_value());
    CHECK(beliefs_residual(beliefs_of(induced_pmf(v.witness_cycle->build())), b) < 1e-9);

    MembershipVerdict pr = member_fcyc(BeliefCollection::pr_box(), fit_cfg());
    CHECK(pr.status == MembershipStatus::UNKNOWN);  // never OUT
    CHECK(pr.residual.value_or(0) > 1e-3);
}

TEST_CASE("member_qnfg identifies quantum beliefs and stalls on the PR box") {
    MembershipVerdict uni = member_qnfg(BeliefCollection::uniform(), fit_cfg());
    REQUIRE(uni.status == MembershipStatus::IN);
    // maximally mixed witness reproduces uniformity
    CHECK(beliefs_residual(quantum_beliefs(*uni.witness_model), BeliefCollection::uniform()) < 1e-9);

    MembershipVerdict w06 = member_qnfg(all_point_six(), fit_cfg());
    CHECK(w06.status == MembershipStatus::IN);

    MembershipVerdict pr = member_qnfg(BeliefCollection::pr_box(), fit_cfg());
    CHECK(pr.status == MembershipStatus::UNKNOWN);
    CHECK(pr.residual.value_or(0) > 1e-3);
}

TEST_CASE("bell-game beliefs: quantum yes, classical no") {
    OptResult bg = maximize_quantum_chsh(fit_cfg(3).with_restarts(12));
    BeliefCollection b = quantum_beliefs(*bg.model);
    CHECK(member_snfg(b).status == MembershipStatus::OUT);
    MembershipVerdict q = member_qnfg(b, fit_cfg(1));
    CHECK(q.status == MembershipStatus::IN);
}

TEST_CASE("inclusion sanity: chains are cycles are joint pmfs") {
    Prng rng(113);
    for (int trial = 0; trial < 10; ++trial) {
        ChainFactors cf = random_chain(rng);
        BeliefCollection b = beliefs_of(induced_pmf(cf.build()));
        CHECK(member_markov(b).status == MembershipStatus::IN);
        CHECK(member_fcyc(b, fit_cfg(trial)).status == MembershipStatus::IN);
        CHECK(member_snfg(b).status == MembershipStatus::IN);
    }
}

TEST_CASE("verdict json carries status, witness and residual fields") {
    MembershipVerdict v = member_markov(BeliefCollection::uniform());
    ojson j = v.to_json();
    CHECK(j.at("status") == "IN");
    CHECK(j.at("witness").at("kind") == "chain");

    MembershipVerdict u = member_fcyc(BeliefCollection::pr_box(), fit_cfg());
    ojson ju = u.to_json();
    CHECK(ju.at("status") == "UNKNOWN");
    CHECK(ju.at("residual").get<double>() > 0);
}
