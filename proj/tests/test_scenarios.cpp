#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chsh_atlas/scenarios.hpp"

using namespace chsh;

// Witness files are stored in the repository; tests verify, never regenerate.
// CHSH_ATLAS_WITNESS_DIR points at them (set by the test harness).

TEST_CASE("bell game: maximal violation, quantum yes, classical no") {
    BellGame bg = bell_game_model();
    // recompute everything from the stored model, no trust in stored numbers
    BeliefCollection b = quantum_beliefs(bg.model);
    for (KPair p : kAllPairs)
        CHECK((b.pair(p) - bg.beliefs.pair(p)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(corr_chsh(b) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));

    MembershipVerdict v = member_snfg(b);
    REQUIRE(v.status == MembershipStatus::OUT);
    REQUIRE(v.farkas.has_value());
    CHECK(check_farkas(snfg_marginal_problem(b), *v.farkas));

    Sqmf q = build_sqmf(bg.model);
    for (KPair p : kAllPairs) {
        auto [vi, vj] = pair_vars(p);
        CHECK(classicable(q, {vi, vj}, 1e-10));
    }
}

TEST_CASE("hardy pattern: zeros hold, probability near the derived target") {
    HardyReport rep = hardy_model();
    BeliefCollection b = quantum_beliefs(rep.model);
    CHECK(b.pair(KPair::p14)(0, 0) <= 1e-9);
    CHECK(b.pair(KPair::p32)(0, 0) <= 1e-9);
    CHECK(b.pair(KPair::p34)(1, 1) <= 1e-9);
    CHECK(b.pair(KPair::p12)(0, 0) >= 0.05);
    // (5 sqrt 5 - 11) / 2
    CHECK(b.pair(KPair::p12)(0, 0) == doctest::Approx(0.0901699437494742).epsilon(1e-4));
    CHECK(rep.p12_00 == doctest::Approx(b.pair(KPair::p12)(0, 0)).epsilon(1e-9));

    MembershipVerdict v = member_snfg(b);
    REQUIRE(v.status == MembershipStatus::OUT);
    CHECK(check_farkas(snfg_marginal_problem(b), *v.farkas));
}

TEST_CASE("hardy pattern is classically impossible outright") {
    LpProblem lp = hardy_classical_lp(0.01);
    LpResult r = solve_lp_feasibility(lp);
    REQUIRE(!r.feasible);
    CHECK(check_farkas(lp, r.certificate));
    // with the positivity requirement dropped the pattern is satisfiable
    LpProblem relaxed = hardy_classical_lp(0.0);
    CHECK(solve_lp_feasibility(relaxed).feasible);
}

TEST_CASE("venn witnesses: eight regions with consistent, re-verifiable claims") {
    std::vector<RegionWitness> regions = venn_witnesses();
    REQUIRE(regions.size() == 8);

    std::vector<std::string> expected = {
        "mkov&qnfg",        "mkov-qnfg",       "(fcyc-mkov)&qnfg", "fcyc-(mkov|qnfg)",
        "(snfg-fcyc)&qnfg", "snfg-(fcyc|qnfg)", "qnfg-snfg",        "lm-(snfg|qnfg)"};
    for (size_t k = 0; k < regions.size(); ++k) CHECK(regions[k].id == expected[k]);

    for (const RegionWitness& r : regions) {
        CAPTURE(r.id);
        // inclusion chain on the claims
        auto stat = [&](const char* s) { return r.claims.at(s).status; };
        if (stat("markov") == MembershipStatus::IN) {
            CHECK(stat("fcyc") == MembershipStatus::IN);
            CHECK(stat("snfg") == MembershipStatus::IN);
        }
        if (stat("fcyc") == MembershipStatus::IN) CHECK(stat("snfg") == MembershipStatus::IN);
        CHECK(stat("lm") == MembershipStatus::IN);

        // exact testers agree with the claims
        CHECK(validate_lm(r.beliefs, 1e-9).member == (stat("lm") == MembershipStatus::IN));
        CHECK(member_snfg(r.beliefs).status == stat("snfg"));
        CHECK(member_markov(r.beliefs).status == stat("markov"));

        // stored IN witnesses reproduce the beliefs from scratch
        if (stat("fcyc") == MembershipStatus::IN) {
            REQUIRE(r.cycle.has_value());
            CHECK(beliefs_residual(beliefs_of(induced_pmf(r.cycle->build())), r.beliefs) < 1e-9);
        }
        if (stat("qnfg") == MembershipStatus::IN) {
            REQUIRE(r.model.has_value());
            CHECK(beliefs_residual(quantum_beliefs(*r.model), r.beliefs) < 1e-10);
        }
        if (stat("markov") == MembershipStatus::IN) {
            REQUIRE(r.chain.has_value());
            CHECK(beliefs_residual(beliefs_of(induced_pmf(r.chain->build())), r.beliefs) < 1e-9);
        }
        if (stat("snfg") == MembershipStatus::IN && r.pmf) {
            CHECK(beliefs_residual(beliefs_of(*r.pmf), r.beliefs) < 1e-9);
        }
    }
}

TEST_CASE("venn certified quantum exclusion comes from the tsirelson bound") {
    std::vector<RegionWitness> regions = venn_witnesses();
    const RegionWitness& pr = regions.back();
    REQUIRE(pr.id == "lm-(snfg|qnfg)");
    CHECK(pr.claims.at("qnfg").status == MembershipStatus::OUT);
    CHECK(pr.claims.at("qnfg").evidence == Evidence::certified);
    CHECK(corr_chsh(pr.beliefs) == doctest::Approx(4.0));
    CHECK(std::abs(corr_chsh(pr.beliefs)) > 2.0 * std::sqrt(2.0) + 1e-9);
}

TEST_CASE("numerical exclusions stall at a light scan budget") {
    // the acceptance suite runs the full default-budget 16-seed scans; here a
    // light budget confirms the machinery end to end
    SearchConfig light;
    light.restarts = 6;
    light.iterations = 400;
    light.polish_iterations = 200;
    light.threads = 2;
    std::vector<CheckLine> lines = verify_venn(default_witness_dir(), light, 2, 1e-4);
    int failed = 0;
    for (const CheckLine& l : lines) {
        CAPTURE(l.name);
        CAPTURE(l.detail);
        CHECK(l.pass);
        if (!l.pass) ++failed;
    }
    CHECK(failed == 0);
}
