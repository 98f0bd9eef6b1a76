#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chsh_atlas/lm_vertices.hpp"
#include "chsh_atlas/lp.hpp"
#include "chsh_atlas/rng.hpp"

using namespace chsh;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(BigInt(n), BigInt(d)); }

// 16-simplex with exact pairwise-marginal equality constraints
LpProblem marginal_system(const std::array<std::array<Rational, 4>, 4>& betas) {
    LpProblem p;
    p.num_vars = 16;
    std::vector<Rational> ones(16, rat(1));
    p.add_eq(ones, rat(1));
    // pair order 12, 14, 32, 34; entry (a,b) of pair (i,j): rows where
    // x_i = a and x_j = b
    const std::array<std::pair<int, int>, 4> vars{{{1, 2}, {1, 4}, {3, 2}, {3, 4}}};
    for (int k = 0; k < 4; ++k) {
        auto [vi, vj] = vars[static_cast<size_t>(k)];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                std::vector<Rational> row(16, rat(0));
                for (int idx = 0; idx < 16; ++idx) {
                    int xi = (idx >> (4 - vi)) & 1, xj = (idx >> (4 - vj)) & 1;
                    if (xi == a && xj == b) row[static_cast<size_t>(idx)] = rat(1);
                }
                p.add_eq(row, betas[static_cast<size_t>(k)][static_cast<size_t>(2 * a + b)]);
            }
    }
    return p;
}

}  // namespace

TEST_CASE("one variable, feasible") {
    LpProblem p;
    p.num_vars = 1;
    p.add_eq({rat(1)}, rat(1));
    LpResult r = solve_lp_feasibility(p);
    REQUIRE(r.feasible);
    CHECK(r.point[0] == rat(1));
    CHECK(check_feasible_point(p, r.point));
}

TEST_CASE("one variable, infeasible") {
    LpProblem p;
    p.num_vars = 1;
    p.add_eq({rat(1)}, rat(-1));
    LpResult r = solve_lp_feasibility(p);
    REQUIRE(!r.feasible);
    CHECK(check_farkas(p, r.certificate));
}

TEST_CASE("inequality systems") {
    {
        LpProblem p;  // x1 + x2 <= 1, x1 >= 2 -> infeasible
        p.num_vars = 2;
        p.add_le({rat(1), rat(1)}, rat(1));
        p.add_le({rat(-1), rat(0)}, rat(-2));
        LpResult r = solve_lp_feasibility(p);
        REQUIRE(!r.feasible);
        CHECK(check_farkas(p, r.certificate));
    }
    {
        LpProblem p;  // x1 + x2 <= 1, x1 >= 1/4, x2 >= 1/4 -> feasible
        p.num_vars = 2;
        p.add_le({rat(1), rat(1)}, rat(1));
        p.add_le({rat(-1), rat(0)}, rat(-1, 4));
        p.add_le({rat(0), rat(-1)}, rat(-1, 4));
        LpResult r = solve_lp_feasibility(p);
        REQUIRE(r.feasible);
        CHECK(check_feasible_point(p, r.point));
    }
}

TEST_CASE("random marginal systems from exact joint pmfs are feasible") {
    Prng rng(97);
    for (int trial = 0; trial < 25; ++trial) {
        // random rational pmf with denominator 1000
        std::array<long long, 16> num{};
        long long total = 0;
        for (auto& v : num) {
            v = 1 + static_cast<long long>(rng.below(100));
            total += v;
        }
        std::array<std::array<Rational, 4>, 4> betas;
        const std::array<std::pair<int, int>, 4> vars{{{1, 2}, {1, 4}, {3, 2}, {3, 4}}};
        for (int k = 0; k < 4; ++k) {
            auto [vi, vj] = vars[static_cast<size_t>(k)];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    long long acc = 0;
                    for (int idx = 0; idx < 16; ++idx) {
                        int xi = (idx >> (4 - vi)) & 1, xj = (idx >> (4 - vj)) & 1;
                        if (xi == a && xj == b) acc += num[static_cast<size_t>(idx)];
                    }
                    betas[static_cast<size_t>(k)][static_cast<size_t>(2 * a + b)] = rat(acc, total);
                }
        }
        LpResult r = solve_lp_feasibility(marginal_system(betas));
        REQUIRE(r.feasible);
    }
}

TEST_CASE("the PR box marginal system is infeasible with a checkable certificate") {
    std::array<std::array<Rational, 4>, 4> betas;
    // three perfectly correlated pairs, one anticorrelated
    for (int k = 0; k < 3; ++k)
        betas[static_cast<size_t>(k)] = {rat(1, 2), rat(0), rat(0), rat(1, 2)};
    betas[3] = {rat(0), rat(1, 2), rat(1, 2), rat(0)};
    LpResult r = solve_lp_feasibility(marginal_system(betas));
    REQUIRE(!r.feasible);
    CHECK(check_farkas(marginal_system(betas), r.certificate));
    // certificate strings are plain rationals
    for (const Rational& y : r.certificate.eq_dual) CHECK(!y.to_string().empty());
}

TEST_CASE("lm vertex enumeration") {
    auto verts = lm_vertices_exact();
    CHECK(verts.size() == 24);

    int integral = 0, half = 0;
    Rational zero(0), one(1), halfv(BigInt(1), BigInt(2));
    for (const auto& v : verts) {
        CHECK(lm_member_exact(v));
        bool is_integral = true;
        for (const Rational& x : v) {
            bool ok = (x == zero) || (x == one) || (x == halfv);
            CHECK(ok);
            if (x == halfv) is_integral = false;
        }
        if (is_integral)
            ++integral;
        else
            ++half;
    }
    CHECK(integral == 16);
    CHECK(half == 8);

    // all 16 deterministic configurations appear
    auto beliefs = lm_vertices();
    int found_det = 0;
    for (int cfg = 0; cfg < 16; ++cfg) {
        int x[5] = {0, (cfg >> 3) & 1, (cfg >> 2) & 1, (cfg >> 1) & 1, cfg & 1};
        for (const auto& b : beliefs) {
            bool match = true;
            for (KPair p : kAllPairs) {
                auto [vi, vj] = pair_vars(p);
                Mat2 expect = Mat2::Zero();
                expect(x[vi], x[vj]) = 1.0;
                if ((b.pair(p) - expect).cwiseAbs().maxCoeff() > 0) match = false;
            }
            if (match) {
                ++found_det;
                break;
            }
        }
    }
    CHECK(found_det == 16);

    // the PR box is a vertex
    BeliefCollection pr = BeliefCollection::pr_box();
    bool found_pr = false;
    for (const auto& b : beliefs) {
        bool match = true;
        for (KPair p : kAllPairs)
            if ((b.pair(p) - pr.pair(p)).cwiseAbs().maxCoeff() > 0) match = false;
        if (match) found_pr = true;
    }
    CHECK(found_pr);

    // vertices validate in floating point too, and mixing them stays inside
    for (const auto& b : beliefs) CHECK(validate_lm(b, 1e-15).member);
    std::vector<double> w(beliefs.size(), 1.0 / static_cast<double>(beliefs.size()));
    CHECK(validate_lm(convex_combination(beliefs, w), 1e-12).member);

    // equal mix of the 16 integral vertices is the uniform collection
    std::vector<BeliefCollection> ints;
    for (const auto& v : verts) {
        bool is_integral = true;
        for (const Rational& x : v)
            if (x == halfv) is_integral = false;
        if (is_integral) {
            std::array<Mat2, 4> pairs;
            for (int k = 0; k < 4; ++k) {
                Mat2 m;
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c)
                        m(r, c) = v[static_cast<size_t>(4 * k + 2 * r + c)].to_double();
                pairs[static_cast<size_t>(k)] = m;
            }
            ints.push_back(BeliefCollection::from_pairwise(pairs));
        }
    }
    REQUIRE(ints.size() == 16);
    BeliefCollection mix = convex_combination(ints, std::vector<double>(16, 1.0 / 16));
    for (KPair p : kAllPairs)
        CHECK((mix.pair(p) - Mat2::Constant(0.25)).cwiseAbs().maxCoeff() < 1e-15);
}
