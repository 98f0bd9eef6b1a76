#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chsh_atlas/factor_graphs.hpp"
#include "chsh_atlas/rng.hpp"

using namespace chsh;

namespace {

Mat2 ones2() { return Mat2::Ones(); }

Mat2 diag2() {
    Mat2 m;
    m << 2, 0, 0, 2;
    return m;
}

JointPmf random_pmf(Prng& rng) {
    Eigen::Array<double, 16, 1> t;
    for (int i = 0; i < 16; ++i) t(i) = rng.uniform();
    t /= t.sum();
    return JointPmf{t};
}

}  // namespace

TEST_CASE("cycle with constant tables") {
    Snfg g = build_cycle_graph(ones2(), ones2(), ones2(), ones2());
    CHECK(partition_function(g) == doctest::Approx(16.0));
    Configuration c = Configuration::from_index(5);
    CHECK(global_value(g, c) == doctest::Approx(1.0));
    JointPmf p = induced_pmf(g);
    for (int i = 0; i < 16; ++i) CHECK(p.table(i) == doctest::Approx(1.0 / 16));
    CHECK(g.edge_degrees() == std::array<int, 4>{2, 2, 2, 2});
}

TEST_CASE("diagonal-2 cycle keeps only constant configurations") {
    Snfg g = build_cycle_graph(diag2(), diag2(), diag2(), diag2());
    // enumeration oracle: only x1=x2=x3=x4 survive, each with weight 2^4
    double z = 0;
    for (int idx = 0; idx < 16; ++idx) z += global_value(g, Configuration::from_index(idx));
    CHECK(z == doctest::Approx(32.0));
    CHECK(partition_function(g) == doctest::Approx(32.0));
    CHECK(global_value(g, Configuration{{0, 0, 0, 0}}) == doctest::Approx(16.0));
    CHECK(global_value(g, Configuration{{0, 1, 0, 0}}) == doctest::Approx(0.0));
    JointPmf p = induced_pmf(g);
    CHECK(p(0, 0, 0, 0) == doctest::Approx(0.5));
    CHECK(p(1, 1, 1, 1) == doctest::Approx(0.5));
    CHECK(p(0, 1, 0, 1) == doctest::Approx(0.0));
}

TEST_CASE("all-zero factor is rejected") {
    CHECK_THROWS_AS(build_cycle_graph(Mat2::Zero(), ones2(), ones2(), ones2()), AllZeroGlobalFunction);
    Mat2 neg;
    neg << 1, -0.25, 1, 1;
    CHECK_THROWS_AS(build_cycle_graph(neg, ones2(), ones2(), ones2()), std::invalid_argument);
}

TEST_CASE("markov chain construction and induced pmf") {
    Mat2 m12;
    m12 << 0.4, 0.1, 0.1, 0.4;
    Mat2 cond;
    cond << 0.8, 0.2, 0.2, 0.8;
    Snfg g = build_markov_chain(m12, cond, cond);
    CHECK(g.edge_degrees() == std::array<int, 4>{2, 2, 1, 1});
    CHECK(partition_function(g) == doctest::Approx(1.0).epsilon(1e-14));
    JointPmf p = induced_pmf(g);
    for (int idx = 0; idx < 16; ++idx) {
        Configuration c = Configuration::from_index(idx);
        double expect = m12(c.x[0], c.x[1]) * cond(c.x[0], c.x[3]) * cond(c.x[1], c.x[2]);
        CHECK(p.table(idx) == doctest::Approx(expect).epsilon(1e-13));
    }
    BeliefCollection b = beliefs_of(p);
    CHECK((b.pair(KPair::p12) - m12).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(pcc(b, KPair::p12) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("deterministic-copy chain") {
    Mat2 m12 = Mat2::Constant(0.25);
    Mat2 id;
    id << 1, 0, 0, 1;
    JointPmf p = induced_pmf(build_markov_chain(m12, id, id));
    for (int idx = 0; idx < 16; ++idx) {
        Configuration c = Configuration::from_index(idx);
        double expect = (c.x[3] == c.x[0] && c.x[2] == c.x[1]) ? 0.25 : 0.0;
        CHECK(p.table(idx) == doctest::Approx(expect));
    }
}

TEST_CASE("markov chain input validation") {
    Mat2 m12 = Mat2::Constant(0.25);
    Mat2 bad;
    bad << 0.5, 0.6, 0.5, 0.5;  // first row sums to 1.1
    Mat2 ok;
    ok << 0.5, 0.5, 0.5, 0.5;
    CHECK_THROWS_AS(build_markov_chain(m12, bad, ok), NotStochastic);
    CHECK_THROWS_AS(build_markov_chain(Mat2::Constant(0.3), ok, ok), NotNormalized);
}

TEST_CASE("single node graph") {
    Eigen::Array<double, 16, 1> f = Eigen::Array<double, 16, 1>::Ones();
    JointPmf p = induced_pmf(build_single_node(f));
    CHECK((p.table == 1.0 / 16).all());

    Eigen::Array<double, 16, 1> two = Eigen::Array<double, 16, 1>::Zero();
    two(JointPmf::index(0, 0, 0, 0)) = 1;
    two(JointPmf::index(1, 1, 1, 1)) = 1;
    JointPmf q = induced_pmf(build_single_node(two));
    CHECK(q(0, 0, 0, 0) == doctest::Approx(0.5));
    CHECK(q(1, 1, 1, 1) == doctest::Approx(0.5));

    Prng rng(3);
    JointPmf r = random_pmf(rng);
    JointPmf back = induced_pmf(build_single_node(r.table));
    CHECK((back.table - r.table).abs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(build_single_node(Eigen::Array<double, 16, 1>::Zero()), AllZeroGlobalFunction);
}

TEST_CASE("marginals") {
    Eigen::Array<double, 16, 1> f = Eigen::Array<double, 16, 1>::Ones();
    JointPmf uni = induced_pmf(build_single_node(f));
    Eigen::ArrayXd m12 = marginal(uni, {1, 2});
    CHECK(m12.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(m12(i) == doctest::Approx(0.25));

    Eigen::Array<double, 16, 1> two = Eigen::Array<double, 16, 1>::Zero();
    two(JointPmf::index(0, 0, 0, 0)) = 0.5;
    two(JointPmf::index(1, 1, 1, 1)) = 0.5;
    JointPmf p = JointPmf::from_table(two);
    Eigen::ArrayXd m14 = marginal(p, {1, 4});
    CHECK(m14(0) == doctest::Approx(0.5));  // (x1,x4) = (0,0)
    CHECK(m14(1) == doctest::Approx(0.0));
    CHECK(m14(2) == doctest::Approx(0.0));
    CHECK(m14(3) == doctest::Approx(0.5));

    Eigen::ArrayXd all = marginal(p, {1, 2, 3, 4});
    CHECK((all - p.table).abs().maxCoeff() == 0.0);
}

TEST_CASE("marginal consistency over the subset lattice") {
    Prng rng(17);
    JointPmf p = random_pmf(rng);
    // marginal(marginal(p, I1 u I2), I1-position) == marginal(p, I1) checked
    // by summing the bigger marginal over the extra axes, for all nested pairs
    for (int outer = 1; outer < 16; ++outer) {
        std::vector<int> big;
        for (int v = 1; v <= 4; ++v)
            if (outer & (1 << (v - 1))) big.push_back(v);
        Eigen::ArrayXd mb = marginal(p, big);
        for (int inner = 1; inner <= outer; ++inner) {
            if ((inner & outer) != inner) continue;
            std::vector<int> small;
            for (int v = 1; v <= 4; ++v)
                if (inner & (1 << (v - 1))) small.push_back(v);
            Eigen::ArrayXd ms = marginal(p, small);
            // sum mb over axes not in small
            Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(1 << small.size());
            for (int idx = 0; idx < mb.size(); ++idx) {
                int sidx = 0;
                for (size_t k = 0; k < small.size(); ++k) {
                    size_t pos_in_big = 0;
                    while (big[pos_in_big] != small[k]) ++pos_in_big;
                    int bit = (idx >> (big.size() - 1 - pos_in_big)) & 1;
                    sidx = (sidx << 1) | bit;
                }
                acc(sidx) += mb(idx);
            }
            CHECK((acc - ms).abs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("beliefs_of basics and LM membership over random pmfs") {
    Eigen::Array<double, 16, 1> f = Eigen::Array<double, 16, 1>::Ones();
    BeliefCollection uni = beliefs_of(induced_pmf(build_single_node(f)));
    for (KPair p : kAllPairs) CHECK((uni.pair(p) - Mat2::Constant(0.25)).cwiseAbs().maxCoeff() < 1e-15);

    Eigen::Array<double, 16, 1> two = Eigen::Array<double, 16, 1>::Zero();
    two(JointPmf::index(0, 0, 0, 0)) = 0.5;
    two(JointPmf::index(1, 1, 1, 1)) = 0.5;
    BeliefCollection tp = beliefs_of(JointPmf::from_table(two));
    Mat2 eq;
    eq << 0.5, 0, 0, 0.5;
    for (KPair p : kAllPairs) CHECK((tp.pair(p) - eq).cwiseAbs().maxCoeff() < 1e-15);

    BeliefCollection dc = beliefs_of(induced_pmf(build_cycle_graph(diag2(), diag2(), diag2(), diag2())));
    for (KPair p : kAllPairs) CHECK((dc.pair(p) - eq).cwiseAbs().maxCoeff() < 1e-15);

    Prng rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        JointPmf p = random_pmf(rng);
        CHECK(p.table.sum() == doctest::Approx(1.0).epsilon(1e-12));
        LmReport rep = validate_lm(beliefs_of(p), 1e-9);
        CHECK(rep.member);
    }
}

TEST_CASE("markov chain embeds in the cycle") {
    Prng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        Mat2 m12;
        double s = 0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                m12(r, c) = rng.uniform() + 0.05;
                s += m12(r, c);
            }
        m12 /= s;
        auto rand_cond = [&] {
            Mat2 m;
            for (int r = 0; r < 2; ++r) {
                double a = rng.uniform() * 0.9 + 0.05;
                m(r, 0) = a;
                m(r, 1) = 1 - a;
            }
            return m;
        };
        Mat2 c41 = rand_cond(), c32 = rand_cond();
        BeliefCollection chain = beliefs_of(induced_pmf(build_markov_chain(m12, c41, c32)));
        // same distribution as a cycle with f34 = 1; f32 takes (x3,x2) axes
        BeliefCollection cyc =
            beliefs_of(induced_pmf(build_cycle_graph(m12, c41, c32.transpose(), Mat2::Ones())));
        for (KPair p : kAllPairs)
            CHECK((chain.pair(p) - cyc.pair(p)).cwiseAbs().maxCoeff() < 1e-12);
    }
}
