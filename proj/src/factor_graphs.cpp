#include "chsh_atlas/factor_graphs.hpp"

#include <cmath>
#include <cstdio>

#include "chsh_atlas/json_text.hpp"

namespace chsh {

Configuration Configuration::from_index(int idx) {
    Configuration c;
    c.x = {(idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
    return c;
}

JointPmf JointPmf::from_table(const Eigen::Array<double, 16, 1>& t) {
    if ((t < 0).any()) throw std::invalid_argument("JointPmf: negative entry");
    if (std::abs(t.sum() - 1.0) > 1e-12) throw NotNormalized("JointPmf: table does not sum to 1");
    return JointPmf{t};
}

double FactorNode::value(const Configuration& c) const {
    int idx = 0;
    for (int e : edges) idx = (idx << 1) | c.x[static_cast<size_t>(e - 1)];
    return table(idx);
}

std::array<int, 4> Snfg::edge_degrees() const {
    std::array<int, 4> deg{0, 0, 0, 0};
    for (const auto& n : nodes)
        for (int e : n.edges) ++deg[static_cast<size_t>(e - 1)];
    return deg;
}

namespace {

Eigen::ArrayXd flatten2(const Mat2& m) {
    Eigen::ArrayXd t(4);
    t << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
    return t;
}

void require_nonneg(const Mat2& m, const char* name) {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (!(m(r, c) >= 0)) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%s(%d,%d) = %g is negative", name, r, c, m(r, c));
                throw std::invalid_argument(buf);
            }
}

}  // namespace

Snfg build_cycle_graph(const Mat2& f12, const Mat2& f14, const Mat2& f32, const Mat2& f34) {
    require_nonneg(f12, "f12");
    require_nonneg(f14, "f14");
    require_nonneg(f32, "f32");
    require_nonneg(f34, "f34");
    Snfg g;
    g.nodes.push_back({"f12", {1, 2}, flatten2(f12)});
    g.nodes.push_back({"f14", {1, 4}, flatten2(f14)});
    g.nodes.push_back({"f32", {3, 2}, flatten2(f32)});
    g.nodes.push_back({"f34", {3, 4}, flatten2(f34)});
    if (partition_function(g) <= 0.0)
        throw AllZeroGlobalFunction("cycle graph: global function vanishes identically");
    return g;
}

Snfg build_markov_chain(const Mat2& m12, const Mat2& m4given1, const Mat2& m3given2) {
    require_nonneg(m12, "m12");
    require_nonneg(m4given1, "m4given1");
    require_nonneg(m3given2, "m3given2");
    if (std::abs(m12.sum() - 1.0) > 1e-12)
        throw NotNormalized("m12 must sum to 1");
    for (int r = 0; r < 2; ++r) {
        if (std::abs(m4given1.row(r).sum() - 1.0) > 1e-12)
            throw NotStochastic("m4given1 row " + std::to_string(r) + " does not sum to 1");
        if (std::abs(m3given2.row(r).sum() - 1.0) > 1e-12)
            throw NotStochastic("m3given2 row " + std::to_string(r) + " does not sum to 1");
    }
    Snfg g;
    // node tables in incident-edge order: M_{X4|X1} on (x4,x1) stores m(x4|x1)
    Mat2 t41 = m4given1.transpose();  // (x4, x1) axes
    Mat2 t32 = m3given2.transpose();  // (x3, x2) axes
    g.nodes.push_back({"M_x4_given_x1", {4, 1}, flatten2(t41)});
    g.nodes.push_back({"M_x1_x2", {1, 2}, flatten2(m12)});
    g.nodes.push_back({"M_x3_given_x2", {3, 2}, flatten2(t32)});
    return g;
}

Snfg build_single_node(const Eigen::Array<double, 16, 1>& f) {
    if ((f < 0).any()) throw std::invalid_argument("single-node table has a negative entry");
    if (!(f > 0).any()) throw AllZeroGlobalFunction("single-node table is identically zero");
    Snfg g;
    g.nodes.push_back({"f", {1, 2, 3, 4}, f});
    return g;
}

double global_value(const Snfg& g, const Configuration& c) {
    double v = 1.0;
    for (const auto& n : g.nodes) v *= n.value(c);
    return v;
}

double partition_function(const Snfg& g) {
    double z = 0.0;
    for (int idx = 0; idx < 16; ++idx) z += global_value(g, Configuration::from_index(idx));
    return z;
}

JointPmf induced_pmf(const Snfg& g) {
    double z = partition_function(g);
    if (!(z > 0)) throw AllZeroGlobalFunction("induced_pmf: partition function is zero");
    Eigen::Array<double, 16, 1> t;
    for (int idx = 0; idx < 16; ++idx) t(idx) = global_value(g, Configuration::from_index(idx)) / z;
    return JointPmf{t};
}

Eigen::ArrayXd marginal(const JointPmf& p, const std::vector<int>& subset) {
    for (int v : subset)
        if (v < 1 || v > 4) throw std::invalid_argument("marginal: variable out of range");
    Eigen::ArrayXd out = Eigen::ArrayXd::Zero(1 << subset.size());
    for (int idx = 0; idx < 16; ++idx) {
        Configuration c = Configuration::from_index(idx);
        int sub = 0;
        for (int v : subset) sub = (sub << 1) | c.x[static_cast<size_t>(v - 1)];
        out(sub) += p.table(idx);
    }
    return out;
}

BeliefCollection beliefs_of(const JointPmf& p) {
    BeliefCollection b;
    for (KPair kp : kAllPairs) {
        auto [vi, vj] = pair_vars(kp);
        Mat2 m = Mat2::Zero();
        for (int idx = 0; idx < 16; ++idx) {
            Configuration c = Configuration::from_index(idx);
            m(c.x[static_cast<size_t>(vi - 1)], c.x[static_cast<size_t>(vj - 1)]) += p.table(idx);
        }
        b.pair(kp) = m;
    }
    for (int v = 1; v <= 4; ++v) {
        Eigen::ArrayXd s = marginal(p, {v});
        b.single(v) = Vec2(s(0), s(1));
    }
    return b;
}

namespace {

Mat2 mat2_from_json(const ojson& j) {
    Mat2 m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = j.at(r).at(c).get<double>();
    return m;
}

}  // namespace

Snfg snfg_from_json(const std::string& text) {
    ojson j = ojson::parse(text);
    std::string type = j.at("type").get<std::string>();
    const auto& tables = j.at("tables");
    if (type == "cycle") {
        return build_cycle_graph(mat2_from_json(tables.at("f12")), mat2_from_json(tables.at("f14")),
                                 mat2_from_json(tables.at("f32")), mat2_from_json(tables.at("f34")));
    }
    if (type == "markov") {
        return build_markov_chain(mat2_from_json(tables.at("m12")), mat2_from_json(tables.at("m4given1")),
                                  mat2_from_json(tables.at("m3given2")));
    }
    if (type == "single") {
        const auto& f = tables.at("f");
        Eigen::Array<double, 16, 1> t;
        for (int x1 = 0; x1 < 2; ++x1)
            for (int x2 = 0; x2 < 2; ++x2)
                for (int x3 = 0; x3 < 2; ++x3)
                    for (int x4 = 0; x4 < 2; ++x4)
                        t(JointPmf::index(x1, x2, x3, x4)) =
                            f.at(x1).at(x2).at(x3).at(x4).get<double>();
        return build_single_node(t);
    }
    throw std::invalid_argument("unknown graph type: " + type);
}

}  // namespace chsh
