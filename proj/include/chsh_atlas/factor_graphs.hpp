#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "chsh_atlas/beliefs.hpp"

namespace chsh {

struct AllZeroGlobalFunction : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotStochastic : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotNormalized : std::runtime_error { using std::runtime_error::runtime_error; };

/// Assignment of a binary value to each of the four edge variables.
struct Configuration {
    std::array<int, 4> x{};  // x[k] is the value of edge k+1

    static Configuration from_index(int idx);
    int index() const { return (x[0] << 3) | (x[1] << 2) | (x[2] << 1) | x[3]; }
};

/// Normalized nonnegative table over {0,1}^4; entry order follows
/// Configuration::index (x1 is the most significant bit).
struct JointPmf {
    Eigen::Array<double, 16, 1> table;

    static int index(int x1, int x2, int x3, int x4) { return (x1 << 3) | (x2 << 2) | (x3 << 1) | x4; }
    double operator()(int x1, int x2, int x3, int x4) const { return table(index(x1, x2, x3, x4)); }

    /// Validates nonnegativity and normalization (1e-12) and returns the PMF.
    static JointPmf from_table(const Eigen::Array<double, 16, 1>& t);
};

struct FactorNode {
    std::string name;
    std::vector<int> edges;  // incident edge ids (1..4); order matches table axes
    Eigen::ArrayXd table;    // 2^edges.size() entries, row-major in edge order

    double value(const Configuration& c) const;
};

/// Normal factor graph over the four binary edge variables. Edges incident
/// on a single node are half edges; on two nodes, full edges.
struct Snfg {
    std::vector<FactorNode> nodes;

    std::array<int, 4> edge_degrees() const;
};

/// Four-node cycle wired f12(x1,x2) f14(x1,x4) f32(x3,x2) f34(x3,x4).
Snfg build_cycle_graph(const Mat2& f12, const Mat2& f14, const Mat2& f32, const Mat2& f34);

/// Chain with nodes M_{X4|X1}, M_{X1,X2}, M_{X3|X2}; x3 and x4 are half
/// edges. Conditional rows are indexed by the conditioning variable.
Snfg build_markov_chain(const Mat2& m12, const Mat2& m4given1, const Mat2& m3given2);

/// One node holding a full table over (x1,x2,x3,x4), all edges half.
Snfg build_single_node(const Eigen::Array<double, 16, 1>& f);

/// The three chain factors (joint of x1,x2 plus the two conditionals with
/// rows indexed by the conditioning variable).
struct ChainFactors {
    Mat2 m12;
    Mat2 m4given1;
    Mat2 m3given2;

    Snfg build() const { return build_markov_chain(m12, m4given1, m3given2); }
};

/// The four cycle factor tables of the four-node loop.
struct CycleFactors {
    Mat2 f12;
    Mat2 f14;
    Mat2 f32;
    Mat2 f34;

    Snfg build() const { return build_cycle_graph(f12, f14, f32, f34); }
};

double global_value(const Snfg& g, const Configuration& c);
double partition_function(const Snfg& g);
JointPmf induced_pmf(const Snfg& g);

/// Sums the PMF over the complement of `subset` (ascending variable ids);
/// result axes follow the ascending order of `subset`.
Eigen::ArrayXd marginal(const JointPmf& p, const std::vector<int>& subset);

/// Extracts the four cycle-pair matrices (rows indexed by the first listed
/// variable; {2,3} stored as beta_32) and the four singles.
BeliefCollection beliefs_of(const JointPmf& p);

// Graph description file: {"type":"cycle"|"markov"|"single","tables":{...}}
Snfg snfg_from_json(const std::string& text);

}  // namespace chsh
