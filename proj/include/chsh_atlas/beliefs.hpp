#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chsh {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// The four cycle pairs, in the order they enter the correlation functional:
/// (1,2), (1,4), (3,2), (3,4). The first member of each pair indexes rows of
/// its pairwise matrix; the pair {2,3} is stored transposed as (3,2).
enum class KPair : int { p12 = 0, p14 = 1, p32 = 2, p34 = 3 };

inline constexpr std::array<KPair, 4> kAllPairs{KPair::p12, KPair::p14, KPair::p32, KPair::p34};

std::pair<int, int> pair_vars(KPair p);  // (row variable, column variable), 1-based
const char* pair_name(KPair p);          // "12", "14", "32", "34"
KPair pair_from_name(const std::string& name);

struct DegenerateMarginal : std::runtime_error { using std::runtime_error::runtime_error; };
struct DisjointPairs : std::runtime_error { using std::runtime_error::runtime_error; };
struct BadWeights : std::runtime_error { using std::runtime_error::runtime_error; };

/// Pairwise beliefs on the cycle pairs plus the four single-variable
/// marginals (stored as the diagonals of the diagonal matrices beta_i).
struct BeliefCollection {
    std::array<Mat2, 4> pairwise;
    std::array<Vec2, 4> singles;

    const Mat2& pair(KPair p) const { return pairwise[static_cast<int>(p)]; }
    Mat2& pair(KPair p) { return pairwise[static_cast<int>(p)]; }
    const Vec2& single(int var) const { return singles[static_cast<size_t>(var - 1)]; }
    Vec2& single(int var) { return singles[static_cast<size_t>(var - 1)]; }

    static BeliefCollection uniform();
    static BeliefCollection pr_box();
    /// Singles recomputed from pairwise row/column sums.
    static BeliefCollection from_pairwise(const std::array<Mat2, 4>& pairs);
};

struct LmViolation {
    std::string constraint;
    double magnitude;
};

struct LmReport {
    bool member = true;
    std::vector<LmViolation> violations;
};

/// Checks entry bounds, pairwise-to-single marginalization and single
/// normalization; every violated constraint is reported with its magnitude.
LmReport validate_lm(const BeliefCollection& b, double tol = 1e-9);

/// True iff the shared variable's marginal computed from both pairwise
/// matrices agrees within 1e-12. Throws DisjointPairs when the pairs share
/// no variable.
bool pairwise_consistency(const BeliefCollection& b, KPair a, KPair c);

/// Pearson correlation coefficient of a pair via the determinant identity
/// det(beta_ij) / sqrt(det(beta_i) det(beta_j)). Both diagonal entries of
/// each single must lie in [guard_eps, 1 - guard_eps].
double pcc(const BeliefCollection& b, KPair p, double guard_eps = 1e-9);

/// PCC of an arbitrary 2x2 joint PMF (singles taken from its own row and
/// column sums); used for the non-cycle pairs of the chain variant.
double pcc_of_joint(const Mat2& joint, double guard_eps = 1e-9);

/// Corr(b_12) + Corr(b_14) + Corr(b_32) - Corr(b_34).
double corr_chsh(const BeliefCollection& b, double guard_eps = 1e-9);

/// E_ij = sum_{xi,xj} (-1)^{xi+xj} beta_ij(xi,xj).
double pair_energy(const Mat2& m);

/// Signed sum of the four pair energies; `signs` must contain an odd number
/// of -1 entries (default puts the -1 on pair {3,4}).
double linear_chsh(const BeliefCollection& b, std::array<int, 4> signs = {+1, +1, +1, -1});

/// True iff |linear_chsh| <= bound + tol for every odd sign pattern.
bool within_all_linear_chsh(const BeliefCollection& b, double bound = 2.0, double tol = 1e-9);

/// Entrywise convex combination; weights must be nonnegative and sum to 1
/// within 1e-12, else BadWeights.
BeliefCollection convex_combination(const std::vector<BeliefCollection>& items,
                                    const std::vector<double>& weights);

// Interchange format:
// {"pairs":{"12":[[a,b],[c,d]],...},"singles":{"1":[a,b],...}}
std::string beliefs_to_json(const BeliefCollection& b, int indent = 2);
BeliefCollection beliefs_from_json(const std::string& text);

}  // namespace chsh
