#pragma once

#include <vector>

#include "chsh_atlas/rational.hpp"

namespace chsh {

/// Rational feasibility system over nonnegative variables:
///   eq rows:  a . x  = b
///   le rows:  g . x <= h
///   x >= 0 (implicit)
struct LpProblem {
    int num_vars = 0;
    std::vector<std::vector<Rational>> eq_lhs;
    std::vector<Rational> eq_rhs;
    std::vector<std::vector<Rational>> le_lhs;
    std::vector<Rational> le_rhs;

    void add_eq(std::vector<Rational> row, Rational rhs);
    void add_le(std::vector<Rational> row, Rational rhs);
};

/// Infeasibility witness: multipliers y (free, equality rows) and z >= 0
/// (inequality rows) with  A^T y + G^T z >= 0  and  b.y + h.z < 0.
/// Any x >= 0 satisfying the system would give 0 <= (A^T y + G^T z).x =
/// y.Ax + z.Gx <= b.y + h.z < 0.
struct FarkasCertificate {
    std::vector<Rational> eq_dual;
    std::vector<Rational> le_dual;
};

struct LpResult {
    bool feasible = false;
    std::vector<Rational> point;    // feasible point (structural variables)
    FarkasCertificate certificate;  // present when infeasible
};

/// Exact Phase-I simplex with Bland's rule; always terminates and returns
/// either a rational feasible point or a re-verifiable Farkas certificate.
LpResult solve_lp_feasibility(const LpProblem& p);

/// Exact re-verification of a certificate (one matrix-vector product plus
/// sign checks).
bool check_farkas(const LpProblem& p, const FarkasCertificate& cert);

/// Exact re-verification that a claimed point satisfies the system.
bool check_feasible_point(const LpProblem& p, const std::vector<Rational>& x);

}  // namespace chsh
