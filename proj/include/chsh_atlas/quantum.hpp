#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "chsh_atlas/beliefs.hpp"

namespace chsh {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Mat16c = Eigen::Matrix<Complex, 16, 16>;

struct BadIndex : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotClassicable : std::runtime_error { using std::runtime_error::runtime_error; };

/// 4x4 density matrix; Hermitian within 1e-12, min eigenvalue >= -1e-10,
/// unit trace within 1e-12 (checked by validated()).
struct DensityMatrix {
    Mat4c rho;

    static DensityMatrix validated(const Mat4c& m);
};

/// 2x2 unitary; U U^H = I within 1e-12 (checked by validated()).
struct Unitary2 {
    Mat2c u;

    static Unitary2 validated(const Mat2c& m);
};

/// The two-qubit quantum factor graph: a state plus the two basis-change
/// unitaries applied before the second measurement on each side.
struct QnfgModel {
    DensityMatrix rho;
    Unitary2 u1, u2;

    static QnfgModel from_pure(const Eigen::Vector4cd& psi, const Mat2c& u1, const Mat2c& u2);
};

/// 16x16 complex kernel q(x, x') over x, x' in {0,1}^4; index order
/// x1 x2 x3 x4 with x1 the most significant bit.
struct Sqmf {
    Mat16c kernel;
};

Mat4c kron2(const Mat2c& a, const Mat2c& b);

/// Four-real-parameter chart of U(2):
/// e^{i phi} [[e^{i a} cos t, e^{i b} sin t], [-e^{-i b} sin t, e^{-i a} cos t]].
Mat2c chart_unitary(double phi, double t, double a, double b);

/// Inverse of chart_unitary: parameters (phi, t, a, b) reproducing u.
Eigen::Vector4d unitary_chart_params(const Mat2c& u);

class Prng;

/// Seeded random model: Ginibre density matrix mixed with `mix_floor` of the
/// maximally mixed state, chart unitaries with uniform angles.
QnfgModel random_model(Prng& rng, double mix_floor = 0.0);

/// Measurement matrices {O_{i,0}, O_{i,1}} for variable i: the computational
/// basis for i in {1,2}, preceded by U1 (i=3) or U2 (i=4) otherwise.
std::array<Mat2c, 2> measurement_ops(const QnfgModel& m, int i);

/// beta_{i,j}(x_i,x_j) = Tr((A_{i,x_i} (x) B_{j,x_j}) rho (...)^H) on the
/// four cycle pairs; singles from row/column sums.
BeliefCollection quantum_beliefs(const QnfgModel& m);

/// Pure-state fast path: with Psi(x1,x2) the 2x2 reshape of the state,
/// beta_{i,j} = |A_i Psi B_j^T|^2 entrywise (A_1 = B_2 = I, A_3 = U1,
/// B_4 = U2). Agrees with quantum_beliefs on the corresponding projector.
BeliefCollection quantum_beliefs_pure(const Mat2c& psi_mat, const Mat2c& u1, const Mat2c& u2);

Sqmf build_sqmf(const QnfgModel& m);

struct SqmfReport {
    bool pass = true;
    double hermitian_violation = 0;
    double min_eigenvalue = 0;
    double sum_deviation = 0;
};

SqmfReport validate_sqmf(const Sqmf& q, double tol);

/// Marginal kernel over the variables in I (complement indices of x and x'
/// summed independently); entries indexed by packed bits of x_I.
Eigen::MatrixXcd sqmf_marginal(const Sqmf& q, const std::vector<int>& I);

/// True iff the marginal kernel is diagonal up to tol.
bool classicable(const Sqmf& q, const std::vector<int>& I, double tol = 1e-10);

/// Diagonal of the marginal kernel as a PMF table; throws NotClassicable
/// when the off-diagonal mass exceeds tol.
Eigen::ArrayXd classical_marginal(const Sqmf& q, const std::vector<int>& I, double tol = 1e-10);

// JSON: {"rho":[[ [re,im], ...]...], "u1":[[..]], "u2":[[..]]}
std::string model_to_json(const QnfgModel& m, int indent = 2);
QnfgModel model_from_json(const std::string& text);

}  // namespace chsh
