#include "chsh_atlas/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "chsh_atlas/json_text.hpp"
#include "chsh_atlas/rng.hpp"

namespace chsh {

DensityMatrix DensityMatrix::validated(const Mat4c& m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0)) > 1e-12)
        throw std::invalid_argument("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Mat4c> es(m);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    return DensityMatrix{m};
}

Unitary2 Unitary2::validated(const Mat2c& m) {
    if ((m * m.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("matrix is not unitary");
    return Unitary2{m};
}

QnfgModel QnfgModel::from_pure(const Eigen::Vector4cd& psi, const Mat2c& u1, const Mat2c& u2) {
    Eigen::Vector4cd n = psi / psi.norm();
    return QnfgModel{DensityMatrix::validated(n * n.adjoint()), Unitary2::validated(u1),
                     Unitary2::validated(u2)};
}

Mat4c kron2(const Mat2c& a, const Mat2c& b) {
    Mat4c k;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
}

Mat2c chart_unitary(double phi, double t, double a, double b) {
    const Complex i(0.0, 1.0);
    double c = std::cos(t), s = std::sin(t);
    Mat2c u;
    u << std::exp(i * a) * c, std::exp(i * b) * s, -std::exp(-i * b) * s, std::exp(-i * a) * c;
    return std::exp(i * phi) * u;
}

Eigen::Vector4d unitary_chart_params(const Mat2c& u) {
    Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    double phi = 0.5 * std::arg(det);
    Mat2c v = std::exp(Complex(0, -phi)) * u;
    double c = std::abs(v(0, 0)), s = std::abs(v(0, 1));
    double t = std::atan2(s, c);
    double a = c > 1e-300 ? std::arg(v(0, 0)) : 0.0;
    double b = s > 1e-300 ? std::arg(v(0, 1)) : 0.0;
    return Eigen::Vector4d(phi, t, a, b);
}

QnfgModel random_model(Prng& rng, double mix_floor) {
    Mat4c g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = Complex(rng.gauss(), rng.gauss());
    Mat4c rho = g * g.adjoint();
    rho /= rho.trace();
    if (mix_floor > 0) rho = (1.0 - mix_floor) * rho + mix_floor * 0.25 * Mat4c::Identity();
    rho = Mat4c((rho + rho.adjoint()) / 2.0);
    const double tau = 6.283185307179586;
    Mat2c u1 = chart_unitary(rng.uniform(0, tau), rng.uniform(0, tau), rng.uniform(0, tau), rng.uniform(0, tau));
    Mat2c u2 = chart_unitary(rng.uniform(0, tau), rng.uniform(0, tau), rng.uniform(0, tau), rng.uniform(0, tau));
    return QnfgModel{DensityMatrix::validated(rho), Unitary2::validated(u1), Unitary2::validated(u2)};
}

std::array<Mat2c, 2> measurement_ops(const QnfgModel& m, int i) {
    if (i < 1 || i > 4) throw BadIndex("variable index must be in 1..4");
    Mat2c e0 = Mat2c::Zero(), e1 = Mat2c::Zero();
    e0(0, 0) = 1.0;
    e1(1, 1) = 1.0;
    switch (i) {
        case 1:
        case 2: return {e0, e1};
        case 3: return {e0 * m.u1.u, e1 * m.u1.u};
        default: return {e0 * m.u2.u, e1 * m.u2.u};
    }
}

BeliefCollection quantum_beliefs(const QnfgModel& m) {
    // Tr((A (x) B) rho (A (x) B)^H) = Tr(rho (A^H A (x) B^H B)) by cyclicity;
    // contract rho against the per-side projectors instead of forming krons.
    auto side_projectors = [&](int var) {
        auto ops = measurement_ops(m, var);
        std::array<Mat2c, 2> proj;
        for (int x = 0; x < 2; ++x) proj[static_cast<size_t>(x)] = ops[static_cast<size_t>(x)].adjoint() * ops[static_cast<size_t>(x)];
        return proj;
    };
    const std::array<std::array<Mat2c, 2>, 4> proj{{side_projectors(1), side_projectors(2),
                                                    side_projectors(3), side_projectors(4)}};
    const Mat4c& rho = m.rho.rho;
    std::array<Mat2, 4> pairs;
    for (KPair kp : kAllPairs) {
        auto [vi, vj] = pair_vars(kp);
        Mat2 beta;
        for (int xj = 0; xj < 2; ++xj) {
            const Mat2c& q = proj[static_cast<size_t>(vj - 1)][static_cast<size_t>(xj)];
            // partial contraction over the second qubit: t(y1,z1) = sum rho((y1,y2),(z1,z2)) q(z2,y2)
            Mat2c t = Mat2c::Zero();
            for (int y1 = 0; y1 < 2; ++y1)
                for (int z1 = 0; z1 < 2; ++z1)
                    for (int y2 = 0; y2 < 2; ++y2)
                        for (int z2 = 0; z2 < 2; ++z2)
                            t(y1, z1) += rho((y1 << 1) | y2, (z1 << 1) | z2) * q(z2, y2);
            for (int xi = 0; xi < 2; ++xi) {
                const Mat2c& pmat = proj[static_cast<size_t>(vi - 1)][static_cast<size_t>(xi)];
                Complex acc = 0;
                for (int y1 = 0; y1 < 2; ++y1)
                    for (int z1 = 0; z1 < 2; ++z1) acc += pmat(z1, y1) * t(y1, z1);
                beta(xi, xj) = acc.real();
            }
        }
        pairs[static_cast<size_t>(kp)] = beta;
    }
    return BeliefCollection::from_pairwise(pairs);
}

BeliefCollection quantum_beliefs_pure(const Mat2c& psi_mat, const Mat2c& u1, const Mat2c& u2) {
    std::array<Mat2, 4> pairs;
    const Mat2c eye = Mat2c::Identity();
    for (KPair kp : kAllPairs) {
        auto [vi, vj] = pair_vars(kp);
        const Mat2c& a = (vi == 3) ? u1 : eye;
        const Mat2c& b = (vj == 4) ? u2 : eye;
        Mat2c amp = a * psi_mat * b.transpose();
        pairs[static_cast<size_t>(kp)] = amp.cwiseAbs2();
    }
    return BeliefCollection::from_pairwise(pairs);
}

Sqmf build_sqmf(const QnfgModel& m) {
    Sqmf q;
    const Mat4c& rho = m.rho.rho;
    const Mat2c& u1 = m.u1.u;
    const Mat2c& u2 = m.u2.u;
    for (int x = 0; x < 16; ++x) {
        int x1 = (x >> 3) & 1, x2 = (x >> 2) & 1, x3 = (x >> 1) & 1, x4 = x & 1;
        for (int y = 0; y < 16; ++y) {
            int y1 = (y >> 3) & 1, y2 = (y >> 2) & 1, y3 = (y >> 1) & 1, y4 = y & 1;
            if (x3 != y3 || x4 != y4) {
                q.kernel(x, y) = 0.0;
                continue;
            }
            q.kernel(x, y) = rho((x1 << 1) | x2, (y1 << 1) | y2) * u1(x3, x1) *
                             std::conj(u1(y3, y1)) * u2(x4, x2) * std::conj(u2(y4, y2));
        }
    }
    return q;
}

SqmfReport validate_sqmf(const Sqmf& q, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("validate_sqmf: tol must be positive");
    SqmfReport rep;
    rep.hermitian_violation = (q.kernel - q.kernel.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Mat16c> es((q.kernel + q.kernel.adjoint()) / 2.0);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.sum_deviation = std::abs(q.kernel.sum() - Complex(1.0));
    rep.pass = rep.hermitian_violation <= tol && rep.min_eigenvalue >= -tol && rep.sum_deviation <= tol;
    return rep;
}

Eigen::MatrixXcd sqmf_marginal(const Sqmf& q, const std::vector<int>& I) {
    if (I.empty()) throw std::invalid_argument("sqmf_marginal: empty variable set");
    for (int v : I)
        if (v < 1 || v > 4) throw std::invalid_argument("sqmf_marginal: variable out of range");
    const int n = static_cast<int>(I.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
    for (int x = 0; x < 16; ++x) {
        int xi = 0;
        for (int v : I) xi = (xi << 1) | ((x >> (4 - v)) & 1);
        for (int y = 0; y < 16; ++y) {
            int yi = 0;
            for (int v : I) yi = (yi << 1) | ((y >> (4 - v)) & 1);
            out(xi, yi) += q.kernel(x, y);
        }
    }
    return out;
}

namespace {
double max_offdiag(const Eigen::MatrixXcd& m) {
    double mx = 0;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (r != c) mx = std::max(mx, std::abs(m(r, c)));
    return mx;
}
}  // namespace

bool classicable(const Sqmf& q, const std::vector<int>& I, double tol) {
    return max_offdiag(sqmf_marginal(q, I)) <= tol;
}

Eigen::ArrayXd classical_marginal(const Sqmf& q, const std::vector<int>& I, double tol) {
    Eigen::MatrixXcd m = sqmf_marginal(q, I);
    if (max_offdiag(m) > tol)
        throw NotClassicable("variables are not jointly classicable at the given tolerance");
    Eigen::ArrayXd out(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        Complex d = m(r, r);
        if (std::abs(d.imag()) > 1e-12 || d.real() < -1e-12)
            throw NotClassicable("marginal diagonal is not a nonnegative real");
        out(r) = std::max(0.0, d.real());
    }
    return out;
}

namespace {

ojson cmat_to_json(const Eigen::MatrixXcd& m) {
    ojson rows = ojson::array();
    for (int r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXcd cmat_from_json(const ojson& j, int dim) {
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const auto& e = j.at(r).at(c);
            m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return m;
}

}  // namespace

std::string model_to_json(const QnfgModel& m, int indent) {
    ojson j;
    j["rho"] = cmat_to_json(m.rho.rho);
    j["u1"] = cmat_to_json(m.u1.u);
    j["u2"] = cmat_to_json(m.u2.u);
    return dump_canonical(j, indent, 17);
}

QnfgModel model_from_json(const std::string& text) {
    ojson j = ojson::parse(text);
    return QnfgModel{DensityMatrix::validated(cmat_from_json(j.at("rho"), 4)),
                     Unitary2::validated(cmat_from_json(j.at("u1"), 2)),
                     Unitary2::validated(cmat_from_json(j.at("u2"), 2))};
}

}  // namespace chsh
