#include "chsh_atlas/lp.hpp"

#include <stdexcept>

namespace chsh {

void LpProblem::add_eq(std::vector<Rational> row, Rational rhs) {
    if (static_cast<int>(row.size()) != num_vars) throw std::invalid_argument("lp: row size mismatch");
    eq_lhs.push_back(std::move(row));
    eq_rhs.push_back(std::move(rhs));
}

void LpProblem::add_le(std::vector<Rational> row, Rational rhs) {
    if (static_cast<int>(row.size()) != num_vars) throw std::invalid_argument("lp: row size mismatch");
    le_lhs.push_back(std::move(row));
    le_rhs.push_back(std::move(rhs));
}

LpResult solve_lp_feasibility(const LpProblem& p) {
    const int n = p.num_vars;
    const int m_eq = static_cast<int>(p.eq_lhs.size());
    const int m_le = static_cast<int>(p.le_lhs.size());
    const int m = m_eq + m_le;
    const Rational zero, one(1);

    // Normalized system rows: sigma_i * (original row), slack column for
    // inequality rows, rhs >= 0.
    std::vector<int> sigma(m, 1);
    // columns: [0, n) structural, [n, n + m_le) slacks, then artificials
    int n_slack = m_le;
    std::vector<std::vector<Rational>> T;  // m rows, resized later with artificials
    std::vector<Rational> rhs(m);

    for (int i = 0; i < m; ++i) {
        bool is_le = i >= m_eq;
        const std::vector<Rational>& src = is_le ? p.le_lhs[i - m_eq] : p.eq_lhs[i];
        Rational b = is_le ? p.le_rhs[i - m_eq] : p.eq_rhs[i];
        if (b.sign() < 0) {
            sigma[i] = -1;
            b = -b;
        }
        std::vector<Rational> row(n + n_slack, zero);
        for (int j = 0; j < n; ++j) row[j] = sigma[i] == 1 ? src[j] : -src[j];
        if (is_le) row[n + (i - m_eq)] = sigma[i] == 1 ? one : -one;
        T.push_back(std::move(row));
        rhs[i] = std::move(b);
    }

    // Starting basis: slack where it enters with +1, artificial otherwise.
    std::vector<int> basis(m, -1);
    std::vector<int> art_col_of_row(m, -1);
    int total_cols = n + n_slack;
    std::vector<int> art_rows;
    for (int i = 0; i < m; ++i) {
        bool is_le = i >= m_eq;
        if (is_le && sigma[i] == 1) {
            basis[i] = n + (i - m_eq);
        } else {
            art_rows.push_back(i);
        }
    }
    for (int r : art_rows) {
        art_col_of_row[r] = total_cols;
        basis[r] = total_cols;
        ++total_cols;
    }
    for (int i = 0; i < m; ++i) {
        T[i].resize(total_cols, zero);
        if (art_col_of_row[i] >= 0) T[i][art_col_of_row[i]] = one;
    }

    // Phase-I objective: minimize the sum of artificials. Reduced-cost row
    // d_j = c_j - c_B^T B^{-1} A_j.
    std::vector<Rational> d(total_cols, zero);
    for (int i : art_rows)
        for (int j = 0; j < total_cols; ++j) d[j] -= T[i][j];
    for (int r : art_rows) d[art_col_of_row[r]] += one;  // c_j = 1 for artificials

    auto pivot = [&](int pr, int pc) {
        Rational piv = T[pr][pc];
        for (int j = 0; j < total_cols; ++j)
            if (!T[pr][j].is_zero()) T[pr][j] /= piv;
        rhs[pr] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == pr || T[i][pc].is_zero()) continue;
            Rational f = T[i][pc];
            for (int j = 0; j < total_cols; ++j)
                if (!T[pr][j].is_zero()) T[i][j] -= f * T[pr][j];
            rhs[i] -= f * rhs[pr];
        }
        if (!d[pc].is_zero()) {
            Rational f = d[pc];
            for (int j = 0; j < total_cols; ++j)
                if (!T[pr][j].is_zero()) d[j] -= f * T[pr][j];
        }
        basis[pr] = pc;
    };

    while (true) {
        // Bland: smallest-index column with negative reduced cost
        int enter = -1;
        for (int j = 0; j < total_cols; ++j)
            if (d[j].sign() < 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        Rational best;
        for (int i = 0; i < m; ++i) {
            if (T[i][enter].sign() <= 0) continue;
            Rational ratio = rhs[i] / T[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw std::logic_error("phase-I objective unbounded below");
        pivot(leave, enter);
    }

    Rational obj;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n + n_slack) obj += rhs[i];

    LpResult out;
    if (obj.sign() > 0) {
        // Infeasible. Recover y for the normalized system from the reduced
        // costs of each row's initial identity column, then flip signs back.
        out.feasible = false;
        std::vector<Rational> w(m);
        for (int i = 0; i < m; ++i) {
            Rational yi;
            if (art_col_of_row[i] >= 0)
                yi = one - d[art_col_of_row[i]];
            else
                yi = -d[n + (i - m_eq)];
            // certificate convention: w = -sigma * y
            w[i] = sigma[i] == 1 ? -yi : yi;
        }
        out.certificate.eq_dual.assign(w.begin(), w.begin() + m_eq);
        out.certificate.le_dual.assign(w.begin() + m_eq, w.end());
        if (!check_farkas(p, out.certificate))
            throw std::logic_error("internal error: simplex produced an invalid Farkas certificate");
        return out;
    }

    out.feasible = true;
    out.point.assign(static_cast<size_t>(n), zero);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) out.point[static_cast<size_t>(basis[i])] = rhs[i];
    if (!check_feasible_point(p, out.point))
        throw std::logic_error("internal error: simplex produced an invalid feasible point");
    return out;
}

bool check_farkas(const LpProblem& p, const FarkasCertificate& cert) {
    if (static_cast<int>(cert.eq_dual.size()) != static_cast<int>(p.eq_lhs.size())) return false;
    if (static_cast<int>(cert.le_dual.size()) != static_cast<int>(p.le_lhs.size())) return false;
    for (const Rational& z : cert.le_dual)
        if (z.sign() < 0) return false;
    for (int j = 0; j < p.num_vars; ++j) {
        Rational col;
        for (size_t i = 0; i < p.eq_lhs.size(); ++i) col += cert.eq_dual[i] * p.eq_lhs[i][static_cast<size_t>(j)];
        for (size_t i = 0; i < p.le_lhs.size(); ++i) col += cert.le_dual[i] * p.le_lhs[i][static_cast<size_t>(j)];
        if (col.sign() < 0) return false;
    }
    Rational total;
    for (size_t i = 0; i < p.eq_rhs.size(); ++i) total += cert.eq_dual[i] * p.eq_rhs[i];
    for (size_t i = 0; i < p.le_rhs.size(); ++i) total += cert.le_dual[i] * p.le_rhs[i];
    return total.sign() < 0;
}

bool check_feasible_point(const LpProblem& p, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != p.num_vars) return false;
    for (const Rational& v : x)
        if (v.sign() < 0) return false;
    for (size_t i = 0; i < p.eq_lhs.size(); ++i) {
        Rational dot;
        for (int j = 0; j < p.num_vars; ++j) dot += p.eq_lhs[i][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        if (!(dot == p.eq_rhs[i])) return false;
    }
    for (size_t i = 0; i < p.le_lhs.size(); ++i) {
        Rational dot;
        for (int j = 0; j < p.num_vars; ++j) dot += p.le_lhs[i][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        if (dot > p.le_rhs[i]) return false;
    }
    return true;
}

}  // namespace chsh
