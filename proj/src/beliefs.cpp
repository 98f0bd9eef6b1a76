#include "chsh_atlas/beliefs.hpp"

#include <cmath>
#include <cstdio>

#include "chsh_atlas/json_text.hpp"

namespace chsh {

std::pair<int, int> pair_vars(KPair p) {
    switch (p) {
        case KPair::p12: return {1, 2};
        case KPair::p14: return {1, 4};
        case KPair::p32: return {3, 2};
        case KPair::p34: return {3, 4};
    }
    throw std::logic_error("pair_vars: bad pair");
}

const char* pair_name(KPair p) {
    switch (p) {
        case KPair::p12: return "12";
        case KPair::p14: return "14";
        case KPair::p32: return "32";
        case KPair::p34: return "34";
    }
    throw std::logic_error("pair_name: bad pair");
}

KPair pair_from_name(const std::string& name) {
    for (KPair p : kAllPairs)
        if (name == pair_name(p)) return p;
    throw std::invalid_argument("unknown pair name: " + name);
}

BeliefCollection BeliefCollection::uniform() {
    BeliefCollection b;
    for (auto& m : b.pairwise) m.setConstant(0.25);
    for (auto& s : b.singles) s.setConstant(0.5);
    return b;
}

BeliefCollection BeliefCollection::pr_box() {
    BeliefCollection b;
    Mat2 eq, neq;
    eq << 0.5, 0.0, 0.0, 0.5;
    neq << 0.0, 0.5, 0.5, 0.0;
    b.pair(KPair::p12) = eq;
    b.pair(KPair::p14) = eq;
    b.pair(KPair::p32) = eq;
    b.pair(KPair::p34) = neq;
    for (auto& s : b.singles) s.setConstant(0.5);
    return b;
}

BeliefCollection BeliefCollection::from_pairwise(const std::array<Mat2, 4>& pairs) {
    BeliefCollection b;
    b.pairwise = pairs;
    b.single(1) = b.pair(KPair::p12).rowwise().sum();
    b.single(2) = b.pair(KPair::p12).colwise().sum().transpose();
    b.single(3) = b.pair(KPair::p32).rowwise().sum();
    b.single(4) = b.pair(KPair::p14).colwise().sum().transpose();
    return b;
}

LmReport validate_lm(const BeliefCollection& b, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("validate_lm: tol must be positive");
    LmReport rep;
    auto flag = [&](std::string what, double mag) {
        if (mag > tol) {
            rep.member = false;
            rep.violations.push_back({std::move(what), mag});
        }
    };
    char buf[128];
    for (KPair p : kAllPairs) {
        const Mat2& m = b.pair(p);
        auto [vi, vj] = pair_vars(p);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                std::snprintf(buf, sizeof buf, "0 <= beta_%s(%d,%d) <= 1", pair_name(p), r, c);
                flag(buf, std::max(-m(r, c), m(r, c) - 1.0));
            }
        for (int r = 0; r < 2; ++r) {
            std::snprintf(buf, sizeof buf, "row sum beta_%s(%d,.) = beta_%d(%d)", pair_name(p), r, vi, r);
            flag(buf, std::abs(m.row(r).sum() - b.single(vi)(r)));
        }
        for (int c = 0; c < 2; ++c) {
            std::snprintf(buf, sizeof buf, "col sum beta_%s(.,%d) = beta_%d(%d)", pair_name(p), c, vj, c);
            flag(buf, std::abs(m.col(c).sum() - b.single(vj)(c)));
        }
    }
    for (int v = 1; v <= 4; ++v) {
        for (int r = 0; r < 2; ++r) {
            std::snprintf(buf, sizeof buf, "0 <= beta_%d(%d) <= 1", v, r);
            flag(buf, std::max(-b.single(v)(r), b.single(v)(r) - 1.0));
        }
        std::snprintf(buf, sizeof buf, "sum beta_%d = 1", v);
        flag(buf, std::abs(b.single(v).sum() - 1.0));
    }
    return rep;
}

bool pairwise_consistency(const BeliefCollection& b, KPair a, KPair c) {
    auto [ai, aj] = pair_vars(a);
    auto [ci, cj] = pair_vars(c);
    int shared = 0;
    for (int v : {ai, aj})
        for (int w : {ci, cj})
            if (v == w) shared = v;
    if (shared == 0) throw DisjointPairs("pairs share no variable");

    auto marg = [&](KPair p, int var) -> Vec2 {
        auto [vi, vj] = pair_vars(p);
        if (var == vi) return b.pair(p).rowwise().sum();
        return b.pair(p).colwise().sum().transpose();
    };
    Vec2 ma = marg(a, shared), mc = marg(c, shared);
    return (ma - mc).cwiseAbs().maxCoeff() <= 1e-12;
}

namespace {
void check_guard(const Vec2& s, int var, double eps) {
    for (int r = 0; r < 2; ++r) {
        if (!(s(r) >= eps && s(r) <= 1.0 - eps)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "beta_%d(%d) = %.6g outside [%g, 1-%g]", var, r, s(r), eps, eps);
            throw DegenerateMarginal(buf);
        }
    }
}
}  // namespace

double pcc(const BeliefCollection& b, KPair p, double guard_eps) {
    auto [vi, vj] = pair_vars(p);
    check_guard(b.single(vi), vi, guard_eps);
    check_guard(b.single(vj), vj, guard_eps);
    double di = b.single(vi)(0) * b.single(vi)(1);
    double dj = b.single(vj)(0) * b.single(vj)(1);
    return b.pair(p).determinant() / std::sqrt(di * dj);
}

double pcc_of_joint(const Mat2& joint, double guard_eps) {
    Vec2 si = joint.rowwise().sum();
    Vec2 sj = joint.colwise().sum().transpose();
    check_guard(si, 0, guard_eps);
    check_guard(sj, 0, guard_eps);
    return joint.determinant() / std::sqrt(si(0) * si(1) * sj(0) * sj(1));
}

double corr_chsh(const BeliefCollection& b, double guard_eps) {
    return pcc(b, KPair::p12, guard_eps) + pcc(b, KPair::p14, guard_eps) +
           pcc(b, KPair::p32, guard_eps) - pcc(b, KPair::p34, guard_eps);
}

double pair_energy(const Mat2& m) {
    return m(0, 0) - m(0, 1) - m(1, 0) + m(1, 1);
}

double linear_chsh(const BeliefCollection& b, std::array<int, 4> signs) {
    int minus = 0;
    for (int s : signs) {
        if (s != 1 && s != -1) throw std::invalid_argument("linear_chsh: signs must be +-1");
        if (s == -1) ++minus;
    }
    if (minus % 2 == 0) throw std::invalid_argument("linear_chsh: need an odd number of -1 signs");
    double total = 0;
    for (int k = 0; k < 4; ++k) total += signs[static_cast<size_t>(k)] * pair_energy(b.pairwise[static_cast<size_t>(k)]);
    return total;
}

bool within_all_linear_chsh(const BeliefCollection& b, double bound, double tol) {
    static constexpr std::array<std::array<int, 4>, 4> kOddPatterns{{
        {-1, +1, +1, +1}, {+1, -1, +1, +1}, {+1, +1, -1, +1}, {+1, +1, +1, -1}}};
    // the remaining odd patterns (three -1s) are global sign flips of these
    for (const auto& s : kOddPatterns)
        if (std::abs(linear_chsh(b, s)) > bound + tol) return false;
    return true;
}

BeliefCollection convex_combination(const std::vector<BeliefCollection>& items,
                                    const std::vector<double>& weights) {
    if (items.empty() || items.size() != weights.size())
        throw BadWeights("convex_combination: size mismatch");
    double sum = 0;
    for (double w : weights) {
        if (w < 0) throw BadWeights("convex_combination: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw BadWeights("convex_combination: weights must sum to 1");
    BeliefCollection out;
    for (auto& m : out.pairwise) m.setZero();
    for (auto& s : out.singles) s.setZero();
    for (size_t k = 0; k < items.size(); ++k) {
        for (int i = 0; i < 4; ++i) {
            out.pairwise[static_cast<size_t>(i)] += weights[k] * items[k].pairwise[static_cast<size_t>(i)];
            out.singles[static_cast<size_t>(i)] += weights[k] * items[k].singles[static_cast<size_t>(i)];
        }
    }
    return out;
}

std::string beliefs_to_json(const BeliefCollection& b, int indent) {
    ojson j;
    ojson pairs;
    for (KPair p : kAllPairs) {
        const Mat2& m = b.pair(p);
        pairs[pair_name(p)] = {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
    }
    j["pairs"] = pairs;
    ojson singles;
    for (int v = 1; v <= 4; ++v) singles[std::to_string(v)] = {b.single(v)(0), b.single(v)(1)};
    j["singles"] = singles;
    return dump_canonical(j, indent, 17);
}

BeliefCollection beliefs_from_json(const std::string& text) {
    ojson j = ojson::parse(text);
    BeliefCollection b;
    const auto& pairs = j.at("pairs");
    for (KPair p : kAllPairs) {
        const auto& m = pairs.at(pair_name(p));
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) b.pair(p)(r, c) = m.at(r).at(c).get<double>();
    }
    if (j.contains("singles")) {
        const auto& singles = j.at("singles");
        for (int v = 1; v <= 4; ++v) {
            const auto& s = singles.at(std::to_string(v));
            b.single(v) = Vec2(s.at(0).get<double>(), s.at(1).get<double>());
        }
    } else {
        b = BeliefCollection::from_pairwise(b.pairwise);
    }
    return b;
}

}  // namespace chsh
