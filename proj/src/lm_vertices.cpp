#include "chsh_atlas/lm_vertices.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace chsh {

namespace {

// Homogenization cone in R^17: coordinates 0..15 are the pairwise entries
// (pair order 12, 14, 32, 34; row-major within each pair), coordinate 16 is
// the homogenizing variable t. LM(K) = slice {t = 1} of
//   { v >= 0 : equality rows below }.

constexpr int kDim = 17;
constexpr int kT = 16;

int entry_index(KPair p, int r, int c) { return 4 * static_cast<int>(p) + 2 * r + c; }

// Equality rows: 4 normalizations (pair sum = t) and, per shared variable,
// agreement of the two marginal estimates (2 rows each).
std::vector<std::array<long long, kDim>> equality_rows() {
    std::vector<std::array<long long, kDim>> rows;
    auto zero_row = [] {
        std::array<long long, kDim> r{};
        return r;
    };
    for (KPair p : kAllPairs) {
        auto row = zero_row();
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) row[entry_index(p, r, c)] = 1;
        row[kT] = -1;
        rows.push_back(row);
    }
    struct Shared {
        KPair a;
        bool a_rows;  // shared variable indexes rows of a?
        KPair b;
        bool b_rows;
    };
    // variable 1: rows of 12 and rows of 14; variable 2: cols of 12 and 32;
    // variable 3: rows of 32 and 34; variable 4: cols of 14 and 34.
    const Shared shared[] = {{KPair::p12, true, KPair::p14, true},
                             {KPair::p12, false, KPair::p32, false},
                             {KPair::p32, true, KPair::p34, true},
                             {KPair::p14, false, KPair::p34, false}};
    for (const Shared& s : shared) {
        for (int val = 0; val < 2; ++val) {
            auto row = zero_row();
            for (int other = 0; other < 2; ++other) {
                int ia = s.a_rows ? entry_index(s.a, val, other) : entry_index(s.a, other, val);
                int ib = s.b_rows ? entry_index(s.b, val, other) : entry_index(s.b, other, val);
                row[ia] += 1;
                row[ib] -= 1;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

struct Ray {
    std::array<BigInt, kDim> v;
    uint32_t zero_mask;  // bit k set iff coordinate k is zero
};

uint32_t mask_of(const std::array<BigInt, kDim>& v) {
    uint32_t m = 0;
    for (int k = 0; k < kDim; ++k)
        if (v[k].is_zero()) m |= 1u << k;
    return m;
}

void normalize(std::array<BigInt, kDim>& v) {
    BigInt g;
    for (const BigInt& x : v)
        if (!x.is_zero()) g = g.is_zero() ? x : BigInt::gcd(g, x);
    if (g.is_zero() || g == BigInt(1)) return;
    for (BigInt& x : v) {
        if (x.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(x, g, q, r);
        x = x.sign() < 0 ? -q : q;
    }
}

BigInt dot(const std::array<long long, kDim>& a, const std::array<BigInt, kDim>& v) {
    BigInt acc;
    for (int k = 0; k < kDim; ++k) {
        if (a[k] == 0 || v[k].is_zero()) continue;
        acc += BigInt(a[k]) * v[k];
    }
    return acc;
}

}  // namespace

std::vector<LmVertexExact> lm_vertices_exact() {
    std::vector<Ray> rays;
    for (int k = 0; k < kDim; ++k) {
        Ray r;
        for (int j = 0; j < kDim; ++j) r.v[j] = BigInt(j == k ? 1 : 0);
        r.zero_mask = ~(1u << k) & ((1u << kDim) - 1);
        rays.push_back(std::move(r));
    }

    for (const auto& row : equality_rows()) {
        std::vector<Ray> keep, plus, minus;
        std::vector<BigInt> plus_val, minus_val;
        for (Ray& r : rays) {
            BigInt s = dot(row, r.v);
            if (s.is_zero())
                keep.push_back(std::move(r));
            else if (s.sign() > 0) {
                plus.push_back(std::move(r));
                plus_val.push_back(std::move(s));
            } else {
                minus.push_back(std::move(r));
                minus_val.push_back(std::move(s));
            }
        }
        // adjacency: no third surviving ray's zero set contains the meet
        auto adjacent = [&](uint32_t meet, const Ray* a, const Ray* b) {
            auto dominates = [&](const Ray& r) {
                return &r != a && &r != b && (r.zero_mask & meet) == meet;
            };
            for (const Ray& r : keep)
                if (dominates(r)) return false;
            for (const Ray& r : plus)
                if (dominates(r)) return false;
            for (const Ray& r : minus)
                if (dominates(r)) return false;
            return true;
        };
        for (size_t i = 0; i < plus.size(); ++i) {
            for (size_t j = 0; j < minus.size(); ++j) {
                uint32_t meet = plus[i].zero_mask & minus[j].zero_mask;
                if (!adjacent(meet, &plus[i], &minus[j])) continue;
                Ray nr;
                // lambda * plus + mu * minus with lambda = -<a,minus> > 0
                BigInt lambda = -minus_val[j], mu = plus_val[i];
                for (int k = 0; k < kDim; ++k) nr.v[k] = lambda * plus[i].v[k] + mu * minus[j].v[k];
                normalize(nr.v);
                nr.zero_mask = mask_of(nr.v);
                keep.push_back(std::move(nr));
            }
        }
        // remove duplicates (identical normalized vectors), then rays whose
        // zero set is strictly contained in another's (non-extreme)
        std::vector<Ray> unique;
        for (Ray& r : keep) {
            bool dup = false;
            for (const Ray& u : unique)
                if (u.zero_mask == r.zero_mask && u.v == r.v) {
                    dup = true;
                    break;
                }
            if (!dup) unique.push_back(std::move(r));
        }
        std::vector<Ray> extreme;
        for (Ray& r : unique) {
            bool dominated = false;
            for (const Ray& u : unique) {
                if (&u == &r || u.zero_mask == r.zero_mask) continue;
                if ((u.zero_mask & r.zero_mask) == r.zero_mask) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) extreme.push_back(std::move(r));
        }
        rays = std::move(extreme);
    }

    std::vector<LmVertexExact> verts;
    for (const Ray& r : rays) {
        if (r.v[kT].is_zero())
            throw std::logic_error("lm_vertices: unexpected recession ray (polytope should be bounded)");
        LmVertexExact v;
        for (int k = 0; k < 16; ++k) v[static_cast<size_t>(k)] = Rational(r.v[k], r.v[kT]);
        verts.push_back(std::move(v));
    }
    std::sort(verts.begin(), verts.end(), [](const LmVertexExact& a, const LmVertexExact& b) {
        for (int k = 0; k < 16; ++k) {
            if (a[static_cast<size_t>(k)] == b[static_cast<size_t>(k)]) continue;
            return a[static_cast<size_t>(k)] < b[static_cast<size_t>(k)];
        }
        return false;
    });
    return verts;
}

std::vector<BeliefCollection> lm_vertices() {
    std::vector<BeliefCollection> out;
    for (const LmVertexExact& v : lm_vertices_exact()) {
        std::array<Mat2, 4> pairs;
        for (KPair p : kAllPairs) {
            Mat2 m;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    m(r, c) = v[static_cast<size_t>(entry_index(p, r, c))].to_double();
            pairs[static_cast<size_t>(p)] = m;
        }
        out.push_back(BeliefCollection::from_pairwise(pairs));
    }
    return out;
}

bool lm_member_exact(const LmVertexExact& v) {
    for (const Rational& x : v)
        if (x.sign() < 0 || x > Rational(1)) return false;
    Rational one(1);
    auto entry = [&](KPair p, int r, int c) { return v[static_cast<size_t>(entry_index(p, r, c))]; };
    for (KPair p : kAllPairs) {
        Rational s;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) s += entry(p, r, c);
        if (!(s == one)) return false;
    }
    auto rowsum = [&](KPair p, int r) { return entry(p, r, 0) + entry(p, r, 1); };
    auto colsum = [&](KPair p, int c) { return entry(p, 0, c) + entry(p, 1, c); };
    for (int val = 0; val < 2; ++val) {
        if (!(rowsum(KPair::p12, val) == rowsum(KPair::p14, val))) return false;
        if (!(colsum(KPair::p12, val) == colsum(KPair::p32, val))) return false;
        if (!(rowsum(KPair::p32, val) == rowsum(KPair::p34, val))) return false;
        if (!(colsum(KPair::p14, val) == colsum(KPair::p34, val))) return false;
    }
    return true;
}

}  // namespace chsh
