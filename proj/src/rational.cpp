#include "chsh_atlas/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace chsh {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    uint64_t m = v < 0 ? -static_cast<uint64_t>(v) : static_cast<uint64_t>(v);
    limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
    if (m >> 32) limbs_.push_back(static_cast<uint32_t>(m >> 32));
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& lo = a.size() >= b.size() ? b : a;
    const std::vector<uint32_t>& hi = a.size() >= b.size() ? a : b;
    std::vector<uint32_t> r(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
        r[i] = static_cast<uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    r[hi.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// requires |a| >= |b|
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) {
            s += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        if (ai == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = r[i + j] + ai * b[j] + carry;
            r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.sign_ = a.sign_;
        r.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
    } else {
        int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sign_ = a.sign_;
            r.limbs_ = BigInt::sub_mag(a.limbs_, b.limbs_);
        } else {
            r.sign_ = b.sign_;
            r.limbs_ = BigInt::sub_mag(b.limbs_, a.limbs_);
        }
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.sign_ = a.sign_ * b.sign_;
    r.limbs_ = BigInt::mul_mag(a.limbs_, b.limbs_);
    r.trim();
    return r;
}

bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    int c = BigInt::cmp_mag(a.limbs_, b.limbs_) * (a.sign_ == 0 ? 0 : a.sign_);
    return c <=> 0;
}

void BigInt::shr1() {
    uint32_t carry = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        uint32_t cur = limbs_[i];
        limbs_[i] = (cur >> 1) | (carry << 31);
        carry = cur & 1u;
    }
    trim();
}

void BigInt::shl_bits(unsigned k) {
    if (sign_ == 0 || k == 0) return;
    unsigned words = k / 32, bits = k % 32;
    if (bits) {
        uint32_t carry = 0;
        for (size_t i = 0; i < limbs_.size(); ++i) {
            uint64_t cur = (static_cast<uint64_t>(limbs_[i]) << bits) | carry;
            limbs_[i] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = static_cast<uint32_t>(cur >> 32);
        }
        if (carry) limbs_.push_back(carry);
    }
    if (words) limbs_.insert(limbs_.begin(), words, 0u);
}

namespace {
uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}
}  // namespace

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    if (a.is_zero()) { BigInt r = b; r.sign_ = r.sign_ ? 1 : 0; return r; }
    if (b.is_zero()) { BigInt r = a; r.sign_ = r.sign_ ? 1 : 0; return r; }
    if (a.limbs_.size() <= 2 && b.limbs_.size() <= 2) {
        auto val = [](const BigInt& x) {
            uint64_t v = x.limbs_[0];
            if (x.limbs_.size() > 1) v |= static_cast<uint64_t>(x.limbs_[1]) << 32;
            return v;
        };
        uint64_t g = gcd_u64(val(a), val(b));
        BigInt r;
        r.sign_ = 1;
        r.limbs_.push_back(static_cast<uint32_t>(g & 0xffffffffu));
        if (g >> 32) r.limbs_.push_back(static_cast<uint32_t>(g >> 32));
        return r;
    }
    BigInt u = a, v = b;
    u.sign_ = 1;
    v.sign_ = 1;
    unsigned shift = 0;
    while (!u.is_odd() && !v.is_odd()) {
        u.shr1();
        v.shr1();
        ++shift;
    }
    while (!u.is_odd()) u.shr1();
    while (true) {
        while (!v.is_odd()) v.shr1();
        if (cmp_mag(u.limbs_, v.limbs_) > 0) std::swap(u, v);
        v = v - u;
        if (v.is_zero()) break;
        v.sign_ = 1;
    }
    u.shl_bits(shift);
    return u;
}

// Knuth algorithm D; returns quotient, remainder via out-params (magnitudes).
void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::invalid_argument("BigInt: division by zero");
    q = BigInt();
    r = BigInt();
    if (a.is_zero()) return;
    if (cmp_mag(a.limbs_, b.limbs_) < 0) {
        r = a;
        r.sign_ = 1;
        return;
    }
    if (b.limbs_.size() == 1) {
        q = a;
        q.sign_ = 1;
        uint32_t rem = q.divmod_small(b.limbs_[0]);
        r = BigInt(static_cast<long long>(rem));
        return;
    }
    // normalize: shift so divisor's top limb has its high bit set
    unsigned shift = 0;
    {
        uint32_t top = b.limbs_.back();
        while (!(top & 0x80000000u)) {
            top <<= 1;
            ++shift;
        }
    }
    BigInt u = a, v = b;
    u.sign_ = 1;
    v.sign_ = 1;
    u.shl_bits(shift);
    v.shl_bits(shift);
    size_t n = v.limbs_.size(), m = u.limbs_.size() - n;
    u.limbs_.push_back(0);
    std::vector<uint32_t> quot(m + 1, 0);
    const uint64_t vtop = v.limbs_[n - 1], vsecond = v.limbs_[n - 2];
    for (size_t j = m + 1; j-- > 0;) {
        uint64_t num = (static_cast<uint64_t>(u.limbs_[j + n]) << 32) | u.limbs_[j + n - 1];
        uint64_t qhat = num / vtop, rhat = num % vtop;
        while (qhat >= kBase || qhat * vsecond > ((rhat << 32) | u.limbs_[j + n - 2])) {
            --qhat;
            rhat += vtop;
            if (rhat >= kBase) break;
        }
        // multiply-subtract qhat * v from u[j .. j+n]
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v.limbs_[i] + carry;
            carry = p >> 32;
            int64_t t = static_cast<int64_t>(u.limbs_[i + j]) - borrow - static_cast<int64_t>(p & 0xffffffffu);
            if (t < 0) {
                t += static_cast<int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u.limbs_[i + j] = static_cast<uint32_t>(t);
        }
        int64_t t = static_cast<int64_t>(u.limbs_[j + n]) - borrow - static_cast<int64_t>(carry);
        if (t < 0) {
            // qhat was one too large: add v back
            t += static_cast<int64_t>(kBase);
            --qhat;
            uint64_t c2 = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t s = static_cast<uint64_t>(u.limbs_[i + j]) + v.limbs_[i] + c2;
                u.limbs_[i + j] = static_cast<uint32_t>(s & 0xffffffffu);
                c2 = s >> 32;
            }
            t += static_cast<int64_t>(c2);
        }
        u.limbs_[j + n] = static_cast<uint32_t>(t);
        quot[j] = static_cast<uint32_t>(qhat);
    }
    u.limbs_.resize(n);
    u.sign_ = u.limbs_.empty() ? 0 : 1;
    u.trim();
    for (unsigned i = 0; i < shift && !u.is_zero(); ++i) u.shr1();
    r = u;
    q.limbs_ = std::move(quot);
    q.sign_ = 1;
    q.trim();
}

uint32_t BigInt::divmod_small(uint32_t d) {
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<uint32_t>(rem);
}

void BigInt::mul_small_add(uint32_t m, uint32_t add) {
    uint64_t carry = add;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t cur = static_cast<uint64_t>(limbs_[i]) * m + carry;
        limbs_[i] = static_cast<uint32_t>(cur & 0xffffffffu);
        carry = cur >> 32;
    }
    while (carry) {
        limbs_.push_back(static_cast<uint32_t>(carry & 0xffffffffu));
        carry >>= 32;
    }
    if (!limbs_.empty() && sign_ == 0) sign_ = 1;
    trim();
}

BigInt BigInt::from_decimal(std::string_view s) {
    BigInt r;
    size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -1;
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty decimal string");
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        r.mul_small_add(10, static_cast<uint32_t>(s[i] - '0'));
    }
    if (!r.limbs_.empty()) r.sign_ = sign;
    return r;
}

std::string BigInt::to_decimal() const {
    if (is_zero()) return "0";
    BigInt t = *this;
    std::string out;
    while (!t.is_zero()) {
        uint32_t rem = t.divmod_small(1000000000u);
        char buf[16];
        if (t.is_zero())
            std::snprintf(buf, sizeof buf, "%u", rem);
        else
            std::snprintf(buf, sizeof buf, "%09u", rem);
        out.insert(0, buf);
    }
    if (sign_ < 0) out.insert(0, "-");
    return out;
}

double BigInt::to_double() const {
    if (is_zero()) return 0.0;
    // Top 96 bits as mantissa; rest as a power-of-two exponent.
    double m = 0.0;
    size_t n = limbs_.size();
    size_t take = std::min<size_t>(3, n);
    for (size_t i = 0; i < take; ++i) m = m * 4294967296.0 + limbs_[n - 1 - i];
    int exp = static_cast<int>(32 * (n - take));
    return sign_ * std::ldexp(m, exp);
}

// ---------------------------------------------------------------------------

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g == BigInt(1)) return;
    BigInt q, rem;
    bool neg = num_.sign() < 0;
    BigInt::divmod(num_, g, q, rem);
    num_ = neg ? -q : q;
    BigInt::divmod(den_, g, q, rem);
    den_ = q;
}

Rational Rational::from_decimal(std::string_view s) {
    size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -1;
        ++i;
    }
    std::string intpart, fracpart;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') intpart += s[i++];
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') fracpart += s[i++];
    }
    long long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        int esign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') esign = -1;
            ++i;
        }
        if (i == s.size()) throw std::invalid_argument("Rational: bad exponent");
        long long e = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') e = e * 10 + (s[i++] - '0');
        exp10 = esign * e;
    }
    if (i != s.size() || (intpart.empty() && fracpart.empty()))
        throw std::invalid_argument("Rational: bad decimal string");

    BigInt num = BigInt::from_decimal((intpart.empty() ? "0" : intpart) + fracpart);
    if (sign < 0) num = -num;
    long long scale = exp10 - static_cast<long long>(fracpart.size());
    BigInt den(1);
    BigInt ten(10);
    while (scale > 0) {
        num *= ten;
        --scale;
    }
    while (scale < 0) {
        den *= ten;
        ++scale;
    }
    return Rational(std::move(num), std::move(den));
}

Rational Rational::from_double(double v, int sig) {
    if (!std::isfinite(v)) throw std::invalid_argument("Rational: non-finite double");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", sig - 1, v);
    return from_decimal(buf);
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

std::string Rational::to_string() const {
    if (den_ == BigInt(1)) return num_.to_decimal();
    return num_.to_decimal() + "/" + den_.to_decimal();
}

double Rational::to_double() const { return num_.to_double() / den_.to_double(); }

}  // namespace chsh
