#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chsh {

/// Arbitrary-precision signed integer (sign + base-2^32 magnitude).
/// Supports exactly the operations the exact LP / vertex enumeration need:
/// ring arithmetic, comparisons, binary gcd, decimal conversion.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_decimal(std::string_view s);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }

    BigInt operator-() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    friend bool operator==(const BigInt& a, const BigInt& b);
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

    void shr1();                 // arithmetic shift right by one bit
    void shl_bits(unsigned k);   // shift left by k bits

    static BigInt gcd(const BigInt& a, const BigInt& b);

    /// Magnitude division: |a| = q * |b| + r with 0 <= r < |b|.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    std::string to_decimal() const;
    double to_double() const;

    /// Number of base-2^32 limbs (0 for zero); used for overflow-safe
    /// double conversion.
    size_t limb_count() const { return limbs_.size(); }

private:
    int sign_ = 0;
    std::vector<uint32_t> limbs_;  // little-endian, normalized (no high zeros)

    void trim();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    uint32_t divmod_small(uint32_t d);  // in-place quotient, returns remainder
    void mul_small_add(uint32_t m, uint32_t add);
};

/// Exact rational number; denominator kept positive, fraction reduced.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt num, BigInt den);

    /// Parses a plain decimal string such as "-0.125", "3", "2.5e-3".
    /// The conversion is exact digit-by-digit.
    static Rational from_decimal(std::string_view s);

    /// Formats v with `sig` significant decimal digits and converts that
    /// decimal exactly. Used when double-precision data enters the exact
    /// layer, so the rationalization is reproducible from the printed form.
    static Rational from_double(double v, int sig = 16);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// "p/q" (or "p" when q == 1); the interchange form for certificates.
    std::string to_string() const;
    double to_double() const;

private:
    BigInt num_, den_;
    void reduce();
};

}  // namespace chsh
