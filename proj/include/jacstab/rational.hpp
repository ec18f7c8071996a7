#pragma once
// Exact rational arithmetic on 64-bit numerator/denominator plus checked
// integer helpers. Every product and sum runs through 128 bits; anything that
// does not fit back into 64 bits throws instead of wrapping.

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jacstab {

struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline long long narrow(__int128 v, const char* ctx) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw OverflowError(std::string("integer overflow in ") + ctx);
    return static_cast<long long>(v);
}

} // namespace detail

inline long long checked_add(long long a, long long b) {
    return detail::narrow(static_cast<__int128>(a) + b, "addition");
}

inline long long checked_sub(long long a, long long b) {
    return detail::narrow(static_cast<__int128>(a) - b, "subtraction");
}

inline long long checked_mul(long long a, long long b) {
    return detail::narrow(static_cast<__int128>(a) * b, "multiplication");
}

// Reduced fraction, denominator always positive.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {} // NOLINT: implicit on purpose, integers embed
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    // Integer value; caller must know den() == 1.
    long long as_integer() const {
        if (den_ != 1) throw std::logic_error("rational " + to_string() + " is not an integer");
        return num_;
    }

    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    long long ceil() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    Rational abs() const { return num_ < 0 ? Rational(checked_mul(num_, -1), den_) : *this; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(checked_mul(num_, -1), den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Canonical rendering: "p" when integral, "p/q" otherwise.
    std::string to_string() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    // Accepts the canonical rendering back.
    static Rational parse(const std::string& text);

private:
    static Rational make(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = detail::narrow(n, "rational numerator");
        r.den_ = detail::narrow(d, "rational denominator");
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = checked_mul(num_, -1); den_ = checked_mul(den_, -1); }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_ = 0;
    long long den_ = 1;
};

inline Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    size_t slash = text.find('/');
    try {
        size_t used = 0;
        long long n = std::stoll(text.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? text.size() : slash))
            throw std::invalid_argument("trailing characters");
        if (slash == std::string::npos) return Rational(n);
        long long d = std::stoll(text.substr(slash + 1), &used);
        if (used != text.size() - slash - 1) throw std::invalid_argument("trailing characters");
        return Rational(n, d);
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    }
}

inline long long checked_lcm(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    long long g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
    return checked_mul(a / g, b);
}

} // namespace jacstab
