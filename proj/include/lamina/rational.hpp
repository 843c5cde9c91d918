#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lamina {

// Exact rational on int64 with __int128 intermediates. Throws std::overflow_error
// if a reduced result no longer fits; the workloads here stay far below that.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        assign(n, d);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return fromWide(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return fromWide(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return fromWide((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return fromWide((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // floor as integer
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    // value - floor(value), in [0,1)
    Rational frac() const { return *this - Rational(floor()); }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
    Rational abs() const { return num_ < 0 ? -*this : *this; }

    double toDouble() const { return double(num_) / double(den_); }

    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // parses "p/q" or "p"
    static Rational parse(std::string_view s);

private:
    std::int64_t num_, den_;

    void assign(std::int64_t n, std::int64_t d) {
        if (d < 0) { n = -n; d = -d; }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n; den_ = d;
    }
    static Rational fromWide(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: 64-bit overflow");
        Rational r;
        r.num_ = (std::int64_t)n;
        r.den_ = (std::int64_t)d;
        return r;
    }
};

inline Rational Rational::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(std::stoll(std::string(s)));
    std::int64_t n = std::stoll(std::string(s.substr(0, slash)));
    std::int64_t d = std::stoll(std::string(s.substr(slash + 1)));
    return Rational(n, d);
}

// A point of the circle R/Z: exact rational reduced to [0,1).
class Angle {
public:
    Angle() : v_() {}
    explicit Angle(const Rational& r) : v_(r.frac()) {}
    Angle(std::int64_t n, std::int64_t d) : v_(Rational(n, d).frac()) {}

    const Rational& value() const { return v_; }

    friend bool operator==(const Angle& a, const Angle& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Angle& a, const Angle& b) { return !(a == b); }
    friend bool operator<(const Angle& a, const Angle& b) { return a.v_ < b.v_; }
    friend bool operator>(const Angle& a, const Angle& b) { return b < a; }
    friend bool operator<=(const Angle& a, const Angle& b) { return !(b < a); }
    friend bool operator>=(const Angle& a, const Angle& b) { return !(a < b); }

    Angle plus(const Rational& r) const { return Angle(v_ + r); }
    Angle times(std::int64_t k) const { return Angle(v_ * Rational(k)); }

    // counterclockwise distance from *this to b, in [0,1)
    Rational ccwTo(const Angle& b) const { return (b.v_ - v_).frac(); }

    // shorter circular distance to b, in [0,1/2]
    Rational circularDistance(const Angle& b) const {
        Rational d = ccwTo(b);
        Rational e = Rational(1) - d;
        return d < e ? d : e;
    }

    // true iff *this lies strictly inside the open ccw arc (a, b)
    bool strictlyInside(const Angle& a, const Angle& b) const {
        Rational arc = a.ccwTo(b);
        Rational pos = a.ccwTo(*this);
        return Rational(0) < pos && pos < arc;
    }

    double toDouble() const { return v_.toDouble(); }
    std::string str() const { return v_.str(); }
    static Angle parse(std::string_view s) { return Angle(Rational::parse(s)); }

private:
    Rational v_;
};

}  // namespace lamina
