#pragma once

// Exact rational arithmetic on 64-bit numerator/denominator.
//
// All chart geometry in this project is rational with small magnitudes
// (coordinates are dyadic fractions in [-1,1], intersection points of
// chords between such coordinates).  Intermediate products are taken in
// 128-bit integers; results are reduced and must fit back into 64 bits,
// otherwise we abort with an overflow error.  This keeps every geometric
// predicate exact and deterministic.

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace knotfactor {

class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    Rational operator+(const Rational& o) const {
        return from_i128(i128(num_) * o.den_ + i128(o.num_) * den_,
                         i128(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return from_i128(i128(num_) * o.den_ - i128(o.num_) * den_,
                         i128(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return from_i128(i128(num_) * o.num_, i128(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return from_i128(i128(num_) * o.den_, i128(den_) * o.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    // Exact comparison by cross multiplication in 128 bits.
    int compare(const Rational& o) const {
        __int128 l = i128(num_) * o.den_;
        __int128 r = i128(o.num_) * den_;
        if (l < r) return -1;
        if (l > r) return 1;
        return 0;
    }
    bool operator==(const Rational& o) const { return compare(o) == 0; }
    bool operator!=(const Rational& o) const { return compare(o) != 0; }
    bool operator<(const Rational& o) const { return compare(o) < 0; }
    bool operator<=(const Rational& o) const { return compare(o) <= 0; }
    bool operator>(const Rational& o) const { return compare(o) > 0; }
    bool operator>=(const Rational& o) const { return compare(o) >= 0; }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    static __int128 i128(long long v) { return static_cast<__int128>(v); }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void reduce() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

// Planar point with rational coordinates.
struct Vec2 {
    Rational x;
    Rational y;

    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
};

// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right turn,
// 0 collinear.  Exact.
inline int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    Rational v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return v.sign();
}

// True when c lies on the closed segment [a,b].
inline bool on_segment(const Vec2& a, const Vec2& b, const Vec2& c) {
    if (orient(a, b, c) != 0) return false;
    Rational lox = a.x < b.x ? a.x : b.x, hix = a.x < b.x ? b.x : a.x;
    Rational loy = a.y < b.y ? a.y : b.y, hiy = a.y < b.y ? b.y : a.y;
    return lox <= c.x && c.x <= hix && loy <= c.y && c.y <= hiy;
}

// Segment intersection test for open segments in general position
// handling: returns true when the open segments (a,b) and (c,d) meet in
// exactly one interior point (proper crossing), and also when they touch
// at an interior point of one segment being an endpoint of the other.
// Collinear overlap counts as a violation of general position and is
// reported through the out-parameter so callers can reject arrangements.
inline bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c,
                           const Vec2& d, bool* degenerate = nullptr) {
    if (degenerate) *degenerate = false;
    int o1 = orient(a, b, c);
    int o2 = orient(a, b, d);
    int o3 = orient(c, d, a);
    int o4 = orient(c, d, b);
    if (o1 == 0 && o2 == 0) {
        // collinear configuration: overlap is degenerate
        if (degenerate &&
            (on_segment(a, b, c) || on_segment(a, b, d) ||
             on_segment(c, d, a) || on_segment(c, d, b)))
            *degenerate = true;
        return false;
    }
    return o1 * o2 < 0 && o3 * o4 < 0;
}

// Intersection point of two properly crossing segments.
inline Vec2 cross_point(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d) {
    // solve a + t(b-a) = c + s(d-c)
    Rational dx1 = b.x - a.x, dy1 = b.y - a.y;
    Rational dx2 = d.x - c.x, dy2 = d.y - c.y;
    Rational denom = dx1 * dy2 - dy1 * dx2;
    Rational t = ((c.x - a.x) * dy2 - (c.y - a.y) * dx2) / denom;
    return Vec2{a.x + t * dx1, a.y + t * dy1};
}

}  // namespace knotfactor
