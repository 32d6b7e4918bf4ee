#pragma once

// Laurent polynomials with 64-bit integer coefficients, used for the
// Kauffman bracket (variable A) and the Jones polynomial (variable t).
// Coefficients stay tiny at the diagram sizes this project handles, but
// additions and multiplications are overflow-checked anyway.

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace knotfactor {

class Laurent {
  public:
    Laurent() = default;
    explicit Laurent(long long constant) {
        if (constant != 0) coeff_[0] = constant;
    }

    static Laurent monomial(int exponent, long long coefficient = 1) {
        Laurent p;
        if (coefficient != 0) p.coeff_[exponent] = coefficient;
        return p;
    }

    bool is_zero() const { return coeff_.empty(); }

    long long coefficient(int exponent) const {
        auto it = coeff_.find(exponent);
        return it == coeff_.end() ? 0 : it->second;
    }

    const std::map<int, long long>& terms() const { return coeff_; }

    int min_exponent() const {
        if (coeff_.empty()) throw std::domain_error("zero polynomial");
        return coeff_.begin()->first;
    }
    int max_exponent() const {
        if (coeff_.empty()) throw std::domain_error("zero polynomial");
        return coeff_.rbegin()->first;
    }

    Laurent operator+(const Laurent& o) const {
        Laurent r = *this;
        for (const auto& [e, c] : o.coeff_) r.add_term(e, c);
        return r;
    }
    Laurent operator-(const Laurent& o) const {
        Laurent r = *this;
        for (const auto& [e, c] : o.coeff_) r.add_term(e, checked_neg(c));
        return r;
    }
    Laurent operator*(const Laurent& o) const {
        Laurent r;
        for (const auto& [e1, c1] : coeff_)
            for (const auto& [e2, c2] : o.coeff_)
                r.add_term(e1 + e2, checked_mul(c1, c2));
        return r;
    }
    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    bool operator==(const Laurent& o) const { return coeff_ == o.coeff_; }
    bool operator!=(const Laurent& o) const { return coeff_ != o.coeff_; }

    // Substitute the variable by its inverse (x -> x^-1).
    Laurent invert_variable() const {
        Laurent r;
        for (const auto& [e, c] : coeff_) r.coeff_[-e] = c;
        return r;
    }

    // Exact division, throwing if the divisor does not divide evenly.
    // An exact quotient has no exponent below min(this) - min(divisor),
    // which bounds the long division and guarantees termination on
    // inexact input.
    Laurent divide_exact(const Laurent& divisor) const {
        if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
        if (is_zero()) return Laurent();
        int quot_floor = min_exponent() - divisor.min_exponent();
        Laurent rem = *this;
        Laurent quot;
        while (!rem.is_zero()) {
            int e = rem.max_exponent() - divisor.max_exponent();
            if (e < quot_floor)
                throw std::domain_error("inexact polynomial division");
            long long lead = rem.coeff_.rbegin()->second;
            long long dlead = divisor.coeff_.rbegin()->second;
            if (lead % dlead != 0)
                throw std::domain_error("inexact polynomial division");
            long long q = lead / dlead;
            quot.add_term(e, q);
            rem = rem - divisor * monomial(e, q);
        }
        return quot;
    }

    // Render with an explicit variable name, lowest exponent first,
    // e.g. "-t^-4 + t^-3 + t^-1".
    std::string str(const std::string& var = "t") const {
        if (coeff_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : coeff_) {
            long long a = c;
            if (first) {
                if (a < 0) { out += "-"; a = -a; }
            } else {
                out += a < 0 ? " - " : " + ";
                if (a < 0) a = -a;
            }
            first = false;
            if (e == 0) {
                out += std::to_string(a);
            } else {
                if (a != 1) out += std::to_string(a) + "*";
                out += var;
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

  private:
    static long long checked_add(long long a, long long b) {
        long long r;
        if (__builtin_add_overflow(a, b, &r))
            throw std::overflow_error("laurent coefficient overflow");
        return r;
    }
    static long long checked_mul(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r))
            throw std::overflow_error("laurent coefficient overflow");
        return r;
    }
    static long long checked_neg(long long a) {
        if (a == INT64_MIN) throw std::overflow_error("laurent coefficient overflow");
        return -a;
    }

    void add_term(int exponent, long long coefficient) {
        if (coefficient == 0) return;
        auto it = coeff_.find(exponent);
        if (it == coeff_.end()) {
            coeff_[exponent] = coefficient;
        } else {
            it->second = checked_add(it->second, coefficient);
            if (it->second == 0) coeff_.erase(it);
        }
    }

    std::map<int, long long> coeff_;
};

inline std::ostream& operator<<(std::ostream& os, const Laurent& p) {
    return os << p.str();
}

}  // namespace knotfactor
