#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace metallic {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int isqrt(const Int& n) {
    assert(n >= 0);
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline int int_sign(const Int& n) { return mpz_sgn(n.get_mpz_t()); }

// Largest f with f^2 | n, found by trial division. n must be positive.
// Only runs at construction time; field operations never change the radicand.
inline Int square_part(Int& n) {
    Int f = 1;
    auto strip = [&](const Int& p) {
        Int p2 = p * p;
        while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) {
            n /= p2;
            f *= p;
        }
    };
    strip(2);
    strip(3);
    for (Int p = 5; p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    return f;
}

// Exact element (a + b*sqrt(D)) / d of a real quadratic field.
//
// Canonical form: d >= 1, gcd(a, b, d) = 1, D squarefree and non-square,
// and D == 0 exactly when b == 0 (rational values). Two values are equal
// iff their fields are equal. Rational values (D == 0) combine with values
// from any field; two irrational operands must share the same D.
class QuadExact {
public:
    QuadExact() : a_(0), b_(0), d_(1), rad_(0) {}
    QuadExact(long v) : a_(v), b_(0), d_(1), rad_(0) {}
    explicit QuadExact(Int v) : a_(std::move(v)), b_(0), d_(1), rad_(0) {}

    // (a + b*sqrt(radicand)) / d
    QuadExact(Int a, Int b, Int d, Int radicand)
        : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), rad_(std::move(radicand)) {
        normalize();
    }

    static QuadExact sqrt_of(Int radicand) { return QuadExact(0, 1, 1, std::move(radicand)); }
    static QuadExact rational(Int num, Int den) { return QuadExact(std::move(num), 0, std::move(den), 0); }
    static QuadExact rational(const Rat& q) { return QuadExact(q.get_num(), 0, q.get_den(), 0); }
    static QuadExact half() { return rational(1, 2); }

    const Int& rational_num() const { return a_; }
    const Int& radical_coeff() const { return b_; }
    const Int& denom() const { return d_; }
    const Int& radicand() const { return rad_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_integer() const { return b_ == 0 && d_ == 1; }

    Rat to_rational() const {
        if (!is_rational()) throw std::domain_error("QuadExact: irrational value has no rational form");
        Rat q(a_, d_);
        q.canonicalize();
        return q;
    }

    friend QuadExact operator-(const QuadExact& x) {
        return QuadExact(canonical_tag{}, -x.a_, -x.b_, x.d_, x.rad_);
    }

    friend QuadExact operator+(const QuadExact& x, const QuadExact& y) {
        Int rad = common_radicand(x, y);
        return QuadExact(x.a_ * y.d_ + y.a_ * x.d_, x.b_ * y.d_ + y.b_ * x.d_, x.d_ * y.d_, rad);
    }

    friend QuadExact operator-(const QuadExact& x, const QuadExact& y) { return x + (-y); }

    friend QuadExact operator*(const QuadExact& x, const QuadExact& y) {
        Int rad = common_radicand(x, y);
        return QuadExact(x.a_ * y.a_ + x.b_ * y.b_ * rad, x.a_ * y.b_ + x.b_ * y.a_, x.d_ * y.d_, rad);
    }

    friend QuadExact operator/(const QuadExact& x, const QuadExact& y) { return x * y.inverse(); }

    QuadExact& operator+=(const QuadExact& y) { return *this = *this + y; }
    QuadExact& operator-=(const QuadExact& y) { return *this = *this - y; }
    QuadExact& operator*=(const QuadExact& y) { return *this = *this * y; }
    QuadExact& operator/=(const QuadExact& y) { return *this = *this / y; }

    // 1/x via the conjugate: d*(a - b*sqrt(D)) / (a^2 - b^2 D).
    QuadExact inverse() const {
        Int norm = a_ * a_ - b_ * b_ * rad_;
        if (norm == 0) throw std::domain_error("QuadExact: division by zero");
        return QuadExact(a_ * d_, -b_ * d_, norm, rad_);
    }

    // Exact sign. Opposite-signed parts are decided by comparing a^2 with b^2*D
    // in integers; equality there would force D to be a square, which the
    // canonical form excludes.
    int sign() const {
        if (b_ == 0) return int_sign(a_);
        if (a_ == 0) return int_sign(b_);
        int sa = int_sign(a_), sb = int_sign(b_);
        if (sa == sb) return sa;
        int c = cmp(a_ * a_, b_ * b_ * rad_);
        assert(c != 0);
        return c > 0 ? sa : sb;
    }

    friend bool operator==(const QuadExact& x, const QuadExact& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_ && x.rad_ == y.rad_;
    }
    friend bool operator!=(const QuadExact& x, const QuadExact& y) { return !(x == y); }
    friend bool operator<(const QuadExact& x, const QuadExact& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadExact& x, const QuadExact& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const QuadExact& x, const QuadExact& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const QuadExact& x, const QuadExact& y) { return (x - y).sign() >= 0; }

    // Greatest integer t <= value. Seeds t from integer sqrt bounds, then
    // corrects with exact sign checks (at most two).
    Int floor() const {
        Int lo;
        if (b_ == 0) {
            lo = a_;
        } else {
            Int s = isqrt(b_ * b_ * rad_);
            lo = b_ > 0 ? Int(a_ + s) : Int(a_ - s - 1);
        }
        Int t;
        mpz_fdiv_q(t.get_mpz_t(), lo.get_mpz_t(), d_.get_mpz_t());
        // the seed is within one of the true floor, so each loop runs at most twice
        while ((*this - QuadExact(Int(t + 1))).sign() >= 0) ++t;
        while ((*this - QuadExact(t)).sign() < 0) --t;
        return t;
    }

    Int ceil() const { return -((-*this).floor()); }

    // Nearest-integer rounding with ties up: floor(x + 1/2).
    Int round_half() const { return (*this + half()).floor(); }

    QuadExact pow(unsigned long k) const {
        QuadExact acc(1), base = *this;
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    double to_double() const {
        mpf_class v(0, 128);
        if (b_ != 0) {
            mpf_class s(0, 128);
            mpf_sqrt(s.get_mpf_t(), mpf_class(rad_, 128).get_mpf_t());
            v = s * b_;
        }
        v += a_;
        v /= d_;
        return v.get_d();
    }

    std::string str() const {
        std::string s = "(" + a_.get_str();
        if (b_ != 0) {
            if (b_ > 0) s += "+";
            s += b_.get_str() + "*sqrt(" + rad_.get_str() + ")";
        }
        s += ")/" + d_.get_str();
        return s;
    }

private:
    struct canonical_tag {};
    QuadExact(canonical_tag, Int a, Int b, Int d, Int rad)
        : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), rad_(std::move(rad)) {}

    static Int common_radicand(const QuadExact& x, const QuadExact& y) {
        if (x.rad_ == 0) return y.rad_;
        if (y.rad_ == 0 || x.rad_ == y.rad_) return x.rad_;
        throw std::invalid_argument("QuadExact: operands live in different quadratic fields");
    }

    void normalize() {
        if (d_ == 0) throw std::domain_error("QuadExact: zero denominator");
        if (d_ < 0) {
            a_ = -a_;
            b_ = -b_;
            d_ = -d_;
        }
        if (b_ != 0) {
            if (rad_ <= 0) throw std::invalid_argument("QuadExact: radicand must be positive");
            Int f = square_part(rad_);
            b_ *= f;
            if (rad_ == 1) {
                a_ += b_;
                b_ = 0;
            }
        }
        if (b_ == 0) rad_ = 0;
        Int g = gcd(gcd(a_, b_), d_);
        if (g > 1) {
            a_ /= g;
            b_ /= g;
            d_ /= g;
        }
    }

    Int a_, b_, d_, rad_;
};

inline int sign(const QuadExact& x) { return x.sign(); }
inline Int floor(const QuadExact& x) { return x.floor(); }
inline Int ceil(const QuadExact& x) { return x.ceil(); }
inline Int round_half(const QuadExact& x) { return x.round_half(); }

}  // namespace metallic
