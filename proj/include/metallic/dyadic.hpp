#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "metallic/quadratic.hpp"

namespace metallic {

// Dyadic rational m * 2^e, normalized so m is odd (or zero with e = 0).
// Arithmetic here is exact; rounding to a working precision is explicit
// via round_down / round_up and the directed division and square root.
struct Dyadic {
    Int m;
    long e = 0;

    Dyadic() : m(0) {}
    Dyadic(long v) : m(v) { normalize(); }
    Dyadic(Int mantissa, long exponent) : m(std::move(mantissa)), e(exponent) { normalize(); }
    explicit Dyadic(Int v) : m(std::move(v)) { normalize(); }

    void normalize() {
        if (m == 0) {
            e = 0;
            return;
        }
        auto tz = mpz_scan1(m.get_mpz_t(), 0);
        if (tz > 0) {
            mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), tz);
            e += static_cast<long>(tz);
        }
    }

    bool is_zero() const { return m == 0; }
    int sign() const { return int_sign(m); }

    // significant bits of the mantissa
    size_t bits() const { return m == 0 ? 0 : mpz_sizeinbase(m.get_mpz_t(), 2); }

    friend Dyadic operator-(const Dyadic& x) { return Dyadic(-x.m, x.e); }

    friend Dyadic operator+(const Dyadic& x, const Dyadic& y) {
        if (x.m == 0) return y;
        if (y.m == 0) return x;
        long e = std::min(x.e, y.e);
        Int mx = x.m, my = y.m;
        mpz_mul_2exp(mx.get_mpz_t(), mx.get_mpz_t(), static_cast<unsigned long>(x.e - e));
        mpz_mul_2exp(my.get_mpz_t(), my.get_mpz_t(), static_cast<unsigned long>(y.e - e));
        return Dyadic(mx + my, e);
    }

    friend Dyadic operator-(const Dyadic& x, const Dyadic& y) { return x + (-y); }

    friend Dyadic operator*(const Dyadic& x, const Dyadic& y) {
        return Dyadic(x.m * y.m, x.e + y.e);
    }

    friend int cmp(const Dyadic& x, const Dyadic& y) {
        int sx = x.sign(), sy = y.sign();
        if (sx != sy) return sx < sy ? -1 : 1;
        return (x - y).sign();
    }

    friend bool operator==(const Dyadic& x, const Dyadic& y) { return x.m == y.m && x.e == y.e; }
    friend bool operator!=(const Dyadic& x, const Dyadic& y) { return !(x == y); }
    friend bool operator<(const Dyadic& x, const Dyadic& y) { return cmp(x, y) < 0; }
    friend bool operator>(const Dyadic& x, const Dyadic& y) { return cmp(x, y) > 0; }
    friend bool operator<=(const Dyadic& x, const Dyadic& y) { return cmp(x, y) <= 0; }
    friend bool operator>=(const Dyadic& x, const Dyadic& y) { return cmp(x, y) >= 0; }

    Int floor() const {
        Int r;
        if (e >= 0) {
            mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(e));
        } else {
            mpz_fdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(-e));
        }
        return r;
    }

    Rat to_rational() const {
        Rat q;
        if (e >= 0) {
            Int n;
            mpz_mul_2exp(n.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(e));
            q = Rat(n);
        } else {
            Int den(1);
            mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-e));
            q = Rat(m, den);
        }
        q.canonicalize();
        return q;
    }

    QuadExact to_quad() const { return QuadExact::rational(to_rational()); }

    double to_double() const { return mpf_class(to_rational(), 128).get_d(); }

    std::string str() const { return m.get_str() + "*2^" + std::to_string(e); }
};

// value <= x, at most prec significant bits
inline Dyadic round_down(const Dyadic& x, int prec) {
    size_t b = x.bits();
    if (b <= static_cast<size_t>(prec)) return x;
    unsigned long shift = static_cast<unsigned long>(b - prec);
    Int q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), x.m.get_mpz_t(), shift);
    return Dyadic(q, x.e + static_cast<long>(shift));
}

// value >= x, at most prec significant bits
inline Dyadic round_up(const Dyadic& x, int prec) {
    size_t b = x.bits();
    if (b <= static_cast<size_t>(prec)) return x;
    unsigned long shift = static_cast<unsigned long>(b - prec);
    Int q;
    mpz_cdiv_q_2exp(q.get_mpz_t(), x.m.get_mpz_t(), shift);
    return Dyadic(q, x.e + static_cast<long>(shift));
}

namespace detail {

inline Dyadic div_dir(const Dyadic& x, const Dyadic& y, int prec, bool up) {
    if (y.m == 0) throw std::domain_error("Dyadic: division by zero");
    if (x.m == 0) return Dyadic();
    long shift = static_cast<long>(y.bits()) - static_cast<long>(x.bits()) + prec + 2;
    if (shift < 0) shift = 0;
    Int num = x.m;
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(shift));
    Int q;
    if (up) {
        mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), y.m.get_mpz_t());
    } else {
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), y.m.get_mpz_t());
    }
    Dyadic r(q, x.e - y.e - shift);
    return up ? round_up(r, prec) : round_down(r, prec);
}

}  // namespace detail

inline Dyadic div_down(const Dyadic& x, const Dyadic& y, int prec) {
    return detail::div_dir(x, y, prec, false);
}
inline Dyadic div_up(const Dyadic& x, const Dyadic& y, int prec) {
    return detail::div_dir(x, y, prec, true);
}

// Directed enclosure of sqrt(n) for integer n >= 0 from integer square roots
// of 4^s * n: r <= sqrt(4^s n) < r+1 gives sqrt(n) in [r, r+1] * 2^-s.
inline std::pair<Dyadic, Dyadic> sqrt_enclosure(const Int& n, int prec) {
    if (n < 0) throw std::domain_error("Dyadic: sqrt of negative integer");
    if (n == 0) return {Dyadic(), Dyadic()};
    unsigned long s = static_cast<unsigned long>(prec) + 2;
    Int scaled = n;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * s);
    Int r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t());
    Dyadic lo(r, -static_cast<long>(s));
    if (rem == 0) return {round_down(lo, prec), round_up(lo, prec)};
    Dyadic hi(r + 1, -static_cast<long>(s));
    return {round_down(lo, prec), round_up(hi, prec)};
}

inline Dyadic sqrt_down(const Int& n, int prec) { return sqrt_enclosure(n, prec).first; }
inline Dyadic sqrt_up(const Int& n, int prec) { return sqrt_enclosure(n, prec).second; }

// Certified enclosure [lo, hi] with endpoints rounded outward to `prec`
// significant bits. Every operation returns an interval containing all
// x o y with x, y drawn from the operands.
class DyadicInterval {
public:
    DyadicInterval() : prec_(64) {}

    DyadicInterval(Dyadic lo, Dyadic hi, int prec)
        : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec) {
        if (prec_ < 2) throw std::invalid_argument("DyadicInterval: precision too small");
        if (cmp(lo_, hi_) > 0) throw std::invalid_argument("DyadicInterval: lo > hi");
    }

    static DyadicInterval point(Dyadic v, int prec) { return DyadicInterval(v, v, prec); }
    static DyadicInterval point(const Int& v, int prec) {
        return DyadicInterval(Dyadic(v), Dyadic(v), prec);
    }

    static DyadicInterval hull(const DyadicInterval& x, const DyadicInterval& y) {
        return DyadicInterval(std::min(x.lo_, y.lo_), std::max(x.hi_, y.hi_),
                              std::max(x.prec_, y.prec_));
    }

    // Enclosure of an exact quadratic-field value; width <= 2^(1-prec) * |x|.
    static DyadicInterval from_quad(const QuadExact& x, int prec) {
        int wprec = prec + 8;
        DyadicInterval num = point(x.rational_num(), wprec);
        if (x.radical_coeff() != 0) {
            auto [slo, shi] = sqrt_enclosure(x.radicand(), wprec);
            DyadicInterval root(slo, shi, wprec);
            num = num + point(x.radical_coeff(), wprec) * root;
        }
        DyadicInterval r = num / point(x.denom(), wprec);
        return DyadicInterval(round_down(r.lo_, prec), round_up(r.hi_, prec), prec);
    }

    const Dyadic& lo() const { return lo_; }
    const Dyadic& hi() const { return hi_; }
    int prec() const { return prec_; }
    Dyadic width() const { return hi_ - lo_; }
    Dyadic midpoint() const { return Dyadic((lo_ + hi_).m, (lo_ + hi_).e - 1); }

    bool contains(const Dyadic& v) const { return cmp(lo_, v) <= 0 && cmp(v, hi_) <= 0; }
    bool contains(const Rat& v) const {
        return lo_.to_rational() <= v && v <= hi_.to_rational();
    }
    // exact comparison against a quadratic-field value
    bool contains(const QuadExact& v) const {
        return (v - lo_.to_quad()).sign() >= 0 && (hi_.to_quad() - v).sign() >= 0;
    }
    bool strictly_contains(const QuadExact& v) const {
        return (v - lo_.to_quad()).sign() > 0 && (hi_.to_quad() - v).sign() > 0;
    }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

    friend DyadicInterval operator+(const DyadicInterval& x, const DyadicInterval& y) {
        int p = std::max(x.prec_, y.prec_);
        return DyadicInterval(round_down(x.lo_ + y.lo_, p), round_up(x.hi_ + y.hi_, p), p);
    }

    friend DyadicInterval operator-(const DyadicInterval& x, const DyadicInterval& y) {
        int p = std::max(x.prec_, y.prec_);
        return DyadicInterval(round_down(x.lo_ - y.hi_, p), round_up(x.hi_ - y.lo_, p), p);
    }

    friend DyadicInterval operator-(const DyadicInterval& x) {
        return DyadicInterval(-x.hi_, -x.lo_, x.prec_);
    }

    friend DyadicInterval operator*(const DyadicInterval& x, const DyadicInterval& y) {
        int p = std::max(x.prec_, y.prec_);
        Dyadic c[4] = {x.lo_ * y.lo_, x.lo_ * y.hi_, x.hi_ * y.lo_, x.hi_ * y.hi_};
        Dyadic lo = c[0], hi = c[0];
        for (int i = 1; i < 4; ++i) {
            if (cmp(c[i], lo) < 0) lo = c[i];
            if (cmp(c[i], hi) > 0) hi = c[i];
        }
        return DyadicInterval(round_down(lo, p), round_up(hi, p), p);
    }

    friend DyadicInterval operator/(const DyadicInterval& x, const DyadicInterval& y) {
        int p = std::max(x.prec_, y.prec_);
        if (y.contains_zero()) throw std::domain_error("DyadicInterval: divisor contains zero");
        const Dyadic* xs[2] = {&x.lo_, &x.hi_};
        const Dyadic* ys[2] = {&y.lo_, &y.hi_};
        bool first = true;
        Dyadic lo, hi;
        for (auto* a : xs) {
            for (auto* b : ys) {
                Dyadic d = div_down(*a, *b, p);
                Dyadic u = div_up(*a, *b, p);
                if (first) {
                    lo = d;
                    hi = u;
                    first = false;
                } else {
                    if (cmp(d, lo) < 0) lo = d;
                    if (cmp(u, hi) > 0) hi = u;
                }
            }
        }
        return DyadicInterval(lo, hi, p);
    }

    // The common value of floor(t + 1/2) over the interval, if it is unique.
    // An empty result means the enclosure straddles a half-integer and the
    // caller has to refine.
    std::optional<Int> unique_round_half() const {
        Dyadic half(Int(1), -1);
        Int f = (lo_ + half).floor();
        Int g = (hi_ + half).floor();
        if (f == g) return f;
        return std::nullopt;
    }

    std::optional<Int> unique_floor() const {
        Int f = lo_.floor();
        Int g = hi_.floor();
        if (f == g) return f;
        return std::nullopt;
    }

    std::string str() const {
        return "[" + std::to_string(lo_.to_double()) + ", " + std::to_string(hi_.to_double()) + "]";
    }

private:
    Dyadic lo_, hi_;
    int prec_;
};

// sign of (x - q), decided exactly
inline int cmp(const Dyadic& x, const QuadExact& q) { return (x.to_quad() - q).sign(); }

}  // namespace metallic
