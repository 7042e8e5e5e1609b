#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "metallic/morphism.hpp"
#include "metallic/quadratic.hpp"

namespace metallic {

// Slope/intercept pair in a quadratic field. Keeping the parameters exact
// makes every floor below exact, so Beatty terms and Sturmian symbols carry
// no rounding error at all. Sequences are 1-indexed: term 1 first.
struct SturmianParams {
    QuadExact alpha;
    QuadExact beta;
};

// B(alpha, beta)_n = floor(n*alpha + beta)
inline Int beatty(const SturmianParams& p, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("beatty: n must be >= 1");
    return (p.alpha * QuadExact(Int(n)) + p.beta).floor();
}

// St(alpha, beta)_n = floor((n+1)*alpha + beta) - floor(n*alpha + beta),
// a {0,1} word when 0 <= alpha < 1.
inline int sturmian_symbol(const SturmianParams& p, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("sturmian_symbol: n must be >= 1");
    if (p.alpha.sign() < 0 || (p.alpha - QuadExact(1)).sign() >= 0)
        throw std::invalid_argument("sturmian_symbol: slope must satisfy 0 <= alpha < 1");
    Int lo = beatty(p, n);
    Int hi = (p.alpha * QuadExact(Int(n + 1)) + p.beta).floor();
    return static_cast<int>(Int(hi - lo).get_si());
}

// Streams St(alpha, beta)_1, St(alpha, beta)_2, ... reusing the previous
// floor, one exact floor per symbol.
class SturmianStream {
public:
    explicit SturmianStream(SturmianParams p) : p_(std::move(p)) {
        if (p_.alpha.sign() < 0 || (p_.alpha - QuadExact(1)).sign() >= 0)
            throw std::invalid_argument("SturmianStream: slope must satisfy 0 <= alpha < 1");
        prev_ = (p_.alpha + p_.beta).floor();
        n_ = 1;
    }

    int next() {
        Int cur = (p_.alpha * QuadExact(Int(n_ + 1)) + p_.beta).floor();
        int s = static_cast<int>(Int(cur - prev_).get_si());
        prev_ = cur;
        ++n_;
        return s;
    }

    std::int64_t index() const { return n_; }  // index of the next symbol

private:
    SturmianParams p_;
    Int prev_;
    std::int64_t n_ = 1;
};

// Smallest k >= 1 with k*alpha + beta an integer, if any. Decidable exactly:
// for irrational alpha the radical parts pin down a unique rational candidate
// for k, and rational parameters reduce to a bounded congruence search.
inline std::optional<std::int64_t> integral_translate(const QuadExact& alpha,
                                                      const QuadExact& beta) {
    if (!alpha.is_rational()) {
        // sqrt(D) and sqrt(D') are independent over Q for distinct radicands
        if (beta.radicand() != 0 && alpha.radicand() != beta.radicand()) return std::nullopt;
        // k * (b_a/d_a) + b_b/d_b = 0
        Rat ba(alpha.radical_coeff(), alpha.denom());
        Rat bb(beta.radical_coeff(), beta.denom());
        ba.canonicalize();
        bb.canonicalize();
        Rat k = -bb / ba;
        if (k <= 0 || k.get_den() != 1) return std::nullopt;
        Int kk = k.get_num();
        if (!kk.fits_slong_p()) return std::nullopt;
        QuadExact v = alpha * QuadExact(kk) + beta;
        if (v.is_integer()) return static_cast<std::int64_t>(kk.get_si());
        return std::nullopt;
    }
    if (!beta.is_rational()) return std::nullopt;
    Rat a = alpha.to_rational(), b = beta.to_rational();
    Int period = a.get_den() * b.get_den();
    if (!period.fits_slong_p()) return std::nullopt;
    for (std::int64_t k = 1; k <= period.get_si(); ++k) {
        Rat v = a * Rat(k) + b;
        v.canonicalize();
        if (v.get_den() == 1) return k;
    }
    return std::nullopt;
}

struct PositionMatchReport {
    bool ok = false;
    std::int64_t checked = 0;
    std::int64_t mismatch_index = 0;  // first k with B(alpha,beta)_k != position of k-th 1
    Int beatty_value;
    std::uint64_t position_value = 0;
};

// Checks, term by term, that B(alpha, beta) lists the positions of 1 in
// St(1/alpha, -beta/alpha). Preconditions (verified exactly, violations
// throw): alpha > 1 irrational, alpha + beta > 1, and k*alpha + beta never
// an integer for k >= 1.
inline PositionMatchReport ones_positions_match(const QuadExact& alpha, const QuadExact& beta,
                                                std::int64_t n_max) {
    if (alpha.is_rational())
        throw std::invalid_argument("ones_positions_match: alpha must be irrational");
    if ((alpha - QuadExact(1)).sign() <= 0)
        throw std::invalid_argument("ones_positions_match: alpha must exceed 1");
    if ((alpha + beta - QuadExact(1)).sign() <= 0)
        throw std::invalid_argument("ones_positions_match: alpha + beta must exceed 1");
    if (auto k = integral_translate(alpha, beta))
        throw std::invalid_argument("ones_positions_match: k*alpha + beta is an integer for k = " +
                                    std::to_string(*k));

    SturmianStream st({QuadExact(1) / alpha, -beta / alpha});
    PositionMatchReport rep;
    std::uint64_t pos = 0;
    for (std::int64_t k = 1; k <= n_max; ++k) {
        for (;;) {
            int s = st.next();
            ++pos;
            if (s == 1) break;
        }
        Int b = beatty({alpha, beta}, k);
        if (b != Int(static_cast<long>(pos))) {
            rep.ok = false;
            rep.checked = k;
            rep.mismatch_index = k;
            rep.beatty_value = b;
            rep.position_value = pos;
            return rep;
        }
    }
    rep.ok = true;
    rep.checked = n_max;
    return rep;
}

// Elementary Sturmian morphisms (generators of the Sturmian monoid).
inline Morphism elementary_psi1() { return Morphism("01", "0"); }
inline Morphism elementary_psi2() { return Morphism("10", "0"); }

using ParamPair = std::pair<QuadExact, QuadExact>;

// Parameter transport of the exchange morphism and of psi1, psi2 on
// Sturmian words indexed from 0.
inline ParamPair param_T0(const QuadExact& x, const QuadExact& y) {
    return {QuadExact(1) - x, QuadExact(1) - y};
}

inline ParamPair param_T1(const QuadExact& x, const QuadExact& y) {
    QuadExact den = QuadExact(2) - x;
    return {(QuadExact(1) - x) / den, (QuadExact(1) - y) / den};
}

inline ParamPair param_T2(const QuadExact& x, const QuadExact& y) {
    QuadExact den = QuadExact(2) - x;
    return {(QuadExact(1) - x) / den, (QuadExact(2) - x - y) / den};
}

// T2 T1 T0, the parameter change of one full substitution step.
inline ParamPair param_T210(const QuadExact& x, const QuadExact& y) {
    auto [u0, v0] = param_T0(x, y);
    auto [u1, v1] = param_T1(u0, v0);
    return param_T2(u1, v1);
}

// The fixed point of T210: x solves x = 1/(2+x), i.e. x^2 + 2x - 1 = 0 with
// x > 0, and then y = (2+x)/(3+x). Solved exactly by the quadratic formula.
inline ParamPair t210_fixed_point() {
    QuadExact x = (QuadExact(-2) + QuadExact::sqrt_of(8)) / QuadExact(2);
    QuadExact y = (QuadExact(2) + x) / (QuadExact(3) + x);
    return {x, y};
}

// Re-indexing a Sturmian word from n = 0 to n = 1 subtracts the slope from
// the intercept.
inline ParamPair shift_origin(const ParamPair& p) { return {p.first, p.second - p.first}; }

}  // namespace metallic
