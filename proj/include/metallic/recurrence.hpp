#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "metallic/dyadic.hpp"
#include "metallic/quadratic.hpp"

namespace metallic {

// Parameters of the family r_n = h*n - 1 + n^2 / r_{n+1} for integer h >= 1.
// alpha is the metallic ratio (h + sqrt(h^2+4))/2, the positive root of
// x^2 = h*x + 1; c = (1+alpha)/(2*alpha-h); bound_const = (alpha-c)(c-1)
// bounds the window 0 < r_n - alpha*n + c < bound_const/(alpha*n).
struct RecurrenceConfig {
    std::int64_t h;
    Int radicand;  // h^2 + 4
    QuadExact alpha;
    QuadExact c;
    QuadExact bound_const;

    explicit RecurrenceConfig(std::int64_t h_) : h(h_) {
        if (h < 1) throw std::invalid_argument("RecurrenceConfig: h must be a positive integer");
        radicand = Int(h) * Int(h) + 4;
        alpha = (QuadExact(Int(h)) + QuadExact::sqrt_of(radicand)) / QuadExact(2);
        c = (QuadExact(1) + alpha) / (QuadExact(2) * alpha - QuadExact(Int(h)));
        bound_const = (alpha - c) * (c - QuadExact(1));
        // defining identities; cheap to verify once per config
        if (alpha * alpha != QuadExact(Int(h)) * alpha + QuadExact(1))
            throw std::logic_error("RecurrenceConfig: alpha identity failed");
        if ((c - QuadExact(1)).sign() <= 0 || (alpha - c - (c - QuadExact(1))).sign() <= 0)
            throw std::logic_error("RecurrenceConfig: window ordering failed");
    }
};

struct Convergent {
    int k;  // index, starting at -1
    Int p;
    Int q;
};

// Convergents p_k/q_k of the continued fraction [h; h, h, ...] of alpha:
// q_{-1} = 0, q_0 = 1, q_{k+1} = h q_k + q_{k-1}, and p_k = q_{k+1}.
inline std::vector<Convergent> convergents(const RecurrenceConfig& cfg, int k_max) {
    if (k_max < 0) throw std::invalid_argument("convergents: k_max must be >= 0");
    std::vector<Int> q;
    q.reserve(static_cast<size_t>(k_max) + 3);
    q.push_back(0);  // q_{-1}
    q.push_back(1);  // q_0
    for (int k = 0; k <= k_max + 1; ++k) q.push_back(Int(cfg.h) * q[q.size() - 1] + q[q.size() - 2]);
    std::vector<Convergent> out;
    out.reserve(static_cast<size_t>(k_max) + 2);
    for (int k = -1; k <= k_max; ++k)
        out.push_back({k, q[static_cast<size_t>(k + 2)], q[static_cast<size_t>(k + 1)]});
    return out;
}

// Certified enclosure of r_n, seeded at a tail index by the proven window
// [alpha*N - c, alpha*N - c + bound_const/(alpha*N)] and pulled back through
// f_k(x) = h*k - 1 + k^2/x in interval arithmetic. The backward direction is
// the whole point: each step contracts by roughly alpha^2, whereas forward
// evaluation amplifies by the same factor.
inline DyadicInterval r_enclosure(const RecurrenceConfig& cfg, std::int64_t n,
                                  std::int64_t tail_index, int prec) {
    if (n < 1 || tail_index < n)
        throw std::invalid_argument("r_enclosure: need tail_index >= n >= 1");
    QuadExact alpha_tail = cfg.alpha * QuadExact(Int(tail_index));
    QuadExact seed_lo = alpha_tail - cfg.c;
    QuadExact seed_hi = seed_lo + cfg.bound_const / alpha_tail;
    DyadicInterval enc = DyadicInterval::hull(DyadicInterval::from_quad(seed_lo, prec),
                                              DyadicInterval::from_quad(seed_hi, prec));
    for (std::int64_t k = tail_index - 1; k >= n; --k) {
        Int kk(k);
        enc = DyadicInterval::point(Int(Int(cfg.h) * kk - 1), prec) +
              DyadicInterval::point(Int(kk * kk), prec) / enc;
    }
    return enc;
}

struct RefineSchedule {
    std::int64_t initial_overshoot = 16;  // tail_index - n on the first attempt
    int initial_prec = 64;
    std::int64_t max_overshoot = 1 << 16;
};

enum class RoundMode { NearestHalfUp, Floor };

// Rounds r_n with a certified enclosure, doubling the backward overshoot and
// the working precision until the rounding is unambiguous. Empty result means
// the refinement cap was hit without a decision.
inline std::optional<Int> certified_round(const RecurrenceConfig& cfg, std::int64_t n,
                                          RoundMode mode, const RefineSchedule& sched = {}) {
    std::int64_t overshoot = sched.initial_overshoot;
    int prec = sched.initial_prec;
    for (;;) {
        try {
            DyadicInterval enc = r_enclosure(cfg, n, n + overshoot, prec);
            auto v = mode == RoundMode::NearestHalfUp ? enc.unique_round_half() : enc.unique_floor();
            if (v) return v;
        } catch (const std::domain_error&) {
            // enclosure crossed zero at this precision; refine and retry
        }
        if (overshoot >= sched.max_overshoot) return std::nullopt;
        overshoot = std::min(overshoot * 2, sched.max_overshoot);
        prec *= 2;
    }
}

struct RefinementCapExceeded : std::runtime_error {
    std::int64_t n;
    explicit RefinementCapExceeded(std::int64_t h, std::int64_t n_)
        : std::runtime_error("rounding of r_" + std::to_string(n_) + " (h = " + std::to_string(h) +
                             ") undecided at the refinement cap"),
          n(n_) {}
};

// e_n = floor(r_n + 1/2), certified.
inline Int e_term(const RecurrenceConfig& cfg, std::int64_t n, const RefineSchedule& sched = {}) {
    if (n < 1) throw std::invalid_argument("e_term: n must be >= 1");
    auto v = certified_round(cfg, n, RoundMode::NearestHalfUp, sched);
    if (!v) throw RefinementCapExceeded(cfg.h, n);
    return *v;
}

namespace detail {

// One backward pass over a block of indices: visit(k, enclosure of r_k) for
// k = hi down to lo. Far cheaper than independent per-index evaluation when
// a whole range is needed.
template <typename Visitor>
void backward_sweep(const RecurrenceConfig& cfg, std::int64_t lo, std::int64_t hi,
                    std::int64_t overshoot, int prec, Visitor&& visit) {
    std::int64_t tail = hi + overshoot;
    QuadExact alpha_tail = cfg.alpha * QuadExact(Int(tail));
    QuadExact seed_lo = alpha_tail - cfg.c;
    QuadExact seed_hi = seed_lo + cfg.bound_const / alpha_tail;
    DyadicInterval enc = DyadicInterval::hull(DyadicInterval::from_quad(seed_lo, prec),
                                              DyadicInterval::from_quad(seed_hi, prec));
    for (std::int64_t k = tail - 1; k >= lo; --k) {
        Int kk(k);
        enc = DyadicInterval::point(Int(Int(cfg.h) * kk - 1), prec) +
              DyadicInterval::point(Int(kk * kk), prec) / enc;
        if (k <= hi) visit(k, enc);
    }
}

inline int sweep_prec(std::int64_t hi) {
    int bits = 1;
    while ((hi >> bits) > 0) ++bits;
    return 96 + bits;
}

constexpr std::int64_t sweep_chunk = 2048;
constexpr std::int64_t sweep_overshoot = 32;

}  // namespace detail

// Streams e_1, e_2, ... via chunked backward sweeps, refining individual
// indices only when the shared sweep cannot decide them. Deterministic:
// every rounding is certified, so the values do not depend on chunking.
class ETermStream {
public:
    explicit ETermStream(RecurrenceConfig cfg, RefineSchedule sched = {})
        : cfg_(std::move(cfg)), sched_(sched) {}

    Int next() {
        if (at_ == buf_.size()) load_chunk();
        return buf_[at_++];
    }

private:
    void load_chunk() {
        std::int64_t lo = next_index_;
        std::int64_t hi = lo + detail::sweep_chunk - 1;
        buf_.assign(static_cast<size_t>(detail::sweep_chunk), Int(0));
        std::vector<std::int64_t> pending;
        try {
            detail::backward_sweep(cfg_, lo, hi, detail::sweep_overshoot, detail::sweep_prec(hi),
                                   [&](std::int64_t k, const DyadicInterval& enc) {
                                       if (auto v = enc.unique_round_half())
                                           buf_[static_cast<size_t>(k - lo)] = *v;
                                       else
                                           pending.push_back(k);
                                   });
        } catch (const std::domain_error&) {
            pending.clear();
            for (std::int64_t k = lo; k <= hi; ++k) pending.push_back(k);
        }
        for (std::int64_t k : pending) {
            auto v = certified_round(cfg_, k, RoundMode::NearestHalfUp, sched_);
            if (!v) throw RefinementCapExceeded(cfg_.h, k);
            buf_[static_cast<size_t>(k - lo)] = *v;
        }
        next_index_ = hi + 1;
        at_ = 0;
    }

    RecurrenceConfig cfg_;
    RefineSchedule sched_;
    std::vector<Int> buf_;
    std::int64_t next_index_ = 1;
    size_t at_ = 0;
};

// --- Lemma 4 machinery: the gap ceil(alpha*n) - alpha*n ------------------

enum class GapForm {
    OddIndexMultiple,  // n = j * q_{2k-1}, k >= 1, 1 <= j < alpha^{2k}
    ConsecutiveSum,    // n = q_{2k-1} + q_{2k}, k >= 0
    ConsecutiveDiff,   // n = q_{2k+1} - q_{2k}, k >= 0
};

struct GapMatch {
    GapForm form;
    Int j;  // multiplier for OddIndexMultiple, else 1
    int k;
    QuadExact predicted;
};

struct GapClassification {
    QuadExact gap;
    std::vector<GapMatch> matches;
    bool is_other() const { return matches.empty(); }
};

inline QuadExact ceil_gap(const RecurrenceConfig& cfg, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("ceil_gap: n must be >= 1");
    QuadExact an = cfg.alpha * QuadExact(Int(n));
    return QuadExact(an.ceil()) - an;
}

// Matches n against all three special forms of the gap classification and
// attaches the closed-form gap each form predicts. 1/alpha = alpha - h, so
// the predictions stay in the same field.
inline GapClassification ceil_gap_classify(const RecurrenceConfig& cfg, std::int64_t n) {
    GapClassification out{ceil_gap(cfg, n), {}};
    Int nn(n);
    QuadExact inv_alpha = cfg.alpha - QuadExact(Int(cfg.h));

    std::vector<Int> q = {0, 1};  // q_{-1}, q_0  (q[i] = q_{i-1})
    while (q.back() <= 2 * nn + 2) q.push_back(Int(cfg.h) * q[q.size() - 1] + q[q.size() - 2]);

    auto q_at = [&](int k) -> const Int& { return q[static_cast<size_t>(k + 1)]; };
    int top = static_cast<int>(q.size()) - 2;  // largest index with q_at defined

    // n = j * q_{2k-1}
    for (int k = 1; 2 * k - 1 <= top && q_at(2 * k - 1) <= nn; ++k) {
        const Int& qy = q_at(2 * k - 1);
        if (qy == 0 || !mpz_divisible_p(nn.get_mpz_t(), qy.get_mpz_t())) continue;
        Int j = nn / qy;
        QuadExact alpha_2k = cfg.alpha.pow(2 * static_cast<unsigned long>(k));
        if (j >= 1 && (QuadExact(j) - alpha_2k).sign() < 0)
            out.matches.push_back(
                {GapForm::OddIndexMultiple, j, k,
                 QuadExact(j) * inv_alpha.pow(2 * static_cast<unsigned long>(k))});
    }
    // n = q_{2k-1} + q_{2k}
    for (int k = 0; 2 * k <= top; ++k) {
        Int s = q_at(2 * k - 1) + q_at(2 * k);
        if (s > nn) break;
        if (s == nn)
            out.matches.push_back(
                {GapForm::ConsecutiveSum, 1, k,
                 (cfg.alpha - QuadExact(1)) * inv_alpha.pow(2 * static_cast<unsigned long>(k) + 1)});
    }
    // n = q_{2k+1} - q_{2k}
    for (int k = 0; 2 * k + 1 <= top; ++k) {
        Int d = q_at(2 * k + 1) - q_at(2 * k);
        if (d > nn) break;
        if (d == nn)
            out.matches.push_back(
                {GapForm::ConsecutiveDiff, 1, k,
                 (cfg.alpha + QuadExact(1)) * inv_alpha.pow(2 * static_cast<unsigned long>(k) + 2)});
    }
    return out;
}

// --- Lemma 3 window verification ------------------------------------------

struct Lemma3Entry {
    std::int64_t n;
    bool confirmed;
};

struct Lemma3Report {
    std::vector<Lemma3Entry> entries;
    bool all_confirmed = true;
    std::int64_t first_unconfirmed = 0;
};

// Certifies 0 < r_n - alpha*n + c < bound_const/(alpha*n) for each n, by
// comparing enclosure endpoints against the exact window bounds. Entries the
// enclosure cannot separate at this precision are reported unconfirmed, never
// guessed.
inline Lemma3Report verify_lemma3_bounds(const RecurrenceConfig& cfg,
                                         const std::vector<std::int64_t>& ns, int prec) {
    Lemma3Report rep;
    rep.entries.reserve(ns.size());
    for (std::int64_t n : ns) {
        QuadExact an = cfg.alpha * QuadExact(Int(n));
        QuadExact win_lo = an - cfg.c;
        QuadExact win_hi = win_lo + cfg.bound_const / an;
        bool ok = false;
        try {
            DyadicInterval enc = r_enclosure(cfg, n, n + 48, prec);
            ok = cmp(enc.lo(), win_lo) > 0 && cmp(enc.hi(), win_hi) < 0;
        } catch (const std::domain_error&) {
            ok = false;
        }
        rep.entries.push_back({n, ok});
        if (!ok && rep.all_confirmed) {
            rep.all_confirmed = false;
            rep.first_unconfirmed = n;
        }
    }
    return rep;
}

// --- certified pi ----------------------------------------------------------

// Enclosure of pi of width below 10^-digits, as 4 / r_1 for h = 2.
inline DyadicInterval pi_enclosure(int digits) {
    if (digits < 1) throw std::invalid_argument("pi_enclosure: digits must be >= 1");
    RecurrenceConfig cfg(2);
    Int pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rat target(1, pow10);
    target.canonicalize();
    int prec = digits * 10 / 3 + 64;
    std::int64_t tail = static_cast<std::int64_t>(digits) * 4 / 3 + 24;
    for (;;) {
        DyadicInterval r1 = r_enclosure(cfg, 1, tail, prec);
        DyadicInterval pi = DyadicInterval::point(Int(4), prec) / r1;
        if (pi.width().to_rational() < target) return pi;
        tail += tail / 2;
        prec += prec / 2;
    }
}

// Decimal expansion "3.<digits>", truncated, every printed digit certified:
// refines until floor(lo * 10^digits) == floor(hi * 10^digits).
inline std::string pi_digits(int digits) {
    if (digits < 1) throw std::invalid_argument("pi_digits: digits must be >= 1");
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    for (int extra = 2;; extra += 4) {
        DyadicInterval pi = pi_enclosure(digits + extra);
        Int a = (pi.lo() * Dyadic(scale)).floor();
        Int b = (pi.hi() * Dyadic(scale)).floor();
        if (a == b) {
            std::string s = a.get_str();
            return s.substr(0, 1) + "." + s.substr(1);
        }
    }
}

// --- scans over n ----------------------------------------------------------

struct ScanHit {
    std::int64_t n;
    Int lhs;  // exact floor of the Beatty-side expression
    Int rhs;  // certified rounding of r_n
};

struct ScanReport {
    std::vector<ScanHit> mismatches;
    std::vector<std::int64_t> undecided;
    std::int64_t n_max = 0;
    bool clean() const { return mismatches.empty() && undecided.empty(); }
};

namespace detail {

template <typename Lhs>
ScanReport scan_impl(const RecurrenceConfig& cfg, std::int64_t n_max, RoundMode mode, Lhs&& lhs_of,
                     const RefineSchedule& sched) {
    if (n_max < 1) throw std::invalid_argument("scan: n_max must be >= 1");
    ScanReport rep;
    rep.n_max = n_max;
    std::vector<std::optional<Int>> rhs(static_cast<size_t>(n_max) + 1);
    for (std::int64_t lo = 1; lo <= n_max; lo += sweep_chunk) {
        std::int64_t hi = std::min(lo + sweep_chunk - 1, n_max);
        try {
            backward_sweep(cfg, lo, hi, sweep_overshoot, sweep_prec(hi),
                           [&](std::int64_t k, const DyadicInterval& enc) {
                               rhs[static_cast<size_t>(k)] = mode == RoundMode::NearestHalfUp
                                                                 ? enc.unique_round_half()
                                                                 : enc.unique_floor();
                           });
        } catch (const std::domain_error&) {
            // per-index refinement below fills whatever the sweep left open
        }
    }
    for (std::int64_t n = 1; n <= n_max; ++n) {
        auto& r = rhs[static_cast<size_t>(n)];
        if (!r) r = certified_round(cfg, n, mode, sched);
        if (!r) {
            rep.undecided.push_back(n);
            continue;
        }
        Int lhs = lhs_of(n);
        if (lhs != *r) rep.mismatches.push_back({n, lhs, *r});
    }
    return rep;
}

}  // namespace detail

// All n <= n_max with floor(alpha*n - c + 1/2) != floor(r_n + 1/2).
inline ScanReport counterexample_scan(const RecurrenceConfig& cfg, std::int64_t n_max,
                                      const RefineSchedule& sched = {}) {
    return detail::scan_impl(
        cfg, n_max, RoundMode::NearestHalfUp,
        [&](std::int64_t n) { return (cfg.alpha * QuadExact(Int(n)) - cfg.c).round_half(); },
        sched);
}

// All n <= n_max with floor(alpha*n - c) != floor(r_n).
inline ScanReport conjecture_scan(const RecurrenceConfig& cfg, std::int64_t n_max,
                                  const RefineSchedule& sched = {}) {
    return detail::scan_impl(
        cfg, n_max, RoundMode::Floor,
        [&](std::int64_t n) { return (cfg.alpha * QuadExact(Int(n)) - cfg.c).floor(); }, sched);
}

}  // namespace metallic
