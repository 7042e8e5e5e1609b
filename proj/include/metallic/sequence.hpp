#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "metallic/morphism.hpp"
#include "metallic/recurrence.hpp"
#include "metallic/sturmian.hpp"

namespace metallic {

// The substitution 0 -> 011, 1 -> 01. Zeros of its fixed point sit exactly
// at the sequence terms; positions are 1-indexed.
inline Morphism zeros_morphism() { return Morphism("011", "01"); }

// Its mirror 0 -> 10, 1 -> 100 (the exchange conjugate, fixed point from
// seed '1'); ones of that fixed point sit at the terms.
inline Morphism ones_morphism() { return Morphism("10", "100"); }

// Answers "is m one of the terms emitted so far" for a strictly increasing
// sequence, amortized O(1) when queries are non-decreasing. Because gaps
// between terms are at least 2, a query for m <= last_term + 1 is decidable
// even before the next term is produced.
class MembershipTracker {
public:
    void record(std::int64_t term) {
        assert(terms_.empty() || term > terms_.back());
        terms_.push_back(term);
    }

    bool contains(std::int64_t m) {
        assert(!terms_.empty() && m <= terms_.back() + 1);
        while (cursor_ < terms_.size() && terms_[cursor_] < m) ++cursor_;
        return cursor_ < terms_.size() && terms_[cursor_] == m;
    }

private:
    std::vector<std::int64_t> terms_;
    size_t cursor_ = 0;
};

enum class Def : char { A = 'a', B = 'b', C = 'c', D = 'd', E = 'e' };

inline Def def_from_char(char c) {
    switch (c) {
        case 'a': return Def::A;
        case 'b': return Def::B;
        case 'c': return Def::C;
        case 'd': return Def::D;
        case 'e': return Def::E;
        default: throw std::invalid_argument(std::string("unknown definition '") + c + "'");
    }
}

struct StreamOptions {
    std::int64_t h = 2;  // family parameter for the d/e definitions
    RefineSchedule schedule;
};

// Uniform lazy producer of a strictly increasing integer sequence, starting
// at index 1. Single-consumer; distinct streams are independent.
class SequenceStream {
public:
    virtual ~SequenceStream() = default;
    virtual std::int64_t next() = 0;

    static std::unique_ptr<SequenceStream> make(Def def, const StreamOptions& opt = {});
};

namespace detail {

// a_1 = 1; a_n = a_{n-1} + 2 unless n-1 is a term and n is not, then +3.
// The two +2 cases of the original three-case rule are exclusive (gaps are
// >= 2, so n and n-1 are never both terms), which is what StreamB exploits.
class StreamA final : public SequenceStream {
public:
    std::int64_t next() override {
        if (n_ == 0) {
            n_ = 1;
            last_ = 1;
            tracker_.record(1);
            return 1;
        }
        ++n_;
        bool prev_in = tracker_.contains(n_ - 1);
        bool cur_in = tracker_.contains(n_);
        std::int64_t step;
        if (cur_in)
            step = 2;
        else
            step = prev_in ? 3 : 2;
        last_ += step;
        tracker_.record(last_);
        return last_;
    }

private:
    MembershipTracker tracker_;
    std::int64_t n_ = 0, last_ = 0;
};

// The simplified two-case rule: +3 exactly when n-1 is a term.
class StreamB final : public SequenceStream {
public:
    std::int64_t next() override {
        if (n_ == 0) {
            n_ = 1;
            last_ = 1;
            tracker_.record(1);
            return 1;
        }
        ++n_;
        last_ += tracker_.contains(n_ - 1) ? 3 : 2;
        tracker_.record(last_);
        return last_;
    }

private:
    MembershipTracker tracker_;
    std::int64_t n_ = 0, last_ = 0;
};

// Positions of the n-th zero in the fixed point of 0 -> 011, 1 -> 01.
class StreamC final : public SequenceStream {
public:
    StreamC() : positions_(zeros_morphism(), '0', '0') {}
    std::int64_t next() override { return static_cast<std::int64_t>(positions_.next()); }

private:
    PositionStream positions_;
};

// floor(alpha*n - c + 1/2); for h = 2 this is exactly
// floor((1+sqrt(2))*n - sqrt(2)/2).
class StreamD final : public SequenceStream {
public:
    explicit StreamD(std::int64_t h)
        : cfg_(h), params_{cfg_.alpha, QuadExact::half() - cfg_.c} {}

    std::int64_t next() override {
        ++n_;
        Int v = beatty(params_, n_);
        if (!v.fits_slong_p()) throw std::overflow_error("StreamD: term exceeds 64 bits");
        return v.get_si();
    }

private:
    RecurrenceConfig cfg_;
    SturmianParams params_;
    std::int64_t n_ = 0;
};

// Certified nearest-integer roundings of r_n.
class StreamE final : public SequenceStream {
public:
    explicit StreamE(std::int64_t h, const RefineSchedule& sched)
        : terms_(RecurrenceConfig(h), sched) {}

    std::int64_t next() override {
        Int v = terms_.next();
        if (!v.fits_slong_p()) throw std::overflow_error("StreamE: term exceeds 64 bits");
        return v.get_si();
    }

private:
    ETermStream terms_;
};

}  // namespace detail

inline std::unique_ptr<SequenceStream> SequenceStream::make(Def def, const StreamOptions& opt) {
    switch (def) {
        case Def::A: return std::make_unique<detail::StreamA>();
        case Def::B: return std::make_unique<detail::StreamB>();
        case Def::C: return std::make_unique<detail::StreamC>();
        case Def::D: return std::make_unique<detail::StreamD>(opt.h);
        case Def::E: return std::make_unique<detail::StreamE>(opt.h, opt.schedule);
    }
    throw std::logic_error("unreachable");
}

inline std::vector<std::int64_t> generate(Def def, std::int64_t count,
                                          const StreamOptions& opt = {}) {
    if (count < 1) throw std::invalid_argument("generate: count must be >= 1");
    auto s = SequenceStream::make(def, opt);
    std::vector<std::int64_t> out;
    out.reserve(static_cast<size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) out.push_back(s->next());
    return out;
}

struct CrossVerifyReport {
    bool success = false;
    std::int64_t checked = 0;
    std::int64_t mismatch_index = 0;  // 0 when none
    std::vector<std::pair<Def, std::int64_t>> values_at_mismatch;
    std::int64_t undecided_index = 0;  // set when a certified rounding hit its cap
    std::int64_t last_term = 0;        // value at index `checked` when successful
};

// Drives the selected definitions in lockstep and reports the first index of
// disagreement with all differing values. O(1) memory beyond tracker state.
inline CrossVerifyReport cross_verify(std::int64_t count, const std::vector<Def>& defs,
                                      const StreamOptions& opt = {}) {
    if (count < 1) throw std::invalid_argument("cross_verify: count must be >= 1");
    if (defs.empty()) throw std::invalid_argument("cross_verify: no definitions selected");
    std::vector<std::unique_ptr<SequenceStream>> streams;
    streams.reserve(defs.size());
    for (Def d : defs) streams.push_back(SequenceStream::make(d, opt));

    CrossVerifyReport rep;
    std::vector<std::int64_t> vals(defs.size());
    for (std::int64_t n = 1; n <= count; ++n) {
        for (size_t i = 0; i < streams.size(); ++i) {
            try {
                vals[i] = streams[i]->next();
            } catch (const RefinementCapExceeded&) {
                rep.undecided_index = n;
                rep.checked = n - 1;
                return rep;
            }
        }
        for (size_t i = 1; i < vals.size(); ++i) {
            if (vals[i] != vals[0]) {
                rep.mismatch_index = n;
                rep.checked = n;
                for (size_t j = 0; j < defs.size(); ++j)
                    rep.values_at_mismatch.emplace_back(defs[j], vals[j]);
                return rep;
            }
        }
        rep.last_term = vals[0];
    }
    rep.success = true;
    rep.checked = count;
    return rep;
}

}  // namespace metallic
