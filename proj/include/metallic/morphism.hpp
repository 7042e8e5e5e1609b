#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace metallic {

// Binary substitution over the alphabet {'0', '1'}.
class Morphism {
public:
    Morphism(std::string image0, std::string image1)
        : im0_(std::move(image0)), im1_(std::move(image1)) {
        check_word(im0_);
        check_word(im1_);
    }

    static Morphism identity() { return Morphism("0", "1"); }
    static Morphism exchange() { return Morphism("1", "0"); }

    const std::string& image(char symbol) const {
        if (symbol == '0') return im0_;
        if (symbol == '1') return im1_;
        throw std::invalid_argument("Morphism: symbol must be '0' or '1'");
    }

    std::string apply(std::string_view word) const {
        std::string out;
        out.reserve(word.size() * 2);
        for (char s : word) out += image(s);
        return out;
    }

    // A one-sided fixed point from `seed` exists and is unique when the image
    // of the seed starts with the seed and has length at least 2.
    bool prolongable_on(char seed) const {
        const std::string& im = image(seed);
        return im.size() >= 2 && im.front() == seed;
    }

    // f after g: (f o g)(s) = f(g(s))
    friend Morphism compose(const Morphism& f, const Morphism& g) {
        return Morphism(f.apply(g.im0_), f.apply(g.im1_));
    }

    Morphism conjugate_by_exchange() const {
        Morphism e = exchange();
        return compose(e, compose(*this, e));
    }

    friend bool operator==(const Morphism& x, const Morphism& y) {
        return x.im0_ == y.im0_ && x.im1_ == y.im1_;
    }
    friend bool operator!=(const Morphism& x, const Morphism& y) { return !(x == y); }

private:
    static void check_word(const std::string& w) {
        if (w.empty()) throw std::invalid_argument("Morphism: images must be non-empty");
        for (char s : w)
            if (s != '0' && s != '1')
                throw std::invalid_argument("Morphism: images must be over {'0','1'}");
    }

    std::string im0_, im1_;
};

// Streams the unique one-sided fixed point of a prolongable morphism by
// self-reading expansion: symbol i of the word built so far is read and its
// image appended, so memory stays proportional to the emitted prefix.
// Single-consumer; positions are 1-indexed throughout.
class FixedPointStream {
public:
    FixedPointStream(Morphism m, char seed) : m_(std::move(m)) {
        if (!m_.prolongable_on(seed))
            throw std::invalid_argument("FixedPointStream: morphism not prolongable on seed");
        word_ = m_.image(seed);
        expand_ = 1;
        emit_ = 0;
    }

    char next() {
        if (emit_ == word_.size()) word_ += m_.image(word_[expand_++]);
        return word_[emit_++];
    }

    // number of symbols emitted so far
    std::uint64_t position() const { return emit_; }

    // prefix of the fixed point emitted so far (grows as the stream is read)
    const std::string& buffer() const { return word_; }

private:
    Morphism m_;
    std::string word_;
    size_t expand_, emit_;
};

inline std::string fixed_point_prefix(const Morphism& m, char seed, size_t length) {
    FixedPointStream fp(m, seed);
    std::string out;
    out.reserve(length);
    while (out.size() < length) out.push_back(fp.next());
    return out;
}

// 1-indexed positions of `symbol` in the fixed point, in increasing order.
class PositionStream {
public:
    PositionStream(Morphism m, char seed, char symbol)
        : fp_(std::move(m), seed), symbol_(symbol) {}

    std::uint64_t next() {
        for (;;) {
            char s = fp_.next();
            ++pos_;
            if (s == symbol_) return pos_;
        }
    }

private:
    FixedPointStream fp_;
    char symbol_;
    std::uint64_t pos_ = 0;
};

inline std::uint64_t position_of_nth(const Morphism& m, char seed, char symbol, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("position_of_nth: n must be >= 1");
    PositionStream ps(m, seed, symbol);
    std::uint64_t p = 0;
    for (std::uint64_t i = 0; i < n; ++i) p = ps.next();
    return p;
}

}  // namespace metallic
