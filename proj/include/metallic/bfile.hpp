#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace metallic {

// OEIS b-file convention: one "index value" pair per line, ASCII decimal,
// LF line endings. Comment lines start with '#'; blank lines are skipped.
struct BFileRecord {
    std::int64_t index;
    mpz_class value;
};

struct BFileParseError : std::runtime_error {
    std::int64_t line;
    BFileParseError(std::int64_t line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Requires indices to start at 1 and increase by exactly 1.
inline std::vector<BFileRecord> parse_bfile(std::istream& in) {
    std::vector<BFileRecord> out;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        size_t sp = line.find_first_of(" \t", start);
        if (sp == std::string::npos) throw BFileParseError(lineno, "expected 'index value'");
        size_t vstart = line.find_first_not_of(" \t", sp);
        if (vstart == std::string::npos) throw BFileParseError(lineno, "expected 'index value'");
        std::string idx_str = line.substr(start, sp - start);
        std::string val_str = line.substr(vstart);
        size_t vend = val_str.find_last_not_of(" \t");
        val_str = val_str.substr(0, vend + 1);
        std::int64_t idx;
        try {
            size_t used = 0;
            idx = std::stoll(idx_str, &used);
            if (used != idx_str.size()) throw std::invalid_argument(idx_str);
        } catch (const std::exception&) {
            throw BFileParseError(lineno, "bad index '" + idx_str + "'");
        }
        mpz_class value;
        if (value.set_str(val_str, 10) != 0)
            throw BFileParseError(lineno, "bad value '" + val_str + "'");
        std::int64_t expected = out.empty() ? 1 : out.back().index + 1;
        if (idx != expected)
            throw BFileParseError(lineno, "index " + std::to_string(idx) + ", expected " +
                                              std::to_string(expected));
        out.push_back({idx, value});
    }
    return out;
}

inline void write_bfile(std::ostream& os, const std::vector<BFileRecord>& records) {
    for (const auto& r : records) os << r.index << " " << r.value.get_str() << "\n";
}

}  // namespace metallic
