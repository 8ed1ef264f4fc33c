#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cwb {

// Exact rational scalar. GMP keeps mpq_class values canonical under
// arithmetic, but construction from raw integers or text does not
// canonicalize on its own, so all entry points funnel through here.
using Rat = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw ParseError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q" with optional sign on the numerator only.
inline Rat parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::size_t i = 0;
    if (text[i] == '-' || text[i] == '+') ++i;
    if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("bad rational literal: '" + text + "'");
    bool seen_slash = false;
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] == '/') {
            if (seen_slash || j + 1 == text.size())
                throw ParseError("bad rational literal: '" + text + "'");
            seen_slash = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(text[j])))
            throw ParseError("bad rational literal: '" + text + "'");
    }
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw ParseError("bad rational literal: '" + text + "'");
    if (q.get_den() == 0) throw ParseError("rational with zero denominator");
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Largest integer n with n <= q.
inline long floor_long(const Rat& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    if (!fl.fits_slong_p()) throw std::overflow_error("rational floor out of range");
    return fl.get_si();
}

}  // namespace cwb
