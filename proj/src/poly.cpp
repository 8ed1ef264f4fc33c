#include "cwb/poly.hpp"

#include <cctype>
#include <sstream>

namespace cwb {

namespace {

std::string monomial_str(const Monomial& m) {
    std::ostringstream out;
    bool first = true;
    for (int v = 0; v < kNumVars; ++v) {
        if (m.exp[v] == 0) continue;
        if (!first) out << "*";
        out << kVarNames[v];
        if (m.exp[v] > 1) out << "^" << m.exp[v];
        first = false;
    }
    return out.str();
}

}  // namespace

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Reverse map order prints highest terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rat& c = it->second;
        Rat mag = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        std::string mono = monomial_str(it->first);
        if (mono.empty()) {
            out << rat_str(mag);
        } else if (mag == 1) {
            out << mono;
        } else {
            out << rat_str(mag) << "*" << mono;
        }
    }
    return out.str();
}

namespace {

// Hand-rolled scanner for the tiny polynomial grammar:
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := rational | variable ['^' integer]
// Variables are exactly lam, mu, del, s.
struct Scanner {
    const std::string& text;
    std::size_t pos = 0;

    explicit Scanner(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool done() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("polynomial parse error at position " + std::to_string(pos) + ": " +
                         what + " in '" + text + "'");
    }

    Rat read_rational() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        std::string num = text.substr(start, pos - start);
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            std::size_t dstart = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == dstart) fail("expected a denominator");
            std::string den = text.substr(dstart, pos - dstart);
            Rat q = parse_rational(num + "/" + den);
            if (q.get_den() == 0) fail("zero denominator");
            return q;
        }
        return parse_rational(num);
    }

    int read_exponent() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected an exponent");
        return std::stoi(text.substr(start, pos - start));
    }

    int read_variable() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        std::string name = text.substr(start, pos - start);
        for (int v = 0; v < kNumVars; ++v)
            if (name == kVarNames[v]) return v;
        pos = start;
        fail("unknown variable '" + name + "'");
    }

    MPoly read_factor() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return MPoly::constant(read_rational());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            int v = read_variable();
            int k = 1;
            if (peek() == '^') {
                ++pos;
                k = read_exponent();
            }
            return MPoly::var(v, k);
        }
        fail("expected a coefficient or a variable");
    }

    MPoly read_term() {
        MPoly t = read_factor();
        while (peek() == '*') {
            ++pos;
            t *= read_factor();
        }
        return t;
    }

    MPoly read_poly() {
        MPoly p;
        bool negate = false;
        if (peek() == '-') {
            ++pos;
            negate = true;
        } else if (peek() == '+') {
            ++pos;
        }
        for (;;) {
            MPoly t = read_term();
            p += negate ? -t : t;
            if (done()) return p;
            char c = peek();
            if (c == '+') {
                negate = false;
                ++pos;
            } else if (c == '-') {
                negate = true;
                ++pos;
            } else {
                fail("expected '+' or '-'");
            }
        }
    }
};

}  // namespace

MPoly MPoly::parse(const std::string& text) {
    Scanner sc(text);
    if (sc.done()) {
        sc.fail("empty input");
    }
    // Allow a bare "0" even though zero stores no terms.
    MPoly p = sc.read_poly();
    return p;
}

}  // namespace cwb
