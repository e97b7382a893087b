#ifndef WEBGEOM_PARSE_HPP
#define WEBGEOM_PARSE_HPP

#include <cctype>
#include <string>
#include <vector>

#include "webgeom/multipoly.hpp"

namespace webgeom {

/// Parse failure with a 1-based source position.
struct parse_error : error {
    parse_error(const std::string& what, size_t line, size_t column)
        : error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line(line),
          column(column) {}
    size_t line, column;
};

namespace detail {

// Recursive-descent parser for the polynomial grammar
//   expression := ['+'|'-'] term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := base ('^' natural)?
//   base       := identifier | rational | 'i' | '(' expression ')'
//   rational   := natural ('/' natural)?
// 'i' is the imaginary unit and is not available as a variable name.
class PolyParser {
public:
    PolyParser(const std::string& text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    MultiPoly parse() {
        MultiPoly p = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    const std::string& text_;
    const std::vector<std::string>& vars_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        size_t line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error(msg, line, col);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expression() {
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        MultiPoly p = term();
        if (neg) p = -p;
        for (;;) {
            if (accept('+'))
                p += term();
            else if (accept('-'))
                p -= term();
            else
                return p;
        }
    }

    MultiPoly term() {
        MultiPoly p = factor();
        while (accept('*')) p *= factor();
        return p;
    }

    MultiPoly factor() {
        MultiPoly b = base();
        if (accept('^')) return b.pow(natural());
        return b;
    }

    MultiPoly base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly p = expression();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit((unsigned char)c)) return rational();
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string name = identifier();
            if (name == "i") return MultiPoly::constant(vars_, GaussianRational::i());
            if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) {
                pos_ -= name.size();
                fail("unknown identifier '" + name + "'");
            }
            return MultiPoly::variable(vars_, name);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string identifier() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    long natural() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit((unsigned char)text_[pos_]))
            fail("expected a natural number");
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
        return std::stol(text_.substr(start, pos_ - start));
    }

    MultiPoly rational() {
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
        mpz_class num(text_.substr(start, pos_ - start));
        mpz_class den(1);
        if (accept('/')) {
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit((unsigned char)text_[pos_]))
                fail("expected denominator");
            size_t dstart = pos_;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
            den = mpz_class(text_.substr(dstart, pos_ - dstart));
            if (den == 0) {
                pos_ = dstart;
                fail("zero denominator");
            }
        }
        mpq_class q(num, den);
        q.canonicalize();
        return MultiPoly::constant(vars_, GaussianRational(q));
    }
};

}  // namespace detail

/// Parse `text` over the given variables. Identifiers must appear in the
/// variable list; 'i' always denotes the imaginary unit.
inline MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    for (const auto& v : vars)
        if (v == "i") throw error("'i' is reserved for the imaginary unit");
    return detail::PolyParser(text, vars).parse();
}

}  // namespace webgeom

#endif
