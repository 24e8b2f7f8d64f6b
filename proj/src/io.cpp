#include "qtkit/io.hpp"

#include <cctype>
#include <sstream>

#include "qtkit/errors.hpp"

namespace qtkit {

namespace {

std::string rat_str(const mpq_class& q) { return q.get_str(); }

// Pull a printable sign out of a coefficient when that keeps the text simple:
// real or purely imaginary coefficients carry their sign, mixed ones stay
// inside parentheses.
bool display_negative(const Scalar& s) {
    if (s.is_real()) return sgn(s.real()) < 0;
    if (sgn(s.real()) == 0) return sgn(s.imag()) < 0;
    return false;
}

std::string coeff_body(const Scalar& s) {
    // |s| when display_negative, else s; "1" and "i" handled by the caller.
    Scalar v = display_negative(s) ? -s : s;
    if (v.is_real()) return rat_str(v.real());
    if (sgn(v.real()) == 0) {
        if (v.imag() == 1) return "i";
        return rat_str(v.imag()) + "*i";
    }
    std::string out = "(" + rat_str(v.real());
    if (sgn(v.imag()) > 0) out += "+";
    if (v.imag() == 1) {
        out += "i";
    } else if (v.imag() == -1) {
        out += "-i";
    } else {
        out += rat_str(v.imag()) + "*i";
    }
    return out + ")";
}

std::string monomial_str(const Monomial& m, const VarContext& ctx) {
    std::string out;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += ctx.name(i);
        if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
    }
    return out;
}

} // namespace

std::string format_scalar(const Scalar& s) {
    if (s.is_zero()) return "0";
    std::string body = coeff_body(s);
    return display_negative(s) ? "-" + body : body;
}

std::string format_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [m, c] = *it;
        const bool neg = display_negative(c);
        std::string piece;
        const std::string mono = monomial_str(m, p.context());
        if (mono.empty()) {
            piece = coeff_body(c);
        } else if (c.is_real() && abs(c.real()) == 1 && sgn(c.imag()) == 0) {
            piece = mono;
        } else {
            piece = coeff_body(c) + "*" + mono;
        }
        if (out.empty()) {
            out = neg ? "-" + piece : piece;
        } else {
            out += neg ? " - " : " + ";
            out += piece;
        }
    }
    return out;
}

namespace {

enum class Tok { number, ident, plus, minus, star, caret, slash, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        const std::size_t line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::end, "", line, col};
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits += advance();
            return {Tok::number, digits, line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                name += advance();
            return {Tok::ident, name, line, col};
        }
        advance();
        switch (c) {
            case '+': return {Tok::plus, "+", line, col};
            case '-': return {Tok::minus, "-", line, col};
            case '*': return {Tok::star, "*", line, col};
            case '^': return {Tok::caret, "^", line, col};
            case '/': return {Tok::slash, "/", line, col};
            case '(': return {Tok::lparen, "(", line, col};
            case ')': return {Tok::rparen, ")", line, col};
            default:
                throw parse_error(std::string("unexpected character '") + c + "'", line, col);
        }
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }
    char advance() {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    Parser(std::string_view text, const VarContext& ctx) : lexer_(text), ctx_(ctx) {
        cur_ = lexer_.next();
    }

    Poly parse() {
        Poly p = expr();
        expect(Tok::end, "end of input");
        return p;
    }

private:
    Poly expr() {
        bool negate = false;
        if (cur_.kind == Tok::minus) {
            negate = true;
            consume();
        } else if (cur_.kind == Tok::plus) {
            consume();
        }
        Poly acc = term();
        if (negate) acc = -acc;
        while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
            const bool minus = cur_.kind == Tok::minus;
            consume();
            Poly t = term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (cur_.kind == Tok::star) {
            consume();
            acc *= factor();
        }
        return acc;
    }

    Poly factor() {
        Poly b = base();
        if (cur_.kind == Tok::caret) {
            consume();
            const Token t = expect(Tok::number, "exponent");
            unsigned long e = 0;
            try {
                e = std::stoul(t.text);
            } catch (const std::exception&) {
                throw parse_error("exponent out of range", t.line, t.col);
            }
            if (e > 4096) throw parse_error("exponent out of range", t.line, t.col);
            b = b.pow(static_cast<std::uint32_t>(e));
        }
        return b;
    }

    Poly base() {
        if (cur_.kind == Tok::number) {
            const Token num = consume();
            mpz_class numerator(num.text);
            if (cur_.kind == Tok::slash) {
                consume();
                const Token den = expect(Tok::number, "denominator");
                mpz_class denominator(den.text);
                if (denominator == 0)
                    throw parse_error("zero denominator", den.line, den.col);
                mpq_class q(numerator, denominator);
                q.canonicalize();
                return Poly::constant(ctx_, Scalar(std::move(q)));
            }
            return Poly::constant(ctx_, Scalar(mpq_class(std::move(numerator))));
        }
        if (cur_.kind == Tok::ident) {
            const Token id = consume();
            if (id.text == "i") return Poly::constant(ctx_, Scalar::i());
            auto index = ctx_.index_of(id.text);
            if (!index) {
                if ((id.text[0] == 'x' || id.text[0] == 'y') && id.text.size() > 1)
                    throw parse_error("unknown variable '" + id.text +
                                          "' (index exceeds the dimension?)",
                                      id.line, id.col);
                throw parse_error("unknown identifier '" + id.text + "'", id.line, id.col);
            }
            return Poly::variable(ctx_, *index);
        }
        if (cur_.kind == Tok::lparen) {
            consume();
            Poly p = expr();
            expect(Tok::rparen, "')'");
            return p;
        }
        throw parse_error("expected a number, variable, 'i', or '('", cur_.line, cur_.col);
    }

    Token consume() {
        Token t = cur_;
        cur_ = lexer_.next();
        return t;
    }

    Token expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind)
            throw parse_error("expected " + what, cur_.line, cur_.col);
        return consume();
    }

    Lexer lexer_;
    Token cur_{Tok::end, "", 1, 1};
    const VarContext& ctx_;
};

} // namespace

Poly parse_poly(std::string_view text, const VarContext& ctx) {
    return Parser(text, ctx).parse();
}

std::vector<Poly> parse_poly_list(std::string_view text, const VarContext& ctx) {
    // Strip the surrounding brackets, then split on top-level commas. Errors
    // from component parses are re-anchored to positions within `text`.
    std::size_t first = text.find('[');
    std::size_t last = text.rfind(']');
    if (first == std::string_view::npos || last == std::string_view::npos || last < first)
        throw parse_error("expected a bracketed component list", 1, 1);
    std::string_view body = text.substr(first + 1, last - first - 1);

    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i <= first; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }

    std::vector<Poly> out;
    std::size_t depth = 0, start = 0;
    std::size_t piece_line = line, piece_col = col;
    auto flush = [&](std::size_t end) {
        try {
            out.push_back(parse_poly(body.substr(start, end - start), ctx));
        } catch (const parse_error& e) {
            const std::size_t l = piece_line + e.line() - 1;
            const std::size_t c = e.line() == 1 ? piece_col + e.column() - 1 : e.column();
            throw parse_error(e.what(), l, c);
        }
        start = end + 1;
    };
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '(') ++depth;
        if (body[i] == ')') --depth;
        if (body[i] == ',' && depth == 0) {
            flush(i);
            piece_line = line;
            piece_col = col + 1;
        }
        if (body[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    flush(body.size());
    return out;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) {
    return os << format_poly(p);
}

} // namespace qtkit
