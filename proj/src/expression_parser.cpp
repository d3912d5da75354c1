#include "volterra/expression_parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

namespace volterra {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    AnalyticFunction parse() {
        AnalyticFunction f = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 1, pos_ + 1); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    AnalyticFunction expr() {
        AnalyticFunction acc = term();
        for (;;) {
            if (accept('+')) acc = acc + term();
            else if (accept('-')) acc = acc - term();
            else return acc;
        }
    }

    AnalyticFunction term() {
        AnalyticFunction acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                AnalyticFunction rhs = unary();
                if (rhs.has_symbol() && rhs.symbol()->kind == NodeKind::constant && rhs.symbol()->value == Complex{}) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc = acc / rhs;
            } else {
                return acc;
            }
        }
    }

    AnalyticFunction unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    double real_constant(const AnalyticFunction& f, std::size_t at) {
        if (!(f.has_symbol() && f.symbol()->kind == NodeKind::constant)) {
            pos_ = at;
            fail("exponent must be a constant");
        }
        const Complex c = f.symbol()->value;
        if (c.imag() != 0.0) {
            pos_ = at;
            fail("exponent must be real");
        }
        return c.real();
    }

    AnalyticFunction power() {
        AnalyticFunction base = primary();
        if (accept('^')) {
            skip_space();
            const std::size_t at = pos_;
            const double e = real_constant(unary(), at);
            return raise(base, e, at);
        }
        return base;
    }

    AnalyticFunction raise(const AnalyticFunction& base, double e, std::size_t at) {
        try {
            return base.pow(e);
        } catch (const DomainError& err) {
            pos_ = at;
            fail(err.what());
        }
    }

    AnalyticFunction primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (accept('(')) {
            AnalyticFunction inner = expr();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view word = text_.substr(start, pos_ - start);
            if (word == "z") return AnalyticFunction::identity();
            if (word == "i") return AnalyticFunction::constant({0.0, 1.0});
            if (word == "pi") return AnalyticFunction::constant(kPi);
            if (word == "log") {
                expect('(');
                const std::size_t at = pos_;
                AnalyticFunction arg = expr();
                expect(')');
                try {
                    return arg.log();
                } catch (const DomainError& err) {
                    pos_ = at;
                    fail(err.what());
                }
            }
            if (word == "pow") {
                expect('(');
                AnalyticFunction base = expr();
                expect(',');
                skip_space();
                const std::size_t at = pos_;
                const double e = real_constant(expr(), at);
                expect(')');
                return raise(base, e, at);
            }
            pos_ = start;
            fail("unknown identifier '" + std::string(word) + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    AnalyticFunction number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                pos_ = p;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        const std::string literal(text_.substr(start, pos_ - start));
        if (literal == ".") {
            pos_ = start;
            fail("malformed number");
        }
        return AnalyticFunction::constant(std::strtod(literal.c_str(), nullptr));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

AnalyticFunction parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace volterra
