#pragma once

// Textual operator expressions over theta, t, dtheta, dt.
//
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | '+' factor | power
//   power   := primary ('^' ['-'] INT)?
//   primary := INT ('/' INT)? | 'theta' | 't' | 'dtheta' | 'dt' | '(' expr ')'
//
// Products keep their written order; the Ore relations are applied only by
// eval(). Negative exponents are allowed on theta and t alone.

#include "ore.hpp"

#include <cctype>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gmdual {

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column, std::set<std::string> expected = {})
        : Error(format(message, line, column, expected)),
          line_(line),
          column_(column),
          expected_(std::move(expected)) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::set<std::string>& expected() const { return expected_; }

private:
    static std::string format(const std::string& message, int line, int column,
                              const std::set<std::string>& expected) {
        std::ostringstream os;
        os << line << ":" << column << ": " << message;
        if (!expected.empty()) {
            os << " (expected one of:";
            for (const auto& e : expected) os << " " << e;
            os << ")";
        }
        return os.str();
    }

    int line_;
    int column_;
    std::set<std::string> expected_;
};

enum class Variable { Theta, T, DTheta, DT };

struct OpExpr;
using OpExprPtr = std::shared_ptr<const OpExpr>;

struct OpExpr {
    struct Number { Rational value; };
    struct Var { Variable var; };
    struct Neg { OpExprPtr operand; };
    struct Add { OpExprPtr lhs, rhs; };
    struct Sub { OpExprPtr lhs, rhs; };
    struct Mul { OpExprPtr lhs, rhs; };
    struct Pow { OpExprPtr base; int exponent; };

    std::variant<Number, Var, Neg, Add, Sub, Mul, Pow> node;
};

namespace detail {

/// Exponents beyond this are rejected so that evaluation stays bounded.
inline constexpr int kMaxExponent = 1000;

struct Token {
    enum Kind { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
    std::string text;
    int line;
    int column;
};

inline std::string describe(const Token& tok) {
    return tok.kind == Token::End ? std::string("end of input") : "'" + tok.text + "'";
}

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
            continue;
        }
        const int l = line, c = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Int, std::string(src.substr(i, j - i)), l, c});
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Token::Ident, std::string(src.substr(i, j - i)), l, c});
            advance(j - i);
        } else {
            Token::Kind kind;
            switch (ch) {
                case '+': kind = Token::Plus; break;
                case '-': kind = Token::Minus; break;
                case '*': kind = Token::Star; break;
                case '^': kind = Token::Caret; break;
                case '/': kind = Token::Slash; break;
                case '(': kind = Token::LParen; break;
                case ')': kind = Token::RParen; break;
                default:
                    throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
            }
            out.push_back({kind, std::string(1, ch), l, c});
            advance(1);
        }
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    OpExprPtr parse() {
        auto e = expr();
        if (peek().kind != Token::End) fail(peek(), {"'+'", "'-'", "'*'", "end of input"});
        return e;
    }

private:
    static OpExprPtr make(decltype(OpExpr::node) n) { return std::make_shared<const OpExpr>(OpExpr{std::move(n)}); }

    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] static void fail(const Token& tok, std::set<std::string> expected) {
        throw ParseError("unexpected " + describe(tok), tok.line, tok.column, std::move(expected));
    }

    OpExprPtr expr() {
        auto lhs = term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool plus = take().kind == Token::Plus;
            auto rhs = term();
            lhs = plus ? make(OpExpr::Add{lhs, rhs}) : make(OpExpr::Sub{lhs, rhs});
        }
        return lhs;
    }

    OpExprPtr term() {
        auto lhs = factor();
        while (peek().kind == Token::Star) {
            take();
            lhs = make(OpExpr::Mul{lhs, factor()});
        }
        return lhs;
    }

    OpExprPtr factor() {
        if (peek().kind == Token::Minus) {
            take();
            return make(OpExpr::Neg{factor()});
        }
        if (peek().kind == Token::Plus) {
            take();
            return factor();
        }
        return power();
    }

    OpExprPtr power() {
        const Token& start = peek();
        auto base = primary();
        if (peek().kind != Token::Caret) return base;
        take();
        bool negative = false;
        if (peek().kind == Token::Minus) {
            take();
            negative = true;
        }
        const Token& num = peek();
        if (num.kind != Token::Int) fail(num, {"integer exponent"});
        take();
        if (num.text.size() > 6 || std::stoi(num.text) > kMaxExponent)
            throw ParseError("exponent too large", num.line, num.column);
        int e = std::stoi(num.text);
        if (negative && e != 0) {
            const auto* var = std::get_if<OpExpr::Var>(&base->node);
            if (var && (var->var == Variable::DTheta || var->var == Variable::DT))
                throw ParseError("negative derivation exponent", num.line, num.column);
            if (!var)
                throw ParseError("negative exponent requires theta or t as base", start.line, start.column);
            e = -e;
        }
        return make(OpExpr::Pow{base, e});
    }

    OpExprPtr primary() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Token::Int: {
                take();
                Integer num(tok.text);
                Integer den = 1;
                if (peek().kind == Token::Slash) {
                    take();
                    const Token& d = peek();
                    if (d.kind != Token::Int) fail(d, {"integer denominator"});
                    take();
                    den = Integer(d.text);
                    if (den == 0) throw ParseError("zero denominator", d.line, d.column);
                }
                Rational r(num, den);
                r.canonicalize();
                return make(OpExpr::Number{r});
            }
            case Token::Ident: {
                take();
                if (tok.text == "theta") return make(OpExpr::Var{Variable::Theta});
                if (tok.text == "t") return make(OpExpr::Var{Variable::T});
                if (tok.text == "dtheta") return make(OpExpr::Var{Variable::DTheta});
                if (tok.text == "dt") return make(OpExpr::Var{Variable::DT});
                throw ParseError("unknown identifier '" + tok.text + "'", tok.line, tok.column,
                                 {"theta", "t", "dtheta", "dt"});
            }
            case Token::LParen: {
                take();
                auto e = expr();
                if (peek().kind != Token::RParen) fail(peek(), {"')'", "'+'", "'-'", "'*'"});
                take();
                return e;
            }
            default:
                fail(tok, {"integer", "theta", "t", "dtheta", "dt", "'('", "'-'"});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

inline OreOperator var_operator(Variable v, int e) {
    switch (v) {
        case Variable::Theta: return OreOperator::theta(e);
        case Variable::T: return OreOperator::t(e);
        case Variable::DTheta: return OreOperator::dtheta(e);
        case Variable::DT: return OreOperator::dt(e);
    }
    return {};
}

} // namespace detail

inline OpExprPtr parse(std::string_view src) { return detail::Parser(src).parse(); }

inline OreOperator eval(const OpExpr& e) {
    return std::visit(
        [](const auto& n) -> OreOperator {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, OpExpr::Number>) {
                return OreOperator(n.value);
            } else if constexpr (std::is_same_v<T, OpExpr::Var>) {
                return detail::var_operator(n.var, 1);
            } else if constexpr (std::is_same_v<T, OpExpr::Neg>) {
                return -eval(*n.operand);
            } else if constexpr (std::is_same_v<T, OpExpr::Add>) {
                return eval(*n.lhs) + eval(*n.rhs);
            } else if constexpr (std::is_same_v<T, OpExpr::Sub>) {
                return eval(*n.lhs) - eval(*n.rhs);
            } else if constexpr (std::is_same_v<T, OpExpr::Mul>) {
                return eval(*n.lhs) * eval(*n.rhs);
            } else {
                if (const auto* var = std::get_if<OpExpr::Var>(&n.base->node))
                    return detail::var_operator(var->var, n.exponent);
                return eval(*n.base).pow(static_cast<unsigned>(n.exponent));
            }
        },
        e.node);
}

inline OreOperator eval(std::string_view src) { return eval(*parse(src)); }

/// Canonical text: terms in decreasing (a, b, p, q) order, coefficient first.
inline std::string print(const OreOperator& op) {
    if (op.is_zero()) return "0";
    std::string out;
    bool first = true;
    const auto& terms = op.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [k, c] = *it;
        std::vector<std::string> factors;
        auto push = [&](const char* name, int e) {
            if (e == 0) return;
            factors.push_back(e == 1 ? std::string(name) : std::string(name) + "^" + std::to_string(e));
        };
        push("theta", k[kTheta]);
        push("t", k[kT]);
        push("dtheta", k[kDTheta]);
        push("dt", k[kDT]);

        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;

        std::string body;
        if (factors.empty()) {
            body = to_string(mag);
        } else {
            if (mag != 1) body = (mag.get_den() == 1 ? to_string(mag) : "(" + to_string(mag) + ")") + "*";
            for (std::size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];
        }
        out += body;
    }
    return out;
}

inline std::string print(const Laurent& f) { return print(OreOperator::from_laurent(f)); }

} // namespace gmdual
