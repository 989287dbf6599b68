#include "sltl/parser.hpp"

#include "sltl/errors.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace sltl {

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(std::move(message)), line_(line), column_(column) {}

namespace {

enum class Tok {
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Until,
    Eventually,
    Always,
    True,
    False,
    Ident,
    Stand,      // bare @s, only valid around <=
    DiamondSp,  // <@s>
    BoxSp,      // [@s]
    Sharper,    // <=
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End:
        return "end of input";
    case Tok::Ident:
        return "identifier '" + t.text + "'";
    default:
        return "'" + t.text + "'";
    }
}

class Lexer {
public:
    Lexer(std::string_view src, const ParseOptions& opts) : src_(src), opts_(opts) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            std::size_t line = line_, col = col_;
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", line, col});
                return out;
            }
            out.push_back(next_token(line, col));
        }
    }

private:
    char peek(std::size_t k = 0) const {
        return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
    }

    void advance(std::size_t k = 1) {
        for (std::size_t i = 0; i < k && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            advance();
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t col) const {
        throw ParseError(msg, line, col);
    }

    std::string read_standpoint() {
        std::size_t line = line_, col = col_;
        advance(); // '@'
        if (peek() == '*') {
            advance();
            return "*";
        }
        std::string name;
        while (name_char(peek())) {
            name += peek();
            advance();
        }
        if (name.empty())
            fail("expected standpoint name after '@'", line, col);
        return name;
    }

    Token modal(char close, Tok kind, std::size_t line, std::size_t col) {
        advance(); // '<' or '['
        skip_space();
        if (peek() != '@')
            fail(std::string("expected '@' standpoint inside modality"), line_, col_);
        std::string s = read_standpoint();
        skip_space();
        if (peek() != close)
            fail(std::string("expected '") + close + "' to close modality", line_, col_);
        advance();
        return {kind, s, line, col};
    }

    Token next_token(std::size_t line, std::size_t col) {
        char c = peek();
        auto simple = [&](Tok k, std::size_t len) {
            Token t{k, std::string(src_.substr(pos_, len)), line, col};
            advance(len);
            return t;
        };
        switch (c) {
        case '(':
            return simple(Tok::LParen, 1);
        case ')':
            return simple(Tok::RParen, 1);
        case '!':
            return simple(Tok::Not, 1);
        case '&':
            return simple(Tok::And, 1);
        case '|':
            return simple(Tok::Or, 1);
        case '-':
            if (peek(1) == '>')
                return simple(Tok::Implies, 2);
            fail("unexpected '-' (did you mean '->'?)", line, col);
        case '<':
            if (peek(1) == '-' && peek(2) == '>')
                return simple(Tok::Iff, 3);
            if (peek(1) == '=')
                return simple(Tok::Sharper, 2);
            if (peek(1) == '>') {
                Token t{Tok::DiamondSp, "*", line, col};
                advance(2);
                return t;
            }
            return modal('>', Tok::DiamondSp, line, col);
        case '[':
            if (peek(1) == ']') {
                Token t{Tok::BoxSp, "*", line, col};
                advance(2);
                return t;
            }
            return modal(']', Tok::BoxSp, line, col);
        case '@':
            return {Tok::Stand, read_standpoint(), line, col};
        case '$':
            return reserved(line, col);
        default:
            break;
        }
        if (ident_start(c))
            return word(line, col);
        if (std::ispunct(static_cast<unsigned char>(c)) && name_char(peek(1)))
            fail(std::string("unknown sigil '") + c + "'", line, col);
        fail(std::string("unexpected character '") + c + "'", line, col);
    }

    Token reserved(std::size_t line, std::size_t col) {
        if (!opts_.allow_reserved)
            fail("identifiers starting with '$' are reserved", line, col);
        std::string name = "$";
        advance();
        while (name_char(peek()) || peek() == '*') {
            name += peek();
            advance();
        }
        if (name.size() == 1)
            fail("expected identifier after '$'", line, col);
        return {Tok::Ident, name, line, col};
    }

    Token word(std::size_t line, std::size_t col) {
        std::string w;
        while (name_char(peek())) {
            w += peek();
            advance();
        }
        if (w == "X")
            return {Tok::Next, w, line, col};
        if (w == "U")
            return {Tok::Until, w, line, col};
        if (w == "F")
            return {Tok::Eventually, w, line, col};
        if (w == "G")
            return {Tok::Always, w, line, col};
        if (w == "R")
            fail("the release operator 'R' is not supported; write !(!a U !b) instead", line, col);
        if (w == "true")
            return {Tok::True, w, line, col};
        if (w == "false")
            return {Tok::False, w, line, col};
        return {Tok::Ident, w, line, col};
    }

    std::string_view src_;
    const ParseOptions& opts_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula run() {
        if (cur().kind == Tok::End)
            fail_at(cur(), "empty formula");
        Formula f = parse_iff();
        if (cur().kind == Tok::RParen)
            fail_at(cur(), "unbalanced parentheses: unexpected ')'");
        if (cur().kind != Tok::End)
            fail_at(cur(), "unexpected " + describe(cur()));
        return f;
    }

private:
    static constexpr std::size_t kMaxDepth = 10000;

    const Token& cur() const { return toks_[i_]; }
    Token take() { return toks_[i_++]; }
    bool accept(Tok k) {
        if (cur().kind != k)
            return false;
        ++i_;
        return true;
    }

    [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
        throw ParseError(msg, t.line, t.col);
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p(p) {
            if (++p.depth_ > kMaxDepth)
                fail_at(p.cur(), "formula nested too deeply");
        }
        ~DepthGuard() { --p.depth_; }
        Parser& p;
    };

    Formula parse_iff() {
        Formula f = parse_implies();
        while (accept(Tok::Iff))
            f = iff(f, operand(&Parser::parse_implies, "<->"));
        return f;
    }

    Formula parse_implies() {
        Formula f = parse_or();
        if (accept(Tok::Implies))
            return implies(f, operand(&Parser::parse_implies, "->"));
        return f;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (accept(Tok::Or))
            f = disj(f, operand(&Parser::parse_and, "|"));
        return f;
    }

    Formula parse_and() {
        Formula f = parse_until();
        while (accept(Tok::And))
            f = conj(f, operand(&Parser::parse_until, "&"));
        return f;
    }

    Formula parse_until() {
        Formula f = parse_unary();
        if (accept(Tok::Until))
            return until(f, operand(&Parser::parse_until, "U"));
        return f;
    }

    bool starts_operand(Tok k) const {
        switch (k) {
        case Tok::LParen:
        case Tok::Not:
        case Tok::Next:
        case Tok::Eventually:
        case Tok::Always:
        case Tok::True:
        case Tok::False:
        case Tok::Ident:
        case Tok::Stand:
        case Tok::DiamondSp:
        case Tok::BoxSp:
            return true;
        default:
            return false;
        }
    }

    Formula operand(Formula (Parser::*rule)(), const char* op) {
        if (!starts_operand(cur().kind))
            fail_at(cur(), std::string("dangling binary operator '") + op + "': expected an operand, found " +
                               describe(cur()));
        return (this->*rule)();
    }

    Formula parse_unary() {
        DepthGuard guard(*this);
        const Token& t = cur();
        switch (t.kind) {
        case Tok::Not:
            ++i_;
            return neg(unary_operand("!"));
        case Tok::Next:
            ++i_;
            return next(unary_operand("X"));
        case Tok::Eventually:
            ++i_;
            return eventually(unary_operand("F"));
        case Tok::Always:
            ++i_;
            return always(unary_operand("G"));
        case Tok::DiamondSp: {
            Standpoint s(take().text);
            return diamond(s, unary_operand("<@s>"));
        }
        case Tok::BoxSp: {
            Standpoint s(take().text);
            return box(s, unary_operand("[@s]"));
        }
        default:
            return parse_atom();
        }
    }

    Formula unary_operand(const char* op) {
        if (!starts_operand(cur().kind))
            fail_at(cur(), std::string("operator '") + op + "' expects an operand, found " + describe(cur()));
        return parse_unary();
    }

    Formula parse_atom() {
        Token t = cur();
        switch (t.kind) {
        case Tok::True:
            ++i_;
            return top();
        case Tok::False:
            ++i_;
            return bottom();
        case Tok::Ident:
            ++i_;
            return prop(t.text);
        case Tok::Stand: {
            ++i_;
            if (!accept(Tok::Sharper))
                fail_at(cur(), "standpoint " + to_string(Standpoint(t.text)) +
                                   " must be followed by '<=' (sharpening atom)");
            if (cur().kind != Tok::Stand)
                fail_at(cur(), "expected a standpoint after '<=', found " + describe(cur()));
            Token rhs = take();
            return sharper(Standpoint(t.text), Standpoint(rhs.text));
        }
        case Tok::LParen: {
            ++i_;
            if (cur().kind == Tok::RParen)
                fail_at(cur(), "empty parentheses");
            Formula f = parse_iff();
            if (!accept(Tok::RParen)) {
                if (cur().kind == Tok::End)
                    fail_at(t, "unbalanced parentheses: '(' is never closed");
                fail_at(cur(), "expected ')', found " + describe(cur()));
            }
            return f;
        }
        case Tok::RParen:
            fail_at(t, "unbalanced parentheses: unexpected ')'");
        case Tok::End:
            fail_at(t, "unexpected end of input");
        default:
            fail_at(t, "dangling binary operator " + describe(t) + ": missing left operand");
        }
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    std::size_t depth_ = 0;
};

} // namespace

Formula parse(std::string_view text, const ParseOptions& opts) {
    Lexer lexer(text, opts);
    Parser parser(lexer.run());
    return parser.run();
}

} // namespace sltl
