#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace relmet {

/// Tiny arithmetic-expression compiler for weight functions of two
/// variables.  Grammar (infix, usual precedence, ^ right-associative):
///
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := unary ('^' factor)?
///   unary   := '-' unary | primary
///   primary := number | 'x' | 'y' | ident '(' expr (',' expr)* ')' | '(' expr ')'
///
/// Functions: pow(a,b), min(a,b), max(a,b), sqrt(a), exp(a), log(a), abs(a).
/// Compiles to a flat postfix program; evaluation is allocation-free.
class WeightExpr {
  public:
    explicit WeightExpr(const std::string& src) : src_(src) {
        pos_ = 0;
        parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
    }

    double operator()(double x, double y) const {
        std::vector<double> st;
        st.reserve(16);
        for (const Instr& in : prog_) {
            switch (in.op) {
                case Op::Push: st.push_back(in.value); break;
                case Op::X: st.push_back(x); break;
                case Op::Y: st.push_back(y); break;
                case Op::Neg: st.back() = -st.back(); break;
                case Op::Sqrt: st.back() = std::sqrt(st.back()); break;
                case Op::Exp: st.back() = std::exp(st.back()); break;
                case Op::Log: st.back() = std::log(st.back()); break;
                case Op::Abs: st.back() = std::abs(st.back()); break;
                default: {
                    double b = st.back();
                    st.pop_back();
                    double a = st.back();
                    switch (in.op) {
                        case Op::Add: st.back() = a + b; break;
                        case Op::SubOp: st.back() = a - b; break;
                        case Op::Mul: st.back() = a * b; break;
                        case Op::Div: st.back() = a / b; break;
                        case Op::Pow: st.back() = std::pow(a, b); break;
                        case Op::Min: st.back() = std::min(a, b); break;
                        case Op::Max: st.back() = std::max(a, b); break;
                        default: break;
                    }
                }
            }
        }
        return st.back();
    }

    const std::string& source() const { return src_; }

  private:
    enum class Op { Push, X, Y, Neg, Add, SubOp, Mul, Div, Pow, Min, Max, Sqrt, Exp, Log, Abs };
    struct Instr {
        Op op;
        double value = 0.0;
    };

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("weight expression: " + what + " at offset " +
                                    std::to_string(pos_) + " in \"" + src_ + "\"");
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void parse_expr() {
        parse_term();
        for (;;) {
            if (eat('+')) {
                parse_term();
                prog_.push_back({Op::Add});
            } else if (eat('-')) {
                parse_term();
                prog_.push_back({Op::SubOp});
            } else {
                return;
            }
        }
    }

    void parse_term() {
        parse_factor();
        for (;;) {
            if (eat('*')) {
                parse_factor();
                prog_.push_back({Op::Mul});
            } else if (eat('/')) {
                parse_factor();
                prog_.push_back({Op::Div});
            } else {
                return;
            }
        }
    }

    void parse_factor() {
        parse_unary();
        if (eat('^')) {
            parse_factor();
            prog_.push_back({Op::Pow});
        }
    }

    void parse_unary() {
        if (eat('-')) {
            parse_unary();
            prog_.push_back({Op::Neg});
        } else {
            parse_primary();
        }
    }

    void parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            prog_.push_back({Op::Push, v});
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            std::string name = src_.substr(start, pos_ - start);
            if (name == "x") { prog_.push_back({Op::X}); return; }
            if (name == "y") { prog_.push_back({Op::Y}); return; }
            if (name == "pi") { prog_.push_back({Op::Push, 3.14159265358979323846}); return; }
            if (name == "e") { prog_.push_back({Op::Push, 2.71828182845904523536}); return; }
            if (!eat('(')) fail("expected '(' after " + name);
            parse_expr();
            std::size_t args = 1;
            while (eat(',')) {
                parse_expr();
                ++args;
            }
            if (!eat(')')) fail("missing ')'");
            if (name == "pow" && args == 2) prog_.push_back({Op::Pow});
            else if (name == "min" && args == 2) prog_.push_back({Op::Min});
            else if (name == "max" && args == 2) prog_.push_back({Op::Max});
            else if (name == "sqrt" && args == 1) prog_.push_back({Op::Sqrt});
            else if (name == "exp" && args == 1) prog_.push_back({Op::Exp});
            else if (name == "log" && args == 1) prog_.push_back({Op::Log});
            else if (name == "abs" && args == 1) prog_.push_back({Op::Abs});
            else fail("unknown function or arity: " + name);
            return;
        }
        if (eat('(')) {
            parse_expr();
            if (!eat(')')) fail("missing ')'");
            return;
        }
        fail("unexpected character");
    }

    std::string src_;
    std::size_t pos_ = 0;
    std::vector<Instr> prog_;
};

}  // namespace relmet
