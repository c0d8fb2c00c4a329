#include "singlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

namespace singlab {

namespace {
enum OpCode {
    kPush = 0, kLoad, kAdd, kSub, kMul, kDiv, kPow, kNeg,
    kSin, kCos, kTan, kExp, kLog, kLog2, kSqrt, kAbs, kSign, kMin, kMax
};

const std::map<std::string, int>& unary_funcs() {
    static const std::map<std::string, int> m = {
        {"sin", kSin}, {"cos", kCos}, {"tan", kTan}, {"exp", kExp},
        {"log", kLog}, {"log2", kLog2}, {"sqrt", kSqrt}, {"abs", kAbs},
        {"sign", kSign},
    };
    return m;
}
}  // namespace

class ExprParser {
public:
    ExprParser(const std::string& s, const std::vector<std::string>& vars,
               std::vector<Expr::Instr>& out)
        : s_(s), vars_(vars), out_(out) {}

    void parse() {
        expression();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters");
    }

private:
    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::vector<Expr::Instr>& out_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("expression error at position " +
                                    std::to_string(pos_) + ": " + msg + " in '" + s_ + "'");
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void expression() {
        term();
        for (;;) {
            if (consume('+')) { term(); emit(kAdd); }
            else if (consume('-')) { term(); emit(kSub); }
            else break;
        }
    }
    void term() {
        factor();
        for (;;) {
            if (consume('*')) { factor(); emit(kMul); }
            else if (consume('/')) { factor(); emit(kDiv); }
            else break;
        }
    }
    void factor() {
        // right-associative power binds tighter than unary minus on the left
        if (consume('-')) { factor(); emit(kNeg); return; }
        primary();
        if (consume('^')) { factor(); emit(kPow); }
    }
    void primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            double v = std::strtod(s_.c_str() + pos_, &end);
            pos_ = end - s_.c_str();
            emit_push(v);
            return;
        }
        if (c == '(') {
            ++pos_;
            expression();
            if (!consume(')')) fail("expected ')'");
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = ident();
            if (name == "pi") { emit_push(M_PI); return; }
            if (name == "e") { emit_push(M_E); return; }
            if (peek() == '(') {
                consume('(');
                auto it = unary_funcs().find(name);
                if (it != unary_funcs().end()) {
                    expression();
                    if (!consume(')')) fail("expected ')'");
                    emit(it->second);
                    return;
                }
                if (name == "min" || name == "max" || name == "pow") {
                    expression();
                    if (!consume(',')) fail("expected ','");
                    expression();
                    if (!consume(')')) fail("expected ')'");
                    emit(name == "min" ? kMin : name == "max" ? kMax : kPow);
                    return;
                }
                fail("unknown function '" + name + "'");
            }
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (vars_[i] == name) {
                    out_.push_back({kLoad, static_cast<double>(i)});
                    return;
                }
            }
            fail("unknown identifier '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
    std::string ident() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }
    void emit(int op) { out_.push_back({op, 0.0}); }
    void emit_push(double v) { out_.push_back({kPush, v}); }
};

Expr::Expr(const std::string& text, std::vector<std::string> variables)
    : text_(text), vars_(std::move(variables)) {
    ExprParser(text_, vars_, prog_).parse();
}

double Expr::eval(std::span<const double> args) const {
    double stack[64];
    int top = -1;
    for (const Instr& in : prog_) {
        switch (in.op) {
            case kPush: stack[++top] = in.value; break;
            case kLoad: stack[++top] = args[static_cast<std::size_t>(in.value)]; break;
            case kAdd: --top; stack[top] += stack[top + 1]; break;
            case kSub: --top; stack[top] -= stack[top + 1]; break;
            case kMul: --top; stack[top] *= stack[top + 1]; break;
            case kDiv: --top; stack[top] /= stack[top + 1]; break;
            case kPow: --top; stack[top] = std::pow(stack[top], stack[top + 1]); break;
            case kNeg: stack[top] = -stack[top]; break;
            case kSin: stack[top] = std::sin(stack[top]); break;
            case kCos: stack[top] = std::cos(stack[top]); break;
            case kTan: stack[top] = std::tan(stack[top]); break;
            case kExp: stack[top] = std::exp(stack[top]); break;
            case kLog: stack[top] = std::log(stack[top]); break;
            case kLog2: stack[top] = std::log2(stack[top]); break;
            case kSqrt: stack[top] = std::sqrt(stack[top]); break;
            case kAbs: stack[top] = std::fabs(stack[top]); break;
            case kSign:
                stack[top] = stack[top] > 0 ? 1.0 : stack[top] < 0 ? -1.0 : 0.0;
                break;
            case kMin: --top; stack[top] = std::min(stack[top], stack[top + 1]); break;
            case kMax: --top; stack[top] = std::max(stack[top], stack[top + 1]); break;
        }
    }
    return stack[0];
}

}  // namespace singlab
