#pragma once

// Tiny arithmetic expression compiler for config-supplied formulas
// (omega on the sphere, radial factors h(t), weight profiles).
// Grammar: + - * / ^, parentheses, unary minus, named variables,
// functions sin cos tan exp log log2 sqrt abs sign min max pow,
// constants pi and e.

#include <span>
#include <string>
#include <vector>

namespace singlab {

class Expr {
public:
    // Compiles `text` against the given variable names. Throws
    // std::invalid_argument with a position diagnostic on parse errors.
    Expr(const std::string& text, std::vector<std::string> variables);

    double eval(std::span<const double> args) const;
    const std::string& text() const { return text_; }

private:
    enum class Op : int;
    struct Instr {
        int op;
        double value;  // literal payload or variable index
    };
    std::string text_;
    std::vector<std::string> vars_;
    std::vector<Instr> prog_;

    friend class ExprParser;
};

}  // namespace singlab
