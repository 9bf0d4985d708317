#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "lemniscate/errors.hpp"

namespace lemniscate {

enum class NodeKind {
    Constant,
    Variable,
    ImaginaryUnit,
    Pi,
    Negate,
    Add,
    Subtract,
    Multiply,
    Divide,
    Power,
    Function,
};

enum class FunctionKind { Exp, Log, Sin, Cos, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// One AST node. Unary nodes (Negate, Function) use `lhs` only.
/// For Power, `rhs` is the exponent subtree and `exponent` its real value.
struct Node {
    NodeKind kind = NodeKind::Constant;
    double number = 0.0;
    FunctionKind function = FunctionKind::Exp;
    double exponent = 0.0;
    NodePtr lhs;
    NodePtr rhs;

    bool integer_exponent() const;
};

NodePtr make_constant(double value);
NodePtr make_variable();
NodePtr make_unary(NodeKind kind, NodePtr operand);
NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs);
NodePtr make_function(FunctionKind function, NodePtr argument);
/// Throws ParseError if the exponent depends on z or is not real.
NodePtr make_power(NodePtr base, NodePtr exponent);

std::string_view function_name(FunctionKind function);

/// Immutable expression tree in the variable z.
class Expression {
public:
    Expression() = default;
    explicit Expression(NodePtr root) : root_(std::move(root)) {}

    const Node& root() const { return *root_; }
    const NodePtr& root_ptr() const { return root_; }

    /// Principal branches for log, sqrt and non-integer powers.
    Complex eval(Complex z) const;

    /// Canonical, fully parenthesised form; parses back to an equal tree.
    std::string to_string() const;

    bool depends_on_z() const;

    friend bool operator==(const Expression& a, const Expression& b);

private:
    NodePtr root_;
};

bool structurally_equal(const Node& a, const Node& b);
bool depends_on_z(const Node& node);
Complex eval_node(const Node& node, Complex z);
std::string print_node(const Node& node);

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' unary)?
///   unary  := '-'? atom
///   atom   := number | 'z' | 'i' | 'pi' | ident '(' expr ')' | '(' expr ')'
/// Note that `-z^2` is `(-z)^2` under this grammar.
Expression parse_expression(std::string_view text);

}  // namespace lemniscate
