#include "lemniscate/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>
#include <vector>

namespace lemniscate {

namespace {

constexpr int kMaxDepth = 256;

Complex integer_power(Complex base, long long n) {
    if (n < 0) {
        return Complex(1.0) / integer_power(base, -n);
    }
    Complex result(1.0);
    while (n > 0) {
        if (n & 1) {
            result *= base;
        }
        base *= base;
        n >>= 1;
    }
    return result;
}

std::string format_number(double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

bool is_atom(const Node& node) {
    switch (node.kind) {
        case NodeKind::Constant:
            return node.number >= 0.0 && !std::signbit(node.number);
        case NodeKind::Variable:
        case NodeKind::ImaginaryUnit:
        case NodeKind::Pi:
        case NodeKind::Function:
            return true;
        default:
            return false;
    }
}

std::string atom_text(const Node& node) {
    std::string text = print_node(node);
    // Binary nodes already print their own parentheses.
    if (is_atom(node) || text.front() == '(') {
        return text;
    }
    return "(" + text + ")";
}

// ---------------------------------------------------------------------------

enum class TokenKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokenKind kind;
    std::size_t position;
    std::string text;
    double number = 0.0;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j < text.size() && text[j] == '.') {
                ++j;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                    j = k;
                }
            }
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, value);
            if (ec != std::errc() || ptr != text.data() + j) {
                throw ParseError("malformed number '" + std::string(text.substr(i, j - i)) + "'", i);
            }
            tokens.push_back({TokenKind::Number, i, std::string(text.substr(i, j - i)), value});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
            tokens.push_back({TokenKind::Ident, i, std::string(text.substr(i, j - i))});
            i = j;
            continue;
        }
        TokenKind kind;
        switch (c) {
            case '+': kind = TokenKind::Plus; break;
            case '-': kind = TokenKind::Minus; break;
            case '*': kind = TokenKind::Star; break;
            case '/': kind = TokenKind::Slash; break;
            case '^': kind = TokenKind::Caret; break;
            case '(': kind = TokenKind::LParen; break;
            case ')': kind = TokenKind::RParen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        tokens.push_back({kind, i, std::string(1, c)});
        ++i;
    }
    tokens.push_back({TokenKind::End, text.size(), ""});
    return tokens;
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    NodePtr parse() {
        NodePtr root = expr();
        if (peek().kind != TokenKind::End) {
            throw ParseError("unexpected '" + peek().text + "'", peek().position);
        }
        return root;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    void expect(TokenKind kind, const char* what) {
        if (peek().kind != kind) {
            const std::string found = peek().kind == TokenKind::End ? "end of input" : "'" + peek().text + "'";
            throw ParseError(std::string("expected ") + what + ", found " + found, peek().position);
        }
        ++pos_;
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxDepth) {
                throw ParseError("expression nested too deeply", parser.peek().position);
            }
        }
        ~DepthGuard() { --parser.depth_; }
        Parser& parser;
    };

    NodePtr expr() {
        DepthGuard guard(*this);
        NodePtr lhs = term();
        while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
            const NodeKind kind = next().kind == TokenKind::Plus ? NodeKind::Add : NodeKind::Subtract;
            lhs = make_binary(kind, lhs, term());
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash) {
            const NodeKind kind = next().kind == TokenKind::Star ? NodeKind::Multiply : NodeKind::Divide;
            lhs = make_binary(kind, lhs, factor());
        }
        return lhs;
    }

    NodePtr factor() {
        NodePtr base = unary();
        if (peek().kind == TokenKind::Caret) {
            const std::size_t at = next().position;
            NodePtr exponent = unary();
            try {
                return make_power(base, exponent);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), at);
            }
        }
        return base;
    }

    NodePtr unary() {
        if (peek().kind == TokenKind::Minus) {
            next();
            return make_unary(NodeKind::Negate, atom());
        }
        return atom();
    }

    NodePtr atom() {
        const Token& token = peek();
        switch (token.kind) {
            case TokenKind::Number:
                next();
                return make_constant(token.number);
            case TokenKind::LParen: {
                next();
                NodePtr inner = expr();
                expect(TokenKind::RParen, "')'");
                return inner;
            }
            case TokenKind::Ident:
                return identifier();
            default: {
                const std::string found = token.kind == TokenKind::End ? "end of input" : "'" + token.text + "'";
                throw ParseError("expected operand, found " + found, token.position);
            }
        }
    }

    NodePtr identifier() {
        const Token token = next();
        if (token.text == "z") return make_variable();
        if (token.text == "i") {
            auto node = std::make_shared<Node>();
            node->kind = NodeKind::ImaginaryUnit;
            return node;
        }
        if (token.text == "pi") {
            auto node = std::make_shared<Node>();
            node->kind = NodeKind::Pi;
            return node;
        }
        static constexpr std::pair<std::string_view, FunctionKind> kFunctions[] = {
            {"exp", FunctionKind::Exp}, {"log", FunctionKind::Log}, {"sin", FunctionKind::Sin},
            {"cos", FunctionKind::Cos}, {"sqrt", FunctionKind::Sqrt},
        };
        for (const auto& [name, kind] : kFunctions) {
            if (token.text == name) {
                expect(TokenKind::LParen, "'(' after function name");
                NodePtr argument = expr();
                expect(TokenKind::RParen, "')'");
                return make_function(kind, argument);
            }
        }
        throw ParseError("unknown identifier '" + token.text + "'", token.position);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

}  // namespace

bool Node::integer_exponent() const {
    return kind == NodeKind::Power && std::isfinite(exponent) && exponent == std::round(exponent) &&
           std::abs(exponent) < 1e9;
}

NodePtr make_constant(double value) {
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Constant;
    node->number = value;
    return node;
}

NodePtr make_variable() {
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Variable;
    return node;
}

NodePtr make_unary(NodeKind kind, NodePtr operand) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->lhs = std::move(operand);
    return node;
}

NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

NodePtr make_function(FunctionKind function, NodePtr argument) {
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Function;
    node->function = function;
    node->lhs = std::move(argument);
    return node;
}

NodePtr make_power(NodePtr base, NodePtr exponent) {
    if (lemniscate::depends_on_z(*exponent)) {
        throw ParseError("exponent must be a real constant, not a function of z");
    }
    const Complex value = eval_node(*exponent, Complex(0.0));
    if (value.imag() != 0.0 || !std::isfinite(value.real())) {
        throw ParseError("exponent must be a finite real constant");
    }
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Power;
    node->lhs = std::move(base);
    node->rhs = std::move(exponent);
    node->exponent = value.real();
    return node;
}

std::string_view function_name(FunctionKind function) {
    switch (function) {
        case FunctionKind::Exp: return "exp";
        case FunctionKind::Log: return "log";
        case FunctionKind::Sin: return "sin";
        case FunctionKind::Cos: return "cos";
        case FunctionKind::Sqrt: return "sqrt";
    }
    return "?";
}

bool structurally_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Constant:
            return a.number == b.number;
        case NodeKind::Variable:
        case NodeKind::ImaginaryUnit:
        case NodeKind::Pi:
            return true;
        case NodeKind::Negate:
            return structurally_equal(*a.lhs, *b.lhs);
        case NodeKind::Function:
            return a.function == b.function && structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

bool depends_on_z(const Node& node) {
    switch (node.kind) {
        case NodeKind::Variable:
            return true;
        case NodeKind::Constant:
        case NodeKind::ImaginaryUnit:
        case NodeKind::Pi:
            return false;
        case NodeKind::Negate:
        case NodeKind::Function:
            return depends_on_z(*node.lhs);
        case NodeKind::Power:
            return depends_on_z(*node.lhs);
        default:
            return depends_on_z(*node.lhs) || depends_on_z(*node.rhs);
    }
}

Complex eval_node(const Node& node, Complex z) {
    switch (node.kind) {
        case NodeKind::Constant: return Complex(node.number);
        case NodeKind::Variable: return z;
        case NodeKind::ImaginaryUnit: return Complex(0.0, 1.0);
        case NodeKind::Pi: return Complex(std::numbers::pi);
        case NodeKind::Negate: return -eval_node(*node.lhs, z);
        case NodeKind::Add: return eval_node(*node.lhs, z) + eval_node(*node.rhs, z);
        case NodeKind::Subtract: return eval_node(*node.lhs, z) - eval_node(*node.rhs, z);
        case NodeKind::Multiply: return eval_node(*node.lhs, z) * eval_node(*node.rhs, z);
        case NodeKind::Divide: return eval_node(*node.lhs, z) / eval_node(*node.rhs, z);
        case NodeKind::Power: {
            const Complex base = eval_node(*node.lhs, z);
            if (node.integer_exponent()) {
                return integer_power(base, static_cast<long long>(node.exponent));
            }
            return std::pow(base, node.exponent);
        }
        case NodeKind::Function: {
            const Complex arg = eval_node(*node.lhs, z);
            switch (node.function) {
                case FunctionKind::Exp: return std::exp(arg);
                case FunctionKind::Log: return std::log(arg);
                case FunctionKind::Sin: return std::sin(arg);
                case FunctionKind::Cos: return std::cos(arg);
                case FunctionKind::Sqrt: return std::sqrt(arg);
            }
        }
    }
    return Complex(std::nan(""), std::nan(""));
}

std::string print_node(const Node& node) {
    switch (node.kind) {
        case NodeKind::Constant:
            if (std::signbit(node.number)) {
                return "(-" + format_number(-node.number) + ")";
            }
            return format_number(node.number);
        case NodeKind::Variable: return "z";
        case NodeKind::ImaginaryUnit: return "i";
        case NodeKind::Pi: return "pi";
        case NodeKind::Negate: return "-" + atom_text(*node.lhs);
        case NodeKind::Function:
            return std::string(function_name(node.function)) + "(" + print_node(*node.lhs) + ")";
        case NodeKind::Power:
            return "(" + atom_text(*node.lhs) + "^" + atom_text(*node.rhs) + ")";
        case NodeKind::Add:
        case NodeKind::Subtract:
        case NodeKind::Multiply:
        case NodeKind::Divide: {
            const char op = node.kind == NodeKind::Add        ? '+'
                            : node.kind == NodeKind::Subtract ? '-'
                            : node.kind == NodeKind::Multiply ? '*'
                                                              : '/';
            return "(" + print_node(*node.lhs) + op + print_node(*node.rhs) + ")";
        }
    }
    return "?";
}

Complex Expression::eval(Complex z) const { return eval_node(*root_, z); }

std::string Expression::to_string() const { return print_node(*root_); }

bool Expression::depends_on_z() const { return lemniscate::depends_on_z(*root_); }

bool operator==(const Expression& a, const Expression& b) {
    if (!a.root_ || !b.root_) return a.root_ == b.root_;
    return structurally_equal(*a.root_, *b.root_);
}

Expression parse_expression(std::string_view text) { return Expression(Parser(text).parse()); }

}  // namespace lemniscate
