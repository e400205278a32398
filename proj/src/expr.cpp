#include "ineq/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>

namespace ineq {

namespace {

const std::map<std::string, Func, std::less<>>& function_table() {
    static const std::map<std::string, Func, std::less<>> table = {
        {"sin", Func::Sin},     {"cos", Func::Cos},     {"tan", Func::Tan},
        {"sinh", Func::Sinh},   {"cosh", Func::Cosh},   {"tanh", Func::Tanh},
        {"asin", Func::Asin},   {"acos", Func::Acos},   {"atan", Func::Atan},
        {"asinh", Func::Asinh}, {"atanh", Func::Atanh}, {"ln", Func::Ln},
        {"exp", Func::Exp},     {"sqrt", Func::Sqrt},   {"cbrt", Func::Cbrt},
        {"abs", Func::Abs},     {"pow", Func::Pow},     {"min", Func::Min},
        {"max", Func::Max},
    };
    return table;
}

const char* function_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Tan: return "tan";
        case Func::Sinh: return "sinh";
        case Func::Cosh: return "cosh";
        case Func::Tanh: return "tanh";
        case Func::Asin: return "asin";
        case Func::Acos: return "acos";
        case Func::Atan: return "atan";
        case Func::Asinh: return "asinh";
        case Func::Atanh: return "atanh";
        case Func::Ln: return "ln";
        case Func::Exp: return "exp";
        case Func::Sqrt: return "sqrt";
        case Func::Cbrt: return "cbrt";
        case Func::Abs: return "abs";
        case Func::Pow: return "pow";
        case Func::Min: return "min";
        case Func::Max: return "max";
    }
    return "?";
}

int function_arity(Func f) {
    switch (f) {
        case Func::Pow:
        case Func::Min:
        case Func::Max:
            return 2;
        default:
            return 1;
    }
}

// Declared variable / parameter names of the mini-language.
bool known_variable(const std::string& name) {
    return name == "x" || name == "y" || name == "u" || name == "t" ||
           name == "k" || name == "r" || name == "q";
}

// ---------------------------------------------------------------- lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen,
                 RParen, Comma, Semi, Less, LessEq, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t offset = 0;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r'))
            ++pos_;
        current_ = Token{};
        current_.offset = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            return;
        }
        const char c = text_[pos_];
        if (c >= '0' && c <= '9') {
            lex_number();
            return;
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   ((text_[end] >= 'a' && text_[end] <= 'z') ||
                    (text_[end] >= '0' && text_[end] <= '9') || text_[end] == '_'))
                ++end;
            current_.kind = Tok::Ident;
            current_.text = text_.substr(pos_, end - pos_);
            pos_ = end;
            return;
        }
        switch (c) {
            case '+': current_.kind = Tok::Plus; break;
            case '-': current_.kind = Tok::Minus; break;
            case '*': current_.kind = Tok::Star; break;
            case '/': current_.kind = Tok::Slash; break;
            case '^': current_.kind = Tok::Caret; break;
            case '(': current_.kind = Tok::LParen; break;
            case ')': current_.kind = Tok::RParen; break;
            case ',': current_.kind = Tok::Comma; break;
            case ';': current_.kind = Tok::Semi; break;
            case '<':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    current_.kind = Tok::LessEq;
                    ++pos_;
                } else {
                    current_.kind = Tok::Less;
                }
                break;
            default:
                throw SyntaxError("unexpected character '" + std::string(1, c) + "'",
                                  pos_, "a token");
        }
        ++pos_;
    }

    void lex_number() {
        std::size_t end = pos_;
        while (end < text_.size() && text_[end] >= '0' && text_[end] <= '9') ++end;
        if (end < text_.size() && text_[end] == '.') {
            ++end;
            if (end >= text_.size() || text_[end] < '0' || text_[end] > '9')
                throw SyntaxError("malformed number", end, "a digit");
            while (end < text_.size() && text_[end] >= '0' && text_[end] <= '9') ++end;
        }
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t mark = end + 1;
            if (mark < text_.size() && (text_[mark] == '+' || text_[mark] == '-')) ++mark;
            if (mark < text_.size() && text_[mark] >= '0' && text_[mark] <= '9') {
                ++mark;
                while (mark < text_.size() && text_[mark] >= '0' && text_[mark] <= '9')
                    ++mark;
                end = mark;
            }
        }
        current_.kind = Tok::Number;
        std::from_chars(text_.data() + pos_, text_.data() + end, current_.number);
        current_.text = text_.substr(pos_, end - pos_);
        pos_ = end;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token current_;
};

// --------------------------------------------------------------- parser

std::shared_ptr<Node> make_node(Node::Kind kind, std::size_t offset) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->offset = offset;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    RelationChain parse_chain() {
        RelationChain chain;
        chain.exprs.push_back(parse_sum());
        while (lex_.peek().kind == Tok::Less || lex_.peek().kind == Tok::LessEq) {
            chain.rels.push_back(lex_.take().kind == Tok::Less ? Rel::Less
                                                               : Rel::LessEq);
            chain.exprs.push_back(parse_sum());
        }
        expect_end();
        return chain;
    }

private:
    void expect_end() {
        if (lex_.peek().kind != Tok::End)
            throw SyntaxError("trailing input", lex_.peek().offset,
                              "end of input or a relation");
    }

    Token expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind)
            throw SyntaxError(std::string("expected ") + what, lex_.peek().offset,
                              what);
        return lex_.take();
    }

    ExprPtr parse_sum() {
        ExprPtr left = parse_term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            const Token t = lex_.take();
            // the operand is parsed before the braced list is formed to
            // keep the tree exception-safe on syntax errors
            ExprPtr rhs = parse_term();
            auto n = make_node(Node::Kind::Binary, t.offset);
            n->op = t.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
            n->args = {left, rhs};
            left = n;
        }
        return left;
    }

    ExprPtr parse_term() {
        ExprPtr left = parse_factor();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            const Token t = lex_.take();
            ExprPtr rhs = parse_factor();
            auto n = make_node(Node::Kind::Binary, t.offset);
            n->op = t.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
            n->args = {left, rhs};
            left = n;
        }
        return left;
    }

    // factor := "-" factor | atom ("^" factor)?   -- "^" binds above the
    // unary minus, so -x^2 reads as -(x^2).
    ExprPtr parse_factor() {
        if (lex_.peek().kind == Tok::Minus) {
            const Token t = lex_.take();
            ExprPtr operand = parse_factor();
            auto n = make_node(Node::Kind::Unary, t.offset);
            n->args = {operand};
            return n;
        }
        ExprPtr base = parse_atom();
        if (lex_.peek().kind == Tok::Caret) {
            const Token t = lex_.take();
            ExprPtr exponent = parse_factor();
            auto n = make_node(Node::Kind::Binary, t.offset);
            n->op = BinaryOp::Pow;
            n->args = {base, exponent};
            return n;
        }
        return base;
    }

    ExprPtr parse_atom() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Number: {
                lex_.take();
                auto n = make_node(Node::Kind::Number, t.offset);
                n->number = t.number;
                return n;
            }
            case Tok::LParen: {
                lex_.take();
                ExprPtr inner = parse_sum();
                expect(Tok::RParen, ")");
                return inner;
            }
            case Tok::Ident:
                return parse_ident();
            default:
                throw SyntaxError("expected an operand", t.offset, "an operand");
        }
    }

    ExprPtr parse_ident() {
        const Token t = lex_.take();
        if (lex_.peek().kind == Tok::LParen) {
            if (t.text == "mean") return parse_mean_call(t);
            return parse_call(t);
        }
        if (t.text == "pi" || t.text == "e") {
            auto n = make_node(Node::Kind::Constant, t.offset);
            n->constant = t.text == "pi" ? 'p' : 'e';
            return n;
        }
        if (!known_variable(t.text))
            throw UnknownIdentifierError("unknown identifier '" + t.text + "'",
                                         t.offset, t.text);
        auto n = make_node(Node::Kind::Variable, t.offset);
        n->name = t.text;
        return n;
    }

    ExprPtr parse_call(const Token& name) {
        const auto& table = function_table();
        const auto it = table.find(name.text);
        if (it == table.end())
            throw UnknownIdentifierError("unknown function '" + name.text + "'",
                                         name.offset, name.text);
        expect(Tok::LParen, "(");
        std::vector<ExprPtr> args;
        args.push_back(parse_sum());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            args.push_back(parse_sum());
        }
        expect(Tok::RParen, ")");
        const int want = function_arity(it->second);
        if (static_cast<int>(args.size()) != want)
            throw ArityError("function '" + name.text + "' expects " +
                                 std::to_string(want) + " argument(s)",
                             name.offset, name.text, want,
                             static_cast<int>(args.size()));
        auto n = make_node(Node::Kind::Call, name.offset);
        n->func = it->second;
        n->args = std::move(args);
        return n;
    }

    ExprPtr parse_mean_call(const Token& name) {
        expect(Tok::LParen, "(");
        const Token kind = expect(Tok::Ident, "a mean kind");
        MeanSpec spec;
        try {
            spec = mean_from_tag(kind.text);
        } catch (const std::domain_error&) {
            throw UnknownIdentifierError("unknown mean kind '" + kind.text + "'",
                                         kind.offset, kind.text);
        }
        expect(Tok::Semi, ";");
        ExprPtr first = parse_sum();
        expect(Tok::Comma, ",");
        ExprPtr second = parse_sum();
        expect(Tok::RParen, ")");
        auto n = make_node(Node::Kind::MeanCall, name.offset);
        n->mean = spec;
        n->args = {first, second};
        return n;
    }

    Lexer lex_;
};

// ------------------------------------------------------------ evaluator

[[noreturn]] void eval_fail(const Node& node, const std::string& msg) {
    ExprPtr self(&node, [](const Node*) {});  // non-owning view for format
    throw EvalError(msg, node.offset, format(self));
}

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

double eval_node(const Node& node, const Bindings& bindings) {
    switch (node.kind) {
        case Node::Kind::Number:
            return node.number;
        case Node::Kind::Constant:
            return node.constant == 'p' ? std::numbers::pi : std::numbers::e;
        case Node::Kind::Variable: {
            const double* v = bindings.find(node.name);
            if (!v) eval_fail(node, "unbound variable '" + node.name + "'");
            return *v;
        }
        case Node::Kind::Unary:
            return -eval_node(*node.args[0], bindings);
        case Node::Kind::Binary: {
            const double l = eval_node(*node.args[0], bindings);
            const double r = eval_node(*node.args[1], bindings);
            double out = 0.0;
            switch (node.op) {
                case BinaryOp::Add: out = l + r; break;
                case BinaryOp::Sub: out = l - r; break;
                case BinaryOp::Mul: out = l * r; break;
                case BinaryOp::Div:
                    if (r == 0.0) eval_fail(node, "division by zero");
                    out = l / r;
                    break;
                case BinaryOp::Pow:
                    if (l < 0.0 && !is_integer(r))
                        eval_fail(node, "negative base with non-integer exponent");
                    if (l == 0.0 && r < 0.0) eval_fail(node, "zero base with negative exponent");
                    out = std::pow(l, r);
                    break;
            }
            if (!std::isfinite(out)) eval_fail(node, "non-finite result");
            return out;
        }
        case Node::Kind::Call: {
            const double a = eval_node(*node.args[0], bindings);
            double out = 0.0;
            switch (node.func) {
                case Func::Sin: out = std::sin(a); break;
                case Func::Cos: out = std::cos(a); break;
                case Func::Tan: out = std::tan(a); break;
                case Func::Sinh: out = std::sinh(a); break;
                case Func::Cosh: out = std::cosh(a); break;
                case Func::Tanh: out = std::tanh(a); break;
                case Func::Asin:
                    if (std::fabs(a) > 1.0) eval_fail(node, "asin argument outside [-1, 1]");
                    out = std::asin(a);
                    break;
                case Func::Acos:
                    if (std::fabs(a) > 1.0) eval_fail(node, "acos argument outside [-1, 1]");
                    out = std::acos(a);
                    break;
                case Func::Atan: out = std::atan(a); break;
                case Func::Asinh: out = std::asinh(a); break;
                case Func::Atanh:
                    if (std::fabs(a) >= 1.0) eval_fail(node, "atanh argument outside (-1, 1)");
                    out = std::atanh(a);
                    break;
                case Func::Ln:
                    if (a <= 0.0) eval_fail(node, "ln of a non-positive value");
                    out = std::log(a);
                    break;
                case Func::Exp: out = std::exp(a); break;
                case Func::Sqrt:
                    if (a < 0.0) eval_fail(node, "sqrt of a negative value");
                    out = std::sqrt(a);
                    break;
                case Func::Cbrt: out = std::cbrt(a); break;
                case Func::Abs: out = std::fabs(a); break;
                case Func::Pow: {
                    const double b = eval_node(*node.args[1], bindings);
                    if (a < 0.0 && !is_integer(b))
                        eval_fail(node, "negative base with non-integer exponent");
                    if (a == 0.0 && b < 0.0) eval_fail(node, "zero base with negative exponent");
                    out = std::pow(a, b);
                    break;
                }
                case Func::Min: out = std::fmin(a, eval_node(*node.args[1], bindings)); break;
                case Func::Max: out = std::fmax(a, eval_node(*node.args[1], bindings)); break;
            }
            if (!std::isfinite(out)) eval_fail(node, "non-finite result");
            return out;
        }
        case Node::Kind::MeanCall: {
            const double a = eval_node(*node.args[0], bindings);
            const double b = eval_node(*node.args[1], bindings);
            if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
                eval_fail(node, "mean arguments must be positive");
            return mean_value(node.mean, PositivePair(a, b));
        }
    }
    throw std::logic_error("unreachable node kind");
}

// ------------------------------------------------------------ formatter

int node_prec(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Binary:
            switch (n.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
            return 1;
        case Node::Kind::Unary:
            return 3;
        default:
            return 5;
    }
}

std::string format_number(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void format_node(const Node& n, int min_prec, std::string& out) {
    const int prec = node_prec(n);
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (n.kind) {
        case Node::Kind::Number:
            out += format_number(n.number);
            break;
        case Node::Kind::Constant:
            out += n.constant == 'p' ? "pi" : "e";
            break;
        case Node::Kind::Variable:
            out += n.name;
            break;
        case Node::Kind::Unary:
            out += '-';
            format_node(*n.args[0], 3, out);
            break;
        case Node::Kind::Binary: {
            const char* sym = nullptr;
            int lhs_ctx = prec, rhs_ctx = prec + 1;
            switch (n.op) {
                case BinaryOp::Add: sym = " + "; break;
                case BinaryOp::Sub: sym = " - "; break;
                case BinaryOp::Mul: sym = "*"; break;
                case BinaryOp::Div: sym = "/"; break;
                case BinaryOp::Pow:
                    sym = "^";
                    lhs_ctx = 5;  // base must be an atom
                    rhs_ctx = 3;  // exponent is a factor (right-assoc)
                    break;
            }
            format_node(*n.args[0], lhs_ctx, out);
            out += sym;
            format_node(*n.args[1], rhs_ctx, out);
            break;
        }
        case Node::Kind::Call: {
            out += function_name(n.func);
            out += '(';
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) out += ", ";
                format_node(*n.args[i], 0, out);
            }
            out += ')';
            break;
        }
        case Node::Kind::MeanCall: {
            out += "mean(";
            out += mean_tag(n.mean.kind);
            out += "; ";
            format_node(*n.args[0], 0, out);
            out += ", ";
            format_node(*n.args[1], 0, out);
            out += ')';
            break;
        }
    }
    if (parens) out += ')';
}

}  // namespace

void Bindings::set(const std::string& name, double value) {
    for (auto& slot : slots_) {
        if (slot.first == name) {
            slot.second = value;
            return;
        }
    }
    slots_.emplace_back(name, value);
}

const double* Bindings::find(const std::string& name) const {
    for (const auto& slot : slots_) {
        if (slot.first == name) return &slot.second;
    }
    return nullptr;
}

RelationChain parse(const std::string& text) {
    Parser p(text);
    return p.parse_chain();
}

ExprPtr parse_expr(const std::string& text) {
    RelationChain chain = parse(text);
    if (chain.is_chain())
        throw SyntaxError("expected an expression, found a relation chain", 0,
                          "an expression without relations");
    return chain.exprs.front();
}

double eval_expr(const ExprPtr& expr, const Bindings& bindings) {
    return eval_node(*expr, bindings);
}

std::string format(const ExprPtr& expr) {
    std::string out;
    format_node(*expr, 0, out);
    return out;
}

std::string format(const RelationChain& chain) {
    std::string out;
    for (std::size_t i = 0; i < chain.exprs.size(); ++i) {
        if (i) out += chain.rels[i - 1] == Rel::Less ? " < " : " <= ";
        format_node(*chain.exprs[i], 0, out);
    }
    return out;
}

void collect_free_variables(const ExprPtr& expr, std::set<std::string>& out) {
    if (expr->kind == Node::Kind::Variable) out.insert(expr->name);
    for (const auto& arg : expr->args) collect_free_variables(arg, out);
}

std::set<std::string> free_variables(const RelationChain& chain) {
    std::set<std::string> vars;
    for (const auto& e : chain.exprs) collect_free_variables(e, vars);
    return vars;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Node::Kind::Number:
            if (!(a->number == b->number)) return false;
            break;
        case Node::Kind::Constant:
            if (a->constant != b->constant) return false;
            break;
        case Node::Kind::Variable:
            if (a->name != b->name) return false;
            break;
        case Node::Kind::Binary:
            if (a->op != b->op) return false;
            break;
        case Node::Kind::Call:
            if (a->func != b->func) return false;
            break;
        case Node::Kind::MeanCall:
            if (a->mean.kind != b->mean.kind ||
                a->mean.exponent != b->mean.exponent)
                return false;
            break;
        case Node::Kind::Unary:
            break;
    }
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    return true;
}

bool equal(const RelationChain& a, const RelationChain& b) {
    if (a.rels != b.rels || a.exprs.size() != b.exprs.size()) return false;
    for (std::size_t i = 0; i < a.exprs.size(); ++i)
        if (!equal(a.exprs[i], b.exprs[i])) return false;
    return true;
}

}  // namespace ineq
