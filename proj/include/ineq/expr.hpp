#ifndef INEQ_EXPR_HPP
#define INEQ_EXPR_HPP

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ineq/means.hpp"

namespace ineq {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

enum class Func {
    Sin, Cos, Tan, Sinh, Cosh, Tanh,
    Asin, Acos, Atan, Asinh, Atanh,
    Ln, Exp, Sqrt, Cbrt, Abs,
    Pow, Min, Max
};

struct Node;
using ExprPtr = std::shared_ptr<const Node>;

// Immutable parse-tree node. Trees are never mutated after construction
// and are safe to share across threads.
struct Node {
    enum class Kind { Number, Constant, Variable, Unary, Binary, Call, MeanCall };

    Kind kind = Kind::Number;
    std::size_t offset = 0;      // byte offset in the source text
    double number = 0.0;         // Number
    char constant = 'p';         // Constant: 'p' = pi, 'e' = e
    std::string name;            // Variable
    Func func = Func::Sin;       // Call
    BinaryOp op = BinaryOp::Add; // Binary
    MeanSpec mean;               // MeanCall
    std::vector<ExprPtr> args;   // Unary: 1, Binary: 2, Call: arity, MeanCall: 2
};

enum class Rel { Less, LessEq };

// A parsed chain e0 rel0 e1 rel1 ... ; a bare expression is a chain with
// a single member and no relations.
struct RelationChain {
    std::vector<ExprPtr> exprs;
    std::vector<Rel> rels;

    bool is_chain() const { return !rels.empty(); }
};

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::string msg, std::size_t off)
        : std::runtime_error(std::move(msg)), offset(off) {}
};

struct SyntaxError : ParseError {
    std::string expected;  // expected-token set, e.g. ")" or "an operand"
    SyntaxError(std::string msg, std::size_t off, std::string exp)
        : ParseError(std::move(msg), off), expected(std::move(exp)) {}
};

struct UnknownIdentifierError : ParseError {
    std::string ident;
    UnknownIdentifierError(std::string msg, std::size_t off, std::string id)
        : ParseError(std::move(msg), off), ident(std::move(id)) {}
};

struct ArityError : ParseError {
    std::string func;
    int expected_arity;
    int got;
    ArityError(std::string msg, std::size_t off, std::string f, int want, int have)
        : ParseError(std::move(msg), off), func(std::move(f)),
          expected_arity(want), got(have) {}
};

struct EvalError : std::runtime_error {
    std::size_t offset;            // offset of the offending node
    std::string node_text;         // formatted offending subexpression
    EvalError(std::string msg, std::size_t off, std::string node)
        : std::runtime_error(std::move(msg)), offset(off),
          node_text(std::move(node)) {}
};

// Variable bindings for evaluation; a handful of names at most.
class Bindings {
public:
    void set(const std::string& name, double value);
    const double* find(const std::string& name) const;

private:
    std::vector<std::pair<std::string, double>> slots_;
};

RelationChain parse(const std::string& text);
// Like parse() but rejects relation chains.
ExprPtr parse_expr(const std::string& text);

double eval_expr(const ExprPtr& expr, const Bindings& bindings);

std::string format(const ExprPtr& expr);
std::string format(const RelationChain& chain);

void collect_free_variables(const ExprPtr& expr, std::set<std::string>& out);
std::set<std::string> free_variables(const RelationChain& chain);

// Structural equality of parse trees (numbers compared bit-exactly).
bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const RelationChain& a, const RelationChain& b);

}  // namespace ineq

#endif
