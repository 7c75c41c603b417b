#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace numlab {

/// Variable name to value.
using Bindings = std::map<std::string, double, std::less<>>;

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Exp, Log, Sin, Cos, Tan, Sqrt };

/// Immutable real-valued expression tree.
///
/// Nodes are shared between copies, so an Expr is cheap to copy and safe to
/// read from several threads at once. Construct leaves with `constant` and
/// `variable`; compound nodes with `negate`, `binary`, `call` or the
/// arithmetic operators below (which build nodes verbatim, without folding).
class Expr {
public:
    enum class Kind { Constant, Variable, Negate, Binary, Call };

    static Expr constant(double value);
    static Expr variable(std::string name);
    static Expr negate(Expr child);
    static Expr binary(BinaryOp op, Expr left, Expr right);
    static Expr call(Func func, Expr arg);

    Kind kind() const noexcept;
    bool is_constant() const noexcept { return kind() == Kind::Constant; }
    bool is_constant(double v) const noexcept { return is_constant() && value() == v; }

    // Accessors are only meaningful for the matching kind.
    double value() const;
    const std::string& name() const;
    BinaryOp op() const;
    Func func() const;
    const Expr& child() const;  // Negate and Call
    const Expr& left() const;
    const Expr& right() const;

    /// Names of all variables appearing in the tree.
    std::set<std::string> variables() const;
    bool depends_on(std::string_view var) const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Expr operator-(Expr e);
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr pow(Expr base, Expr exponent);

const char* function_name(Func f) noexcept;

/// Parses the expression grammar documented in docs/grammar.md.
/// Throws SyntaxError (carrying the byte offset) on malformed input or an
/// unknown function name.
Expr parse(std::string_view text);

/// Throws UnboundVariable or DomainError; never returns NaN or infinity.
double evaluate(const Expr& e, const Bindings& bindings);

/// Convenience for the common one-variable case.
double evaluate(const Expr& e, std::string_view var, double x);

/// Symbolic derivative with respect to `var`, simplified.
/// Powers are differentiated when the exponent does not depend on `var`
/// (power rule) or the base is a positive constant (exponential rule);
/// any other power throws InvalidArgument.
Expr differentiate(const Expr& e, std::string_view var);

/// Constant folding plus x+0, x-0, 0-x, x*1, x*0, x/1, x^1, x^0 and -(-x).
Expr simplify(const Expr& e);

/// Precedence-correct text; parse(to_string(e)) evaluates identically to e.
std::string to_string(const Expr& e);

}  // namespace numlab
