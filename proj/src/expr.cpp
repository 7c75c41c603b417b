#include "numlab/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "numlab/error.hpp"

namespace numlab {

struct Expr::Node {
    Kind kind;
    double value = 0.0;
    std::string name;
    BinaryOp op = BinaryOp::Add;
    Func func = Func::Exp;
    std::vector<Expr> children;
};

Expr Expr::constant(double value) {
    if (!std::isfinite(value)) throw DomainError("non-finite constant");
    return Expr(std::make_shared<const Node>(Node{Kind::Constant, value, {}, {}, {}, {}}));
}

Expr Expr::variable(std::string name) {
    if (name.empty()) throw InvalidArgument("variable name must be nonempty");
    return Expr(std::make_shared<const Node>(Node{Kind::Variable, 0.0, std::move(name), {}, {}, {}}));
}

Expr Expr::negate(Expr child) {
    return Expr(std::make_shared<const Node>(Node{Kind::Negate, 0.0, {}, {}, {}, {std::move(child)}}));
}

Expr Expr::binary(BinaryOp op, Expr left, Expr right) {
    return Expr(std::make_shared<const Node>(
        Node{Kind::Binary, 0.0, {}, op, {}, {std::move(left), std::move(right)}}));
}

Expr Expr::call(Func func, Expr arg) {
    return Expr(std::make_shared<const Node>(Node{Kind::Call, 0.0, {}, {}, func, {std::move(arg)}}));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
BinaryOp Expr::op() const { return node_->op; }
Func Expr::func() const { return node_->func; }
const Expr& Expr::child() const { return node_->children.at(0); }
const Expr& Expr::left() const { return node_->children.at(0); }
const Expr& Expr::right() const { return node_->children.at(1); }

namespace {

void collect_variables(const Expr& e, std::set<std::string>& out) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return;
        case Expr::Kind::Variable: out.insert(e.name()); return;
        case Expr::Kind::Negate:
        case Expr::Kind::Call: collect_variables(e.child(), out); return;
        case Expr::Kind::Binary:
            collect_variables(e.left(), out);
            collect_variables(e.right(), out);
            return;
    }
}

}  // namespace

std::set<std::string> Expr::variables() const {
    std::set<std::string> out;
    collect_variables(*this, out);
    return out;
}

bool Expr::depends_on(std::string_view var) const {
    switch (kind()) {
        case Kind::Constant: return false;
        case Kind::Variable: return name() == var;
        case Kind::Negate:
        case Kind::Call: return child().depends_on(var);
        case Kind::Binary: return left().depends_on(var) || right().depends_on(var);
    }
    return false;
}

Expr operator-(Expr e) { return Expr::negate(std::move(e)); }
Expr operator+(Expr a, Expr b) { return Expr::binary(BinaryOp::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(BinaryOp::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(BinaryOp::Mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(BinaryOp::Div, std::move(a), std::move(b)); }
Expr pow(Expr base, Expr exponent) {
    return Expr::binary(BinaryOp::Pow, std::move(base), std::move(exponent));
}

namespace {

struct FuncEntry {
    std::string_view name;
    Func func;
};

constexpr std::array<FuncEntry, 6> kFunctions{{
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"sqrt", Func::Sqrt},
}};

std::optional<Func> lookup_function(std::string_view name) {
    for (const auto& entry : kFunctions)
        if (entry.name == name) return entry.func;
    return std::nullopt;
}

}  // namespace

const char* function_name(Func f) noexcept {
    for (const auto& entry : kFunctions)
        if (entry.func == f) return entry.name.data();
    return "?";
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        skip_space();
        if (at_end()) fail("empty expression");
        Expr e = parse_sum();
        skip_space();
        if (!at_end()) unexpected();
        return e;
    }

private:
    // sum := product (('+' | '-') product)*
    Expr parse_sum() {
        Expr lhs = parse_product();
        for (;;) {
            skip_space();
            if (accept('+')) lhs = lhs + parse_product();
            else if (accept('-')) lhs = lhs - parse_product();
            else return lhs;
        }
    }

    // product := unary (('*' | '/') unary)*
    Expr parse_product() {
        Expr lhs = parse_unary();
        for (;;) {
            skip_space();
            if (accept('*')) lhs = lhs * parse_unary();
            else if (accept('/')) lhs = lhs / parse_unary();
            else return lhs;
        }
    }

    // unary := '-' unary | power
    Expr parse_unary() {
        skip_space();
        if (accept('-')) return -parse_unary();
        return parse_power();
    }

    // power := atom ('^' unary)?     right-associative through unary
    Expr parse_power() {
        Expr base = parse_atom();
        skip_space();
        if (accept('^')) return pow(std::move(base), parse_unary());
        return base;
    }

    Expr parse_atom() {
        skip_space();
        if (at_end()) fail("unexpected end of input");
        const char c = peek();
        if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1])))
            return parse_number();
        if (is_ident_start(c)) return parse_identifier();
        if (accept('(')) {
            Expr inner = parse_sum();
            skip_space();
            if (!accept(')')) expected("')'");
            return inner;
        }
        unexpected();
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        while (!at_end() && is_digit(peek())) ++pos_;
        if (!at_end() && peek() == '.') {
            ++pos_;
            while (!at_end() && is_digit(peek())) ++pos_;
        }
        // Exponent only when a digit follows, so "2e" is not swallowed.
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && is_digit(text_[p])) {
                pos_ = p;
                while (!at_end() && is_digit(peek())) ++pos_;
            }
        }
        double value = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
            pos_ = start;
            fail("invalid number literal");
        }
        return Expr::constant(value);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (!at_end() && is_ident_char(peek())) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        skip_space();
        if (!at_end() && peek() == '(') {
            const auto func = lookup_function(name);
            if (!func) {
                pos_ = start;
                fail("unknown function '" + std::string(name) + "'");
            }
            ++pos_;
            Expr arg = parse_sum();
            skip_space();
            if (!accept(')')) expected("')'");
            return Expr::call(*func, std::move(arg));
        }
        if (name == "pi") return Expr::constant(std::numbers::pi);
        if (name == "e") return Expr::constant(std::numbers::e);
        if (lookup_function(name)) {
            pos_ = start + name.size();
            expected("'(' after function name");
        }
        return Expr::variable(std::string(name));
    }

    void skip_space() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
            ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    bool accept(char c) {
        if (!at_end() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw SyntaxError("syntax error: " + message, pos_ + 1);
    }
    [[noreturn]] void unexpected() const {
        if (at_end()) fail("unexpected end of input");
        fail(std::string("unexpected '") + peek() + "'");
    }
    [[noreturn]] void expected(const std::string& what) const {
        fail("expected " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
    return v;
}

double apply_binary(BinaryOp op, double a, double b) {
    switch (op) {
        case BinaryOp::Add: return checked(a + b, "addition");
        case BinaryOp::Sub: return checked(a - b, "subtraction");
        case BinaryOp::Mul: return checked(a * b, "multiplication");
        case BinaryOp::Div:
            if (b == 0.0) throw DomainError("division by zero");
            return checked(a / b, "division");
        case BinaryOp::Pow:
            if (a == 0.0 && b < 0.0) throw DomainError("division by zero (zero to a negative power)");
            if (a < 0.0 && b != std::trunc(b))
                throw DomainError("negative base raised to a non-integer power");
            return checked(std::pow(a, b), "power");
    }
    return 0.0;
}

double apply_function(Func f, double x) {
    switch (f) {
        case Func::Exp: return checked(std::exp(x), "exp");
        case Func::Log:
            if (x <= 0.0) throw DomainError("log of a non-positive number");
            return std::log(x);
        case Func::Sin: return checked(std::sin(x), "sin");
        case Func::Cos: return checked(std::cos(x), "cos");
        case Func::Tan: return checked(std::tan(x), "tan");
        case Func::Sqrt:
            if (x < 0.0) throw DomainError("sqrt of a negative number");
            return std::sqrt(x);
    }
    return 0.0;
}

}  // namespace

double evaluate(const Expr& e, const Bindings& bindings) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return e.value();
        case Expr::Kind::Variable: {
            auto it = bindings.find(e.name());
            if (it == bindings.end()) throw UnboundVariable(e.name());
            return it->second;
        }
        case Expr::Kind::Negate: return -evaluate(e.child(), bindings);
        case Expr::Kind::Binary:
            return apply_binary(e.op(), evaluate(e.left(), bindings), evaluate(e.right(), bindings));
        case Expr::Kind::Call: return apply_function(e.func(), evaluate(e.child(), bindings));
    }
    return 0.0;
}

double evaluate(const Expr& e, std::string_view var, double x) {
    Bindings b;
    b.emplace(std::string(var), x);
    return evaluate(e, b);
}

// ---------------------------------------------------------------------------
// Simplification
// ---------------------------------------------------------------------------

namespace {

std::optional<double> try_fold(const Expr& e) {
    try {
        return evaluate(e, Bindings{});
    } catch (const Error&) {
        return std::nullopt;
    }
}

Expr simplify_negate(Expr child) {
    if (child.is_constant()) return Expr::constant(-child.value());
    if (child.kind() == Expr::Kind::Negate) return child.child();
    return -child;
}

}  // namespace

Expr simplify(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable: return e;
        case Expr::Kind::Negate: return simplify_negate(simplify(e.child()));
        case Expr::Kind::Call: {
            Expr arg = simplify(e.child());
            Expr out = Expr::call(e.func(), arg);
            if (arg.is_constant())
                if (auto v = try_fold(out)) return Expr::constant(*v);
            return out;
        }
        case Expr::Kind::Binary: break;
    }

    Expr l = simplify(e.left());
    Expr r = simplify(e.right());
    Expr out = Expr::binary(e.op(), l, r);
    if (l.is_constant() && r.is_constant())
        if (auto v = try_fold(out)) return Expr::constant(*v);

    switch (e.op()) {
        case BinaryOp::Add:
            if (l.is_constant(0.0)) return r;
            if (r.is_constant(0.0)) return l;
            break;
        case BinaryOp::Sub:
            if (r.is_constant(0.0)) return l;
            if (l.is_constant(0.0)) return simplify_negate(r);
            break;
        case BinaryOp::Mul:
            if (l.is_constant(0.0) || r.is_constant(0.0)) return Expr::constant(0.0);
            if (l.is_constant(1.0)) return r;
            if (r.is_constant(1.0)) return l;
            break;
        case BinaryOp::Div:
            if (r.is_constant(1.0)) return l;
            break;
        case BinaryOp::Pow:
            if (r.is_constant(1.0)) return l;
            if (r.is_constant(0.0)) return Expr::constant(1.0);
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

namespace {

Expr c(double v) { return Expr::constant(v); }

Expr derive(const Expr& e, std::string_view var) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return c(0.0);
        case Expr::Kind::Variable: return c(e.name() == var ? 1.0 : 0.0);
        case Expr::Kind::Negate: return -derive(e.child(), var);
        case Expr::Kind::Call: {
            const Expr& u = e.child();
            const Expr du = derive(u, var);
            switch (e.func()) {
                case Func::Exp: return du * e;
                case Func::Log: return du / u;
                case Func::Sin: return du * Expr::call(Func::Cos, u);
                case Func::Cos: return -(du * Expr::call(Func::Sin, u));
                case Func::Tan: return du / pow(Expr::call(Func::Cos, u), c(2.0));
                case Func::Sqrt: return du / (c(2.0) * e);
            }
            break;
        }
        case Expr::Kind::Binary: break;
    }

    const Expr& a = e.left();
    const Expr& b = e.right();
    switch (e.op()) {
        case BinaryOp::Add: return derive(a, var) + derive(b, var);
        case BinaryOp::Sub: return derive(a, var) - derive(b, var);
        case BinaryOp::Mul: return derive(a, var) * b + a * derive(b, var);
        case BinaryOp::Div:
            return (derive(a, var) * b - a * derive(b, var)) / pow(b, c(2.0));
        case BinaryOp::Pow:
            if (!b.depends_on(var)) {
                // d/dx u^n = n * u^(n-1) * u'
                return b * pow(a, b - c(1.0)) * derive(a, var);
            }
            if (a.is_constant() && a.value() > 0.0) {
                // d/dx a^v = a^v * ln(a) * v'
                if (a.value() == std::numbers::e) return e * derive(b, var);
                return e * c(std::log(a.value())) * derive(b, var);
            }
            throw InvalidArgument("cannot differentiate '" + to_string(e) +
                                  "': exponent depends on '" + std::string(var) +
                                  "' and the base is not a positive constant");
    }
    return c(0.0);
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) { return simplify(derive(e, var)); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

constexpr int kPrecSum = 1;
constexpr int kPrecProduct = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecPower = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return std::signbit(e.value()) ? kPrecUnary : kPrecAtom;
        case Expr::Kind::Variable:
        case Expr::Kind::Call: return kPrecAtom;
        case Expr::Kind::Negate: return kPrecUnary;
        case Expr::Kind::Binary:
            switch (e.op()) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return kPrecSum;
                case BinaryOp::Mul:
                case BinaryOp::Div: return kPrecProduct;
                case BinaryOp::Pow: return kPrecPower;
            }
    }
    return kPrecAtom;
}

std::string format_constant(double v) {
    if (v == std::numbers::pi) return "pi";
    if (v == std::numbers::e) return "e";
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string& out) {
    if (parens) out += '(';
    print(e, out);
    if (parens) out += ')';
}

void print(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::Constant: out += format_constant(e.value()); return;
        case Expr::Kind::Variable: out += e.name(); return;
        case Expr::Kind::Negate:
            out += '-';
            print_wrapped(e.child(), precedence(e.child()) <= kPrecUnary, out);
            return;
        case Expr::Kind::Call:
            out += function_name(e.func());
            print_wrapped(e.child(), true, out);
            return;
        case Expr::Kind::Binary: break;
    }

    const int p = precedence(e);
    const int lp = precedence(e.left());
    const int rp = precedence(e.right());
    if (e.op() == BinaryOp::Pow) {
        print_wrapped(e.left(), lp <= kPrecPower, out);
        out += '^';
        print_wrapped(e.right(), rp < kPrecPower, out);
        return;
    }
    print_wrapped(e.left(), lp < p, out);
    switch (e.op()) {
        case BinaryOp::Add: out += " + "; break;
        case BinaryOp::Sub: out += " - "; break;
        case BinaryOp::Mul: out += '*'; break;
        case BinaryOp::Div: out += '/'; break;
        case BinaryOp::Pow: break;
    }
    print_wrapped(e.right(), rp <= p || rp == kPrecUnary, out);
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

}  // namespace numlab
