#include "skgeo/holo.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

namespace skgeo::holo {

namespace {

// Force +0.0 components so that constants produced by folding print and
// reparse bit-identically.
Complex canonical(Complex c) {
    double re = c.real(), im = c.imag();
    if (re == 0.0) re = 0.0;
    if (im == 0.0) im = 0.0;
    return {re, im};
}

// Integer power by squaring; exact zero base with negative exponent throws.
Complex ipow(Complex base, long n, const Expr& origin) {
    bool invert = n < 0;
    unsigned long k = invert ? static_cast<unsigned long>(-(n + 1)) + 1ul
                             : static_cast<unsigned long>(n);
    Complex acc{1.0, 0.0};
    Complex b = base;
    while (k != 0) {
        if (k & 1ul) acc *= b;
        b *= b;
        k >>= 1;
    }
    if (invert) {
        if (acc == Complex(0.0, 0.0))
            throw EvalError("division by zero in negative power", to_string(origin));
        return Complex(1.0, 0.0) / acc;
    }
    return acc;
}

}  // namespace

ExprPtr Expr::make(Expr node) { return ExprPtr(new Expr(std::move(node))); }

ExprPtr Expr::constant(Complex c) {
    Expr e;
    e.kind_ = Kind::Constant;
    e.value_ = canonical(c);
    e.arity_ = 0;
    return make(std::move(e));
}

ExprPtr Expr::variable(int index) {
    if (index < 0) throw DimensionError("variable index must be nonnegative");
    Expr e;
    e.kind_ = Kind::Variable;
    e.var_ = index;
    e.arity_ = index + 1;
    return make(std::move(e));
}

ExprPtr Expr::sum(ExprPtr a, ExprPtr b) {
    if (a->is_zero()) return b;
    if (b->is_zero()) return a;
    if (a->is_constant() && b->is_constant()) return constant(a->value() + b->value());
    Expr e;
    e.kind_ = Kind::Sum;
    e.arity_ = std::max(a->arity(), b->arity());
    e.lhs_ = std::move(a);
    e.rhs_ = std::move(b);
    return make(std::move(e));
}

ExprPtr Expr::difference(ExprPtr a, ExprPtr b) { return sum(std::move(a), negate(std::move(b))); }

ExprPtr Expr::product(ExprPtr a, ExprPtr b) {
    if (a->is_zero() || b->is_zero()) return zero();
    if (a->is_constant(Complex(1.0, 0.0))) return b;
    if (b->is_constant(Complex(1.0, 0.0))) return a;
    if (a->is_constant() && b->is_constant()) return constant(a->value() * b->value());
    Expr e;
    e.kind_ = Kind::Product;
    e.arity_ = std::max(a->arity(), b->arity());
    e.lhs_ = std::move(a);
    e.rhs_ = std::move(b);
    return make(std::move(e));
}

ExprPtr Expr::quotient(ExprPtr num, ExprPtr den) {
    if (num->is_zero()) return zero();
    if (den->is_constant(Complex(1.0, 0.0))) return num;
    if (num->is_constant() && den->is_constant() && !den->is_zero())
        return constant(num->value() / den->value());
    Expr e;
    e.kind_ = Kind::Quotient;
    e.arity_ = std::max(num->arity(), den->arity());
    e.lhs_ = std::move(num);
    e.rhs_ = std::move(den);
    return make(std::move(e));
}

ExprPtr Expr::power(ExprPtr base, long exponent) {
    if (exponent == 0) return one();
    if (exponent == 1) return base;
    if (base->is_constant() && !(base->is_zero() && exponent < 0))
        return constant(ipow(base->value(), exponent, *base));
    Expr e;
    e.kind_ = Kind::Power;
    e.arity_ = base->arity();
    e.exponent_ = exponent;
    e.lhs_ = std::move(base);
    return make(std::move(e));
}

ExprPtr Expr::negate(ExprPtr a) {
    if (a->is_constant()) return constant(-a->value());
    if (a->kind() == Kind::Negate) return a->lhs();
    Expr e;
    e.kind_ = Kind::Negate;
    e.arity_ = a->arity();
    e.lhs_ = std::move(a);
    return make(std::move(e));
}

namespace {

Complex eval_node(const Expr& e, std::span<const Complex> point) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
            return e.value();
        case Expr::Kind::Variable:
            return point[static_cast<std::size_t>(e.var())];
        case Expr::Kind::Sum:
            return eval_node(*e.lhs(), point) + eval_node(*e.rhs(), point);
        case Expr::Kind::Product:
            return eval_node(*e.lhs(), point) * eval_node(*e.rhs(), point);
        case Expr::Kind::Quotient: {
            const Complex den = eval_node(*e.rhs(), point);
            if (den == Complex(0.0, 0.0))
                throw EvalError("division by zero", to_string(*e.rhs()));
            return eval_node(*e.lhs(), point) / den;
        }
        case Expr::Kind::Power:
            return ipow(eval_node(*e.lhs(), point), e.exponent(), e);
        case Expr::Kind::Negate:
            return -eval_node(*e.lhs(), point);
    }
    throw Error("corrupt expression node");
}

}  // namespace

Complex eval(const Expr& e, std::span<const Complex> point) {
    if (e.arity() > static_cast<int>(point.size()))
        throw DimensionError("evaluation point has " + std::to_string(point.size()) +
                             " coordinates, expression references variable index " +
                             std::to_string(e.arity() - 1));
    return eval_node(e, point);
}

ExprPtr diff(const ExprPtr& e, int var) {
    switch (e->kind()) {
        case Expr::Kind::Constant:
            return Expr::zero();
        case Expr::Kind::Variable:
            return e->var() == var ? Expr::one() : Expr::zero();
        case Expr::Kind::Sum:
            return diff(e->lhs(), var) + diff(e->rhs(), var);
        case Expr::Kind::Product:
            return diff(e->lhs(), var) * e->rhs() + e->lhs() * diff(e->rhs(), var);
        case Expr::Kind::Quotient:
            return (diff(e->lhs(), var) * e->rhs() - e->lhs() * diff(e->rhs(), var)) /
                   Expr::power(e->rhs(), 2);
        case Expr::Kind::Power:
            return Expr::constant(Complex(static_cast<double>(e->exponent()), 0.0)) *
                   Expr::power(e->lhs(), e->exponent() - 1) * diff(e->lhs(), var);
        case Expr::Kind::Negate:
            return -diff(e->lhs(), var);
    }
    throw Error("corrupt expression node");
}

ExprPtr substitute(const ExprPtr& e, std::span<const ExprPtr> replacement) {
    switch (e->kind()) {
        case Expr::Kind::Constant:
            return e;
        case Expr::Kind::Variable: {
            const auto k = static_cast<std::size_t>(e->var());
            if (k >= replacement.size())
                throw DimensionError("substitution list too short for variable index " +
                                     std::to_string(e->var()));
            return replacement[k];
        }
        case Expr::Kind::Sum:
            return substitute(e->lhs(), replacement) + substitute(e->rhs(), replacement);
        case Expr::Kind::Product:
            return substitute(e->lhs(), replacement) * substitute(e->rhs(), replacement);
        case Expr::Kind::Quotient:
            return substitute(e->lhs(), replacement) / substitute(e->rhs(), replacement);
        case Expr::Kind::Power:
            return Expr::power(substitute(e->lhs(), replacement), e->exponent());
        case Expr::Kind::Negate:
            return -substitute(e->lhs(), replacement);
    }
    throw Error("corrupt expression node");
}

ExprPtr conjugated(const ExprPtr& e, std::span<const int> var_map) {
    switch (e->kind()) {
        case Expr::Kind::Constant:
            return Expr::constant(std::conj(e->value()));
        case Expr::Kind::Variable: {
            const auto k = static_cast<std::size_t>(e->var());
            if (k >= var_map.size())
                throw DimensionError("variable map too short for variable index " +
                                     std::to_string(e->var()));
            return Expr::variable(var_map[k]);
        }
        case Expr::Kind::Sum:
            return conjugated(e->lhs(), var_map) + conjugated(e->rhs(), var_map);
        case Expr::Kind::Product:
            return conjugated(e->lhs(), var_map) * conjugated(e->rhs(), var_map);
        case Expr::Kind::Quotient:
            return conjugated(e->lhs(), var_map) / conjugated(e->rhs(), var_map);
        case Expr::Kind::Power:
            return Expr::power(conjugated(e->lhs(), var_map), e->exponent());
        case Expr::Kind::Negate:
            return -conjugated(e->lhs(), var_map);
    }
    throw Error("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::string format_complex(Complex z, int significant_digits) {
    char re[64], im[64];
    auto [rp, re_ec] = std::to_chars(re, re + sizeof(re), z.real(),
                                     std::chars_format::general, significant_digits);
    auto [ip, im_ec] = std::to_chars(im, im + sizeof(im), z.imag(),
                                     std::chars_format::general, significant_digits);
    std::string out(re, rp);
    if (z.imag() >= 0.0 || std::isnan(z.imag())) out += '+';
    out.append(im, ip);
    out += 'i';
    return out;
}

namespace {

// Printing precedence levels: 1 sum, 2 product/quotient/negate, 3 tighter
// (right operand of * and /), 4 power base (atoms only).
constexpr int kPrecSum = 1;
constexpr int kPrecTerm = 2;
constexpr int kPrecTight = 3;
constexpr int kPrecAtom = 4;

std::string print_node(const Expr& e, std::span<const std::string> names, int min_prec);

std::string print_constant(Complex c, int min_prec) {
    const double re = c.real(), im = c.imag();
    std::string body;
    int prec;
    if (im == 0.0) {
        body = format_double(re);
        prec = re < 0.0 ? kPrecTerm : kPrecAtom;
    } else if (re == 0.0) {
        body = format_double(im) + "i";
        prec = im < 0.0 ? kPrecTerm : kPrecTight;  // "2i" is one literal but not a power base
    } else {
        std::string imag_part = format_double(im) + "i";
        if (im >= 0.0) imag_part.insert(imag_part.begin(), '+');
        return "(" + format_double(re) + imag_part + ")";  // self-parenthesized
    }
    if (prec < min_prec) return "(" + body + ")";
    return body;
}

std::string var_name(int k, std::span<const std::string> names) {
    if (k >= 0 && k < static_cast<int>(names.size())) return names[static_cast<std::size_t>(k)];
    return "$" + std::to_string(k);
}

std::string print_node(const Expr& e, std::span<const std::string> names, int min_prec) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
            return print_constant(e.value(), min_prec);
        case Expr::Kind::Variable:
            return var_name(e.var(), names);
        case Expr::Kind::Sum: {
            std::string lhs = print_node(*e.lhs(), names, kPrecSum);
            std::string rhs = print_node(*e.rhs(), names, kPrecTerm);
            std::string body = std::move(lhs);
            if (!rhs.empty() && rhs[0] == '-') {
                body += " - ";
                body += rhs.substr(1);
            } else {
                body += " + ";
                body += rhs;
            }
            if (kPrecSum < min_prec) return "(" + body + ")";
            return body;
        }
        case Expr::Kind::Product: {
            std::string body = print_node(*e.lhs(), names, kPrecTerm) + "*" +
                               print_node(*e.rhs(), names, kPrecTight);
            if (kPrecTerm < min_prec) return "(" + body + ")";
            return body;
        }
        case Expr::Kind::Quotient: {
            std::string body = print_node(*e.lhs(), names, kPrecTerm) + "/" +
                               print_node(*e.rhs(), names, kPrecTight);
            if (kPrecTerm < min_prec) return "(" + body + ")";
            return body;
        }
        case Expr::Kind::Power: {
            std::string body = print_node(*e.lhs(), names, kPrecAtom) + "^" +
                               std::to_string(e.exponent());
            if (kPrecTight < min_prec) return "(" + body + ")";
            return body;
        }
        case Expr::Kind::Negate: {
            std::string body = "-" + print_node(*e.lhs(), names, kPrecTerm);
            if (kPrecTerm < min_prec) return "(" + body + ")";
            return body;
        }
    }
    throw Error("corrupt expression node");
}

}  // namespace

std::string to_string(const Expr& e, std::span<const std::string> names) {
    return print_node(e, names, 0);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> vars)
        : text_(text), vars_(vars) {}

    ExprPtr run() {
        skip_ws();
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    bool consume(char c) {
        if (peek(c)) {
            ++pos_;
            skip_ws();
            return true;
        }
        return false;
    }

    ExprPtr parse_sum() {
        ExprPtr e = parse_term();
        for (;;) {
            if (consume('+')) {
                e = e + parse_term();
            } else if (consume('-')) {
                e = e - parse_term();
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            if (consume('*')) {
                e = e * parse_factor();
            } else if (consume('/')) {
                e = e / parse_factor();
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_factor() {
        bool negative = false;
        for (;;) {
            if (consume('-')) {
                negative = !negative;
            } else if (consume('+')) {
                // no-op sign
            } else {
                break;
            }
        }
        ExprPtr e = parse_power();
        return negative ? -e : e;
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        skip_ws();
        if (consume('^')) {
            bool neg = consume('-');
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected integer exponent after '^'");
            long n = 0;
            auto [ptr, ec] =
                std::from_chars(text_.data() + pos_, text_.data() + text_.size(), n);
            if (ec != std::errc()) fail("invalid integer exponent");
            pos_ = static_cast<std::size_t>(ptr - text_.data());
            skip_ws();
            return Expr::power(std::move(base), neg ? -n : n);
        }
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            skip_ws();
            ExprPtr e = parse_sum();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (ident_start(c)) return parse_identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr parse_number() {
        double value = 0.0;
        auto [ptr, ec] =
            std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (ec != std::errc()) fail("invalid number literal");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        bool imaginary = false;
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 >= text_.size() || !ident_char(text_[pos_ + 1]))) {
            imaginary = true;
            ++pos_;
        }
        skip_ws();
        return Expr::constant(imaginary ? Complex(0.0, value) : Complex(value, 0.0));
    }

    ExprPtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);
        skip_ws();
        if (name == "i") return Expr::imaginary_unit();
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            if (vars_[k] == name) return Expr::variable(static_cast<int>(k));
        }
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
    }

    std::string_view text_;
    std::span<const std::string> vars_;
    std::size_t pos_ = 0;
};

void validate_vars(std::span<const std::string> vars) {
    for (std::size_t k = 0; k < vars.size(); ++k) {
        const std::string& v = vars[k];
        if (v.empty() || !ident_start(v[0]))
            throw ParseError("invalid variable name '" + v + "'");
        for (char c : v)
            if (!ident_char(c)) throw ParseError("invalid variable name '" + v + "'");
        if (v == "i") throw ParseError("'i' is reserved for the imaginary unit");
        for (std::size_t j = 0; j < k; ++j)
            if (vars[j] == v) throw ParseError("duplicate variable name '" + v + "'");
    }
}

}  // namespace

ExprPtr parse(std::string_view text, std::span<const std::string> vars) {
    validate_vars(vars);
    return Parser(text, vars).run();
}

Complex parse_complex(std::string_view text) {
    ExprPtr e = parse(text, {});
    return eval(*e, {});
}

}  // namespace skgeo::holo
