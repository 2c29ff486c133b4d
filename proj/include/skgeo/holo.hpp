#pragma once

// Exact engine for holomorphic rational expressions: build, parse, print,
// differentiate and evaluate complex-analytic expression trees.  Expressions
// are immutable after construction, so they can be shared and evaluated
// concurrently without synchronization.
//
// Grammar accepted by parse() (EBNF):
//
//   expr     = term { ("+" | "-") term } ;
//   term     = factor { ("*" | "/") factor } ;
//   factor   = { "+" | "-" } power ;
//   power    = atom [ "^" exponent ] ;
//   exponent = [ "-" ] digits ;
//   atom     = number | "i" | identifier | "(" expr ")" ;
//   number   = digits [ "." digits ] [ ("e"|"E") [sign] digits ] [ "i" ] ;
//
// A trailing "i" on a number literal makes it imaginary ("2i", "0.5i"); the
// bare identifier "i" is the imaginary unit and cannot be used as a variable
// name.  Supported operations are +, -, *, / and integer ^, i.e. the rational
// functions; this set is closed under differentiation.

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skgeo/errors.hpp"

namespace skgeo::holo {

using Complex = std::complex<double>;

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// One node of an immutable expression tree.
class Expr {
public:
    enum class Kind { Constant, Variable, Sum, Product, Quotient, Power, Negate };

    // Smart constructors.  They fold constants and eliminate trivial
    // zero/one factors, but perform no deeper rewriting, so differentiation
    // output stays predictable.
    static ExprPtr constant(Complex c);
    static ExprPtr variable(int index);
    static ExprPtr sum(ExprPtr a, ExprPtr b);
    static ExprPtr difference(ExprPtr a, ExprPtr b);
    static ExprPtr product(ExprPtr a, ExprPtr b);
    static ExprPtr quotient(ExprPtr num, ExprPtr den);
    static ExprPtr power(ExprPtr base, long exponent);
    static ExprPtr negate(ExprPtr a);

    static ExprPtr zero() { return constant(Complex(0.0, 0.0)); }
    static ExprPtr one() { return constant(Complex(1.0, 0.0)); }
    static ExprPtr imaginary_unit() { return constant(Complex(0.0, 1.0)); }

    Kind kind() const noexcept { return kind_; }
    Complex value() const noexcept { return value_; }      // Constant
    int var() const noexcept { return var_; }               // Variable
    long exponent() const noexcept { return exponent_; }    // Power
    const ExprPtr& lhs() const noexcept { return lhs_; }
    const ExprPtr& rhs() const noexcept { return rhs_; }

    /// Smallest variable-list length this expression is valid for.
    int arity() const noexcept { return arity_; }

    bool is_constant() const noexcept { return kind_ == Kind::Constant; }
    bool is_constant(Complex c) const noexcept {
        return kind_ == Kind::Constant && value_ == c;
    }
    bool is_zero() const noexcept { return is_constant(Complex(0.0, 0.0)); }

private:
    Expr() = default;
    static ExprPtr make(Expr node);

    Kind kind_ = Kind::Constant;
    Complex value_{0.0, 0.0};
    int var_ = -1;
    long exponent_ = 0;
    ExprPtr lhs_, rhs_;
    int arity_ = 0;
};

// Operator sugar for assembling trees.
inline ExprPtr operator+(ExprPtr a, ExprPtr b) { return Expr::sum(std::move(a), std::move(b)); }
inline ExprPtr operator-(ExprPtr a, ExprPtr b) { return Expr::difference(std::move(a), std::move(b)); }
inline ExprPtr operator*(ExprPtr a, ExprPtr b) { return Expr::product(std::move(a), std::move(b)); }
inline ExprPtr operator/(ExprPtr a, ExprPtr b) { return Expr::quotient(std::move(a), std::move(b)); }
inline ExprPtr operator-(ExprPtr a) { return Expr::negate(std::move(a)); }

/// Evaluate at a point (point[k] is the value of variable k).
/// Throws DimensionError if the point is too short and EvalError if a
/// denominator vanishes; the EvalError carries the offending subexpression.
Complex eval(const Expr& e, std::span<const Complex> point);
inline Complex eval(const ExprPtr& e, std::span<const Complex> point) { return eval(*e, point); }

/// Exact holomorphic partial derivative with respect to variable `var`.
ExprPtr diff(const ExprPtr& e, int var);

/// Replace variable k by replacement[k] everywhere (composition).
ExprPtr substitute(const ExprPtr& e, std::span<const ExprPtr> replacement);

/// Conjugate all coefficients and remap variable k to var_map[k].  Used to
/// realize z̄-dependence as an independent holomorphic variable slot:
/// conjugated(f, map) evaluated at w equals conj(f) evaluated at conj(w').
ExprPtr conjugated(const ExprPtr& e, std::span<const int> var_map);

/// True if the tree is the literal constant 0 (after construction folding).
inline bool is_identically_zero(const ExprPtr& e) { return e->is_zero(); }

/// Render with the given variable names; variables beyond the list print as
/// $k.  Printing then reparsing yields a tree that evaluates bit-identically.
std::string to_string(const Expr& e, std::span<const std::string> names = {});
inline std::string to_string(const ExprPtr& e, std::span<const std::string> names = {}) {
    return to_string(*e, names);
}

/// Parse expression text over an ordered variable list.
/// Throws ParseError (with byte offset) on syntax errors, unknown
/// identifiers, or an invalid variable list (duplicates, "i", bad shape).
ExprPtr parse(std::string_view text, std::span<const std::string> vars);

/// Shortest round-trip decimal form of a double (to_chars).
std::string format_double(double x);

/// "a+bi" with the given number of significant digits (report format).
std::string format_complex(Complex z, int significant_digits = 17);

/// Parse a standalone complex literal such as "1.5-0.3i" (no variables).
Complex parse_complex(std::string_view text);

}  // namespace skgeo::holo
