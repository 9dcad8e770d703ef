#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ek/poly.hpp"

namespace ek::sym {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Rational function num/den over Z. Canonical: gcd(num, den) = 1 in Z[vars],
// leading coefficient of den positive. Zero is 0/1.
class Expr {
public:
    Expr() : den_(1) {}
    Expr(long c) : num_(c), den_(1) {}
    explicit Expr(const mpz_class& c) : num_(c), den_(1) {}
    explicit Expr(const mpq_class& q);
    explicit Expr(Var v) : num_(Poly::variable(v)), den_(1) {}
    explicit Expr(Poly p) : num_(std::move(p)), den_(1) {}
    static Expr fraction(Poly num, Poly den);  // normalizes
    static Expr rational(long p, long q) { return Expr(mpq_class(p, q)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    mpq_class constant_value() const;  // requires is_constant
    std::bitset<kMaxVars> support() const { return num_.support() | den_.support(); }
    bool depends_on(Var v) const { return support()[v.id()]; }
    std::vector<Var> variables() const;

    Expr operator-() const;
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr& operator+=(const Expr& b) { return *this = *this + b; }
    Expr& operator-=(const Expr& b) { return *this = *this - b; }
    Expr& operator*=(const Expr& b) { return *this = *this * b; }
    Expr& operator/=(const Expr& b) { return *this = *this / b; }
    Expr inverse() const;
    Expr pow(long k) const;

    friend bool operator==(const Expr& a, const Expr& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    std::string str() const;

private:
    Expr(Poly n, Poly d, int) : num_(std::move(n)), den_(std::move(d)) {}
    Poly num_, den_;
};

inline Expr operator+(const Expr& a, long b) { return a + Expr(b); }
inline Expr operator+(long a, const Expr& b) { return Expr(a) + b; }
inline Expr operator-(const Expr& a, long b) { return a - Expr(b); }
inline Expr operator-(long a, const Expr& b) { return Expr(a) - b; }
inline Expr operator*(const Expr& a, long b) { return a * Expr(b); }
inline Expr operator*(long a, const Expr& b) { return Expr(a) * b; }
inline Expr operator/(const Expr& a, long b) { return a / Expr(b); }
inline Expr operator/(long a, const Expr& b) { return Expr(a) / b; }

Expr var_expr(std::string_view name);
inline Expr X(int i) { return Expr(x(i)); }

// Plain partial derivative in any symbol (jets treated as independent).
Expr partial(const Expr& e, Var v);
// Total derivative along a coordinate: jets obey t -> t_xi -> t_xjxi.
// Only coordinate symbols are allowed; third-order jets throw std::domain_error.
Expr diff(const Expr& e, Var v);

using Substitution = std::map<Var, Expr>;
Expr substitute(const Expr& e, const Substitution& s);

using Number = std::variant<mpq_class, double>;
struct Point {
    std::map<Var, Number> values;
    Point& set(Var v, const mpq_class& q) {
        values[v] = q;
        return *this;
    }
    Point& set(Var v, double d) {
        values[v] = d;
        return *this;
    }
};
// Exact when every value is rational, binary64 otherwise.
Number evaluate(const Expr& e, const Point& p);
mpq_class evaluate_exact(const Expr& e, const std::map<Var, mpq_class>& p);
double evaluate_double(const Expr& e, const std::map<Var, double>& p);
double to_double(const Number& n);

struct ParseOptions {
    std::map<std::string, VarKind> declare;
    bool allow_undeclared = true;  // undeclared non-standard names become free parameters
};
Expr parse(std::string_view text, const ParseOptions& opts = {});

}  // namespace ek::sym
