#include "ek/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace ek::sym {

namespace {

Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_one()) return a;
    auto q = Poly::divide_exact(a, b);
    if (!q) throw std::logic_error("internal: inexact division while normalizing");
    return *q;
}

}  // namespace

Expr::Expr(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    num_ = Poly(c.get_num());
    den_ = Poly(c.get_den());
}

Expr Expr::fraction(Poly n, Poly d) {
    if (d.is_zero()) throw std::domain_error("division by zero");
    if (n.is_zero()) return Expr();
    if (!d.is_one()) {
        Poly g = gcd(n, d);
        if (!g.is_one()) {
            n = exact_div(n, g);
            d = exact_div(d, g);
        }
        if (d.sign_of_lead() < 0) {
            n = -n;
            d = -d;
        }
    }
    return Expr(std::move(n), std::move(d), 0);
}

mpq_class Expr::constant_value() const {
    if (!is_constant()) throw std::logic_error("expression is not constant: " + str());
    mpq_class q(num_.constant_value(), den_.constant_value());
    q.canonicalize();
    return q;
}

std::vector<Var> Expr::variables() const {
    std::vector<Var> out;
    auto s = support();
    for (int i = 0; i < kMaxVars; ++i)
        if (s[i]) out.emplace_back(static_cast<std::uint16_t>(i));
    return out;
}

Expr Expr::operator-() const { return Expr(-num_, den_, 0); }

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return Expr(a.num_ + b.num_, Poly(1), 0);
    if (a.den_ == b.den_) return Expr::fraction(a.num_ + b.num_, a.den_);
    Poly g = gcd(a.den_, b.den_);
    Poly bd = exact_div(a.den_, g), dd = exact_div(b.den_, g);
    Poly n = a.num_ * dd + b.num_ * bd;
    Poly d = a.den_ * dd;
    if (n.is_zero()) return Expr();
    if (!g.is_one()) {
        Poly g2 = gcd(n, g);
        if (!g2.is_one()) {
            n = exact_div(n, g2);
            d = exact_div(d, g2);
        }
    }
    return Expr(std::move(n), std::move(d), 0);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.den_.is_one() && b.den_.is_one()) return Expr(a.num_ * b.num_, Poly(1), 0);
    Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Poly n = exact_div(a.num_, g1) * exact_div(b.num_, g2);
    Poly d = exact_div(a.den_, g2) * exact_div(b.den_, g1);
    return Expr(std::move(n), std::move(d), 0);
}

Expr Expr::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (num_.sign_of_lead() < 0) return Expr(-den_, -num_, 0);
    return Expr(den_, num_, 0);
}

Expr operator/(const Expr& a, const Expr& b) { return a * b.inverse(); }

Expr Expr::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    return Expr(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)), 0);
}

std::string Expr::str() const {
    if (den_.is_one()) return num_.str();
    std::string n = num_.str();
    if (num_.size() > 1) n = "(" + n + ")";
    std::string d = den_.str();
    bool bare = den_.size() == 1 && (den_.is_constant() || (den_.lead().c == 1 && den_.lead().m.support().count() == 1));
    if (!bare) d = "(" + d + ")";
    return n + "/" + d;
}

Expr var_expr(std::string_view name) { return Expr(var(name)); }

Expr partial(const Expr& e, Var v) {
    if (!e.depends_on(v)) return Expr();
    if (e.den().is_one()) return Expr(e.num().partial(v));
    const Poly& n = e.num();
    const Poly& d = e.den();
    return Expr::fraction(n.partial(v) * d - n * d.partial(v), d * d);
}

Expr diff(const Expr& e, Var v) {
    if (v.kind() != VarKind::coordinate) throw std::invalid_argument("diff: " + v.name() + " is not a coordinate");
    Expr r = partial(e, v);
    for (Var j : e.variables()) {
        if (j.kind() != VarKind::jet) continue;
        Expr pj = partial(e, j);
        if (pj.is_zero()) continue;
        r += pj * Expr(jet_derivative(j, v));
    }
    return r;
}

namespace {

Expr subst_poly(const Poly& p, const Substitution& s) {
    // powers cached per variable
    std::map<int, std::vector<Expr>> powers;
    auto power = [&](int id, unsigned k) -> const Expr& {
        auto& vec = powers[id];
        if (vec.empty()) {
            vec.push_back(Expr(1));
            auto it = s.find(Var(static_cast<std::uint16_t>(id)));
            vec.push_back(it != s.end() ? it->second : Expr(Var(static_cast<std::uint16_t>(id))));
        }
        while (vec.size() <= k) vec.push_back(vec.back() * vec[1]);
        return vec[k];
    };
    // group terms by their non-substituted part to keep sums polynomial when possible
    Expr total;
    Poly poly_part;  // terms untouched by the substitution
    for (const auto& t : p.terms()) {
        bool touched = false;
        for (int i = 0; i < kMaxVars && !touched; ++i)
            if (t.m.e[i] && s.count(Var(static_cast<std::uint16_t>(i)))) touched = true;
        if (!touched) {
            poly_part += Poly::monomial(t.m, t.c);
            continue;
        }
        Expr term(t.c);
        Mono rest;
        for (int i = 0; i < kMaxVars; ++i) {
            unsigned k = t.m.e[i];
            if (!k) continue;
            if (s.count(Var(static_cast<std::uint16_t>(i)))) term *= power(i, k);
            else rest = rest * Mono::of(Var(static_cast<std::uint16_t>(i)), k);
        }
        if (!rest.is_one()) term *= Expr(Poly::monomial(rest, 1));
        total += term;
    }
    return total + Expr(poly_part);
}

}  // namespace

Expr substitute(const Expr& e, const Substitution& s) {
    bool any = false;
    auto sup = e.support();
    for (const auto& [v, _] : s)
        if (sup[v.id()]) any = true;
    if (!any) return e;
    Expr n = subst_poly(e.num(), s);
    if (e.den().is_one()) return n;
    return n / subst_poly(e.den(), s);
}

namespace {

template <class T, class Get>
T eval_poly(const Poly& p, Get get) {
    T sum = 0;
    for (const auto& t : p.terms()) {
        T term;
        if constexpr (std::is_same_v<T, double>) term = t.c.get_d();
        else term = T(t.c);
        for (int i = 0; i < kMaxVars; ++i) {
            unsigned k = t.m.e[i];
            if (!k) continue;
            T v = get(Var(static_cast<std::uint16_t>(i)));
            T pw = 1;
            for (unsigned r = 0; r < k; ++r) pw *= v;
            term *= pw;
        }
        sum += term;
    }
    return sum;
}

}  // namespace

mpq_class evaluate_exact(const Expr& e, const std::map<Var, mpq_class>& p) {
    auto get = [&](Var v) -> mpq_class {
        auto it = p.find(v);
        if (it == p.end()) throw std::invalid_argument("unassigned variable " + v.name());
        return it->second;
    };
    mpq_class d = eval_poly<mpq_class>(e.den(), get);
    if (d == 0) throw PoleError("pole: denominator vanishes at the point");
    mpq_class n = eval_poly<mpq_class>(e.num(), get);
    mpq_class r = n / d;
    r.canonicalize();
    return r;
}

double evaluate_double(const Expr& e, const std::map<Var, double>& p) {
    auto get = [&](Var v) -> double {
        auto it = p.find(v);
        if (it == p.end()) throw std::invalid_argument("unassigned variable " + v.name());
        return it->second;
    };
    double d = eval_poly<double>(e.den(), get);
    if (d == 0.0) throw PoleError("pole: denominator vanishes at the point");
    return eval_poly<double>(e.num(), get) / d;
}

double to_double(const Number& n) {
    if (std::holds_alternative<double>(n)) return std::get<double>(n);
    return std::get<mpq_class>(n).get_d();
}

Number evaluate(const Expr& e, const Point& p) {
    bool all_exact = true;
    for (Var v : e.variables()) {
        auto it = p.values.find(v);
        if (it == p.values.end()) throw std::invalid_argument("unassigned variable " + v.name());
        if (std::holds_alternative<double>(it->second)) all_exact = false;
    }
    if (all_exact) {
        std::map<Var, mpq_class> q;
        for (Var v : e.variables()) q[v] = std::get<mpq_class>(p.values.at(v));
        return evaluate_exact(e, q);
    }
    std::map<Var, double> d;
    for (Var v : e.variables()) d[v] = to_double(p.values.at(v));
    return evaluate_double(e, d);
}

// ---- parser --------------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(std::string_view s, const ParseOptions& o) : src_(s), opts_(o) {}

    Expr run() {
        skip();
        if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
        Expr e = expr();
        skip();
        if (pos_ < src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return e;
    }

private:
    std::string_view src_;
    const ParseOptions& opts_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    Expr expr() {
        Expr e = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                e += term();
            } else if (peek('-')) {
                ++pos_;
                e -= term();
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                e *= factor();
            } else if (peek('/')) {
                std::size_t at = pos_++;
                Expr d = factor();
                if (d.is_zero()) throw ParseError("division by zero", at);
                e /= d;
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        if (peek('-')) {
            ++pos_;
            return -factor();
        }
        Expr a = atom();
        if (peek('^')) {
            ++pos_;
            skip();
            bool neg = false;
            if (pos_ < src_.size() && src_[pos_] == '-') {
                neg = true;
                ++pos_;
                skip();
            }
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError("expected integer exponent", start);
            std::string digits(src_.substr(start, pos_ - start));
            if (digits.size() > 6) throw ParseError("exponent too large", start);
            long k = std::stol(digits);
            if (neg) {
                if (a.is_zero()) throw ParseError("division by zero", start);
                k = -k;
            }
            return a.pow(k);
        }
        return a;
    }

    Expr atom() {
        skip();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return Expr(mpz_class(std::string(src_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
            return Expr(resolve(std::string(src_.substr(start, pos_ - start)), start));
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    Var resolve(const std::string& name, std::size_t at) {
        auto d = opts_.declare.find(name);
        try {
            if (d != opts_.declare.end()) return var(name, d->second);
            // second-order jets in either index order
            if (name.size() == 6 && name.rfind("t_x", 0) == 0 && std::isdigit(static_cast<unsigned char>(name[3])) && name[4] == 'x' &&
                std::isdigit(static_cast<unsigned char>(name[5]))) {
                int i = name[3] - '0', j = name[5] - '0';
                if (i <= 4 && j <= 4) return t_xx(i, j);
            }
            if (auto v = find_var(name)) return *v;
            if (!opts_.allow_undeclared) throw ParseError("undeclared identifier '" + name + "'", at);
            return var(name);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), at);
        }
    }
};

}  // namespace

Expr parse(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).run(); }

}  // namespace ek::sym
