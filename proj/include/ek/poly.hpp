#pragma once

#include <gmpxx.h>

#include <array>
#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ek/var.hpp"

namespace ek::sym {

// Dense exponent vector. Graded lex: total degree first, then the exponent
// of the lowest-id variable, and so on.
struct Mono {
    std::array<std::uint8_t, kMaxVars> e{};
    std::uint16_t deg = 0;

    static Mono one() { return {}; }
    static Mono of(Var v, unsigned k = 1);

    bool is_one() const { return deg == 0; }
    unsigned exp(Var v) const { return e[v.id()]; }
    bool divides(const Mono& o) const;
    Mono operator*(const Mono& o) const;
    Mono operator/(const Mono& o) const;  // requires divides
    static Mono gcd(const Mono& a, const Mono& b);
    std::bitset<kMaxVars> support() const;
};

int compare(const Mono& a, const Mono& b);
inline bool operator==(const Mono& a, const Mono& b) { return compare(a, b) == 0; }

struct Term {
    Mono m;
    mpz_class c;
};

// Sparse polynomial over Z, terms strictly decreasing in the monomial order,
// no zero coefficients.
class Poly {
public:
    Poly() = default;
    Poly(long c);
    explicit Poly(const mpz_class& c);
    static Poly variable(Var v);
    static Poly monomial(const Mono& m, const mpz_class& c);
    static Poly from_terms(std::vector<Term> terms);  // any order, combines

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
    bool is_one() const { return is_constant() && !is_zero() && terms_[0].c == 1; }
    mpz_class constant_value() const;  // requires is_constant
    const Term& lead() const { return terms_.front(); }
    int sign_of_lead() const { return is_zero() ? 0 : sgn(terms_[0].c); }
    unsigned total_degree() const;
    unsigned degree_in(Var v) const;
    std::bitset<kMaxVars> support() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    Poly scaled(const mpz_class& k) const;
    Poly times_mono(const Mono& m) const;
    Poly pow(unsigned k) const;

    friend bool operator==(const Poly& a, const Poly& b);

    // exact quotient or nullopt if b does not divide a
    static std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
    Poly div_int(const mpz_class& k) const;  // every coefficient divisible
    Poly div_mono(const Mono& m) const;

    mpz_class content() const;  // positive gcd of coefficients, 0 for zero
    Mono mono_content() const;  // gcd of all monomials

    Poly partial(Var v) const;

    // split as sum_k c_k v^k; c_k free of v
    std::vector<Poly> coeffs_in(Var v) const;
    static Poly from_coeffs(const std::vector<Poly>& c, Var v);

    std::string str() const;

private:
    std::vector<Term> terms_;
    friend class PolyBuilder;
};

// gcd in Z[vars], sign normalized so the leading coefficient is positive
Poly gcd(const Poly& a, const Poly& b);

}  // namespace ek::sym
