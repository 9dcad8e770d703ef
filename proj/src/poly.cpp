#include "ek/poly.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace ek::sym {

// ---- Mono ------------------------------------------------------------------

Mono Mono::of(Var v, unsigned k) {
    Mono m;
    if (k > 255) throw std::overflow_error("exponent too large");
    m.e[v.id()] = static_cast<std::uint8_t>(k);
    m.deg = static_cast<std::uint16_t>(k);
    return m;
}

bool Mono::divides(const Mono& o) const {
    if (deg > o.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Mono Mono::operator*(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) {
        unsigned s = unsigned(e[i]) + o.e[i];
        if (s > 255) throw std::overflow_error("exponent too large");
        r.e[i] = static_cast<std::uint8_t>(s);
    }
    r.deg = static_cast<std::uint16_t>(deg + o.deg);
    return r;
}

Mono Mono::operator/(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
    r.deg = static_cast<std::uint16_t>(deg - o.deg);
    return r;
}

Mono Mono::gcd(const Mono& a, const Mono& b) {
    Mono r;
    unsigned d = 0;
    for (int i = 0; i < kMaxVars; ++i) {
        r.e[i] = std::min(a.e[i], b.e[i]);
        d += r.e[i];
    }
    r.deg = static_cast<std::uint16_t>(d);
    return r;
}

std::bitset<kMaxVars> Mono::support() const {
    std::bitset<kMaxVars> b;
    if (deg == 0) return b;
    for (int i = 0; i < kMaxVars; ++i)
        if (e[i]) b.set(i);
    return b;
}

int compare(const Mono& a, const Mono& b) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    int c = std::memcmp(a.e.data(), b.e.data(), kMaxVars);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

// ---- Poly basics -------------------------------------------------------------

Poly::Poly(long c) {
    if (c != 0) terms_.push_back({Mono{}, mpz_class(c)});
}

Poly::Poly(const mpz_class& c) {
    if (c != 0) terms_.push_back({Mono{}, c});
}

Poly Poly::variable(Var v) { return monomial(Mono::of(v), 1); }

Poly Poly::monomial(const Mono& m, const mpz_class& c) {
    Poly p;
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Poly Poly::from_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return compare(a.m, b.m) > 0; });
    Poly p;
    for (auto& t : ts) {
        if (!p.terms_.empty() && p.terms_.back().m == t.m) {
            p.terms_.back().c += t.c;
            if (p.terms_.back().c == 0) p.terms_.pop_back();
        } else if (t.c != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

mpz_class Poly::constant_value() const {
    if (!is_constant()) throw std::logic_error("not a constant polynomial");
    return terms_.empty() ? mpz_class(0) : terms_[0].c;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().m.deg; }

unsigned Poly::degree_in(Var v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.m.e[v.id()]);
    return d;
}

std::bitset<kMaxVars> Poly::support() const {
    std::bitset<kMaxVars> b;
    for (const auto& t : terms_) b |= t.m.support();
    return b;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

namespace {

std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size()) c = -1;
        else if (j == b.size()) c = 1;
        else c = compare(a[i].m, b[j].m);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (negate_b) out.back().c = -out.back().c;
        } else {
            mpz_class s = negate_b ? mpz_class(a[i].c - b[j].c) : mpz_class(a[i].c + b[j].c);
            if (s != 0) out.push_back({a[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

std::vector<Term> merge_move(std::vector<Term>&& a, std::vector<Term>&& b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size()) c = -1;
        else if (j == b.size()) c = 1;
        else c = compare(a[i].m, b[j].m);
        if (c > 0) out.push_back(std::move(a[i++]));
        else if (c < 0) out.push_back(std::move(b[j++]));
        else {
            a[i].c += b[j].c;
            if (a[i].c != 0) out.push_back(std::move(a[i]));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Poly r;
    r.terms_ = merge_add(a.terms_, b.terms_, false);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    if (b.is_zero()) return a;
    Poly r;
    r.terms_ = merge_add(a.terms_, b.terms_, true);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    const Poly& big = a.size() >= b.size() ? a : b;
    const Poly& small = a.size() >= b.size() ? b : a;
    if (small.size() == 1) {
        Poly r;
        r.terms_.reserve(big.size());
        const Term& s = small.terms_[0];
        for (const auto& t : big.terms_) r.terms_.push_back({t.m * s.m, t.c * s.c});
        return r;
    }
    // each row is already sorted; merge rows pairwise
    std::vector<std::vector<Term>> rows;
    rows.reserve(small.size());
    for (const auto& s : small.terms_) {
        std::vector<Term> row;
        row.reserve(big.size());
        for (const auto& t : big.terms_) row.push_back({t.m * s.m, t.c * s.c});
        rows.push_back(std::move(row));
    }
    while (rows.size() > 1) {
        std::vector<std::vector<Term>> next;
        next.reserve((rows.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < rows.size(); i += 2) next.push_back(merge_move(std::move(rows[i]), std::move(rows[i + 1])));
        if (rows.size() % 2) next.push_back(std::move(rows.back()));
        rows = std::move(next);
    }
    Poly r;
    r.terms_ = std::move(rows[0]);
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].c != b.terms_[i].c || !(a.terms_[i].m == b.terms_[i].m)) return false;
    return true;
}

Poly Poly::scaled(const mpz_class& k) const {
    if (k == 0) return Poly();
    Poly r = *this;
    for (auto& t : r.terms_) t.c *= k;
    return r;
}

Poly Poly::times_mono(const Mono& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) t.m = t.m * m;
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly result(1), base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

Poly Poly::div_int(const mpz_class& k) const {
    Poly r = *this;
    for (auto& t : r.terms_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), k.get_mpz_t());
    return r;
}

Poly Poly::div_mono(const Mono& m) const {
    if (m.is_one()) return *this;
    Poly r = *this;
    for (auto& t : r.terms_) t.m = t.m / m;
    return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) return Poly();
    if (b.size() == 1) {
        const Term& d = b.terms_[0];
        Poly q;
        q.terms_.reserve(a.size());
        for (const auto& t : a.terms_) {
            if (!d.m.divides(t.m) || !mpz_divisible_p(t.c.get_mpz_t(), d.c.get_mpz_t())) return std::nullopt;
            mpz_class c;
            mpz_divexact(c.get_mpz_t(), t.c.get_mpz_t(), d.c.get_mpz_t());
            q.terms_.push_back({t.m / d.m, std::move(c)});
        }
        return q;
    }
    if (b.total_degree() > a.total_degree()) return std::nullopt;
    for (int i = 0; i < kMaxVars; ++i) {
        // cheap necessary condition per variable
        unsigned da = 0, db = 0;
        for (const auto& t : a.terms_) da = std::max<unsigned>(da, t.m.e[i]);
        for (const auto& t : b.terms_) db = std::max<unsigned>(db, t.m.e[i]);
        if (db > da) return std::nullopt;
    }
    const Term& lb = b.terms_[0];
    std::vector<Term> q;
    Poly r = a;
    while (!r.is_zero()) {
        const Term& lr = r.terms_[0];
        if (!lb.m.divides(lr.m) || !mpz_divisible_p(lr.c.get_mpz_t(), lb.c.get_mpz_t())) return std::nullopt;
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), lr.c.get_mpz_t(), lb.c.get_mpz_t());
        Mono m = lr.m / lb.m;
        Poly step = b.times_mono(m).scaled(c);
        q.push_back({m, std::move(c)});
        r = r - step;
    }
    Poly out;
    out.terms_ = std::move(q);
    return out;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Mono Poly::mono_content() const {
    if (terms_.empty()) return Mono{};
    Mono m = terms_[0].m;
    for (std::size_t i = 1; i < terms_.size() && !m.is_one(); ++i) m = Mono::gcd(m, terms_[i].m);
    return m;
}

Poly Poly::partial(Var v) const {
    Poly r;
    int id = v.id();
    for (const auto& t : terms_) {
        unsigned k = t.m.e[id];
        if (!k) continue;
        Term nt{t.m, t.c * k};
        nt.m.e[id] = static_cast<std::uint8_t>(k - 1);
        nt.m.deg = static_cast<std::uint16_t>(nt.m.deg - 1);
        r.terms_.push_back(std::move(nt));
    }
    return r;
}

std::vector<Poly> Poly::coeffs_in(Var v) const {
    std::vector<Poly> out(degree_in(v) + 1);
    int id = v.id();
    for (const auto& t : terms_) {
        unsigned k = t.m.e[id];
        Term nt = t;
        nt.m.e[id] = 0;
        nt.m.deg = static_cast<std::uint16_t>(nt.m.deg - k);
        out[k].terms_.push_back(std::move(nt));
    }
    return out;
}

Poly Poly::from_coeffs(const std::vector<Poly>& c, Var v) {
    Poly r;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) r = r + c[k].times_mono(Mono::of(v, static_cast<unsigned>(k)));
    return r;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        mpz_class a = abs(t.c);
        bool neg = t.c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool need_star = false;
        if (t.m.is_one() || a != 1) {
            os << a.get_str();
            need_star = true;
        }
        if (t.m.is_one()) continue;
        for (int i = 0; i < kMaxVars; ++i) {
            unsigned k = t.m.e[i];
            if (!k) continue;
            if (need_star) os << "*";
            os << Var(static_cast<std::uint16_t>(i)).name();
            if (k > 1) os << "^" << k;
            need_star = true;
        }
    }
    return os.str();
}

// ---- gcd ---------------------------------------------------------------------

namespace {

using UPoly = std::vector<Poly>;  // coefficients in the main variable, low to high

void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly exact(const Poly& a, const Poly& b) {
    auto q = Poly::divide_exact(a, b);
    if (!q) throw std::logic_error("internal: inexact division in gcd");
    return *q;
}

Poly positive(Poly p) { return p.sign_of_lead() < 0 ? -p : p; }

Poly content_of(const UPoly& p) {
    Poly g;
    for (const auto& c : p) {
        g = gcd(g, c);
        if (g.is_one()) return g;
    }
    return g;
}

UPoly prem(UPoly a, const UPoly& b) {
    const std::size_t db = b.size() - 1;
    const Poly& lb = b.back();
    long e = static_cast<long>(a.size()) - static_cast<long>(b.size()) + 1;
    while (!a.empty() && a.size() - 1 >= db) {
        Poly la = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (auto& c : a) c = c * lb;
        for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
        a.pop_back();  // leading term cancels by construction
        trim(a);
        --e;
    }
    if (e > 0) {
        Poly f = lb.pow(static_cast<unsigned>(e));
        for (auto& c : a) c = c * f;
    }
    return a;
}

Poly gcd_primitive(Poly A, Poly B);

Poly subresultant_gcd(const Poly& A, const Poly& B, Var v) {
    UPoly F = A.coeffs_in(v), G = B.coeffs_in(v);
    if (F.size() < G.size()) std::swap(F, G);
    Poly g(1), h(1);
    while (true) {
        long d = static_cast<long>(F.size()) - static_cast<long>(G.size());
        UPoly R = prem(F, G);
        if (R.empty()) break;
        if (R.size() == 1) return Poly(1);
        F = std::move(G);
        Poly divisor = g * h.pow(static_cast<unsigned>(d));
        for (auto& c : R) c = exact(c, divisor);
        G = std::move(R);
        g = F.back();
        if (d == 1) h = g;
        else if (d > 1) h = exact(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
    }
    Poly cg = content_of(G);
    for (auto& c : G) c = exact(c, cg);
    return positive(Poly::from_coeffs(G, v));
}

Poly gcd_primitive(Poly A, Poly B) {
    // A, B: integer content 1, no monomial factor
    if (A.is_constant() || B.is_constant()) return Poly(1);
    A = positive(std::move(A));
    B = positive(std::move(B));
    if (A == B) return A;
    if (A.size() <= B.size()) {
        if (Poly::divide_exact(B, A)) return A;
    } else if (Poly::divide_exact(A, B)) {
        return B;
    }
    auto sa = A.support(), sb = B.support();
    if ((sa & sb).none()) return Poly(1);
    for (int i = 0; i < kMaxVars; ++i) {
        Var v(static_cast<std::uint16_t>(i));
        if (sa[i] && !sb[i]) return gcd(content_of(A.coeffs_in(v)), B);
        if (sb[i] && !sa[i]) return gcd(A, content_of(B.coeffs_in(v)));
    }
    // same support: pick the variable of least degree
    int best = -1;
    unsigned best_deg = ~0u;
    for (int i = 0; i < kMaxVars; ++i) {
        if (!sa[i]) continue;
        Var v(static_cast<std::uint16_t>(i));
        unsigned d = std::max(A.degree_in(v), B.degree_in(v));
        if (d < best_deg) {
            best_deg = d;
            best = i;
        }
    }
    Var v(static_cast<std::uint16_t>(best));
    Poly ca = content_of(A.coeffs_in(v)), cb = content_of(B.coeffs_in(v));
    Poly gc = gcd(ca, cb);
    Poly ppA = exact(A, ca), ppB = exact(B, cb);
    return positive(gc * subresultant_gcd(ppA, ppB, v));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return positive(b);
    if (b.is_zero()) return positive(a);
    mpz_class ca = a.content(), cb = b.content(), c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (a.is_constant() || b.is_constant()) return Poly(c);
    Mono ma = a.mono_content(), mb = b.mono_content();
    Mono m = Mono::gcd(ma, mb);
    Poly A = a.div_int(ca).div_mono(ma), B = b.div_int(cb).div_mono(mb);
    Poly g = gcd_primitive(std::move(A), std::move(B));
    return positive(g.scaled(c).times_mono(m));
}

}  // namespace ek::sym
