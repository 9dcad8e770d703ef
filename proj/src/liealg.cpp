#include "ek/liealg.hpp"

#include <bit>
#include <cctype>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ek::la {

LieAlgebra::LieAlgebra(std::size_t n, std::vector<std::string> names) : n_(n), names_(std::move(names)), c_(n * n * n) {
    if (names_.empty())
        for (std::size_t i = 0; i < n; ++i) names_.push_back("e" + std::to_string(i));
    if (names_.size() != n) throw std::invalid_argument("name count differs from dimension");
}

void LieAlgebra::set(std::size_t i, std::size_t j, std::size_t k, const mpq_class& v) {
    if (i == j && v != 0) throw std::invalid_argument("[e_i, e_i] must vanish");
    c_[(i * n_ + j) * n_ + k] = v;
    c_[(j * n_ + i) * n_ + k] = -v;
}

QVec LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
    return QVec(c_.begin() + (i * n_ + j) * n_, c_.begin() + (i * n_ + j + 1) * n_);
}

QVec LieAlgebra::bracket(const QVec& x, const QVec& y) const {
    QVec r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (y[j] == 0) continue;
            mpq_class f = x[i] * y[j];
            for (std::size_t k = 0; k < n_; ++k)
                if (c(i, j, k) != 0) r[k] += f * c(i, j, k);
        }
    }
    return r;
}

QMat LieAlgebra::ad(const QVec& x) const {
    QMat m(n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
        QVec b = bracket(x, unit_vec(n_, j));
        for (std::size_t k = 0; k < n_; ++k) m(k, j) = b[k];
    }
    return m;
}

QMat LieAlgebra::ad_basis(std::size_t i) const {
    QMat m(n_, n_);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) m(k, j) = c(i, j, k);
    return m;
}

bool LieAlgebra::antisymmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k)
                if (c(i, j, k) != -c(j, i, k)) return false;
    return true;
}

std::pair<std::size_t, std::size_t> LieAlgebra::jacobi() const {
    std::size_t bad = 0, total = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            for (std::size_t k = j + 1; k < n_; ++k) {
                ++total;
                bool ok = true;
                for (std::size_t l = 0; l < n_ && ok; ++l) {
                    mpq_class s = 0;
                    for (std::size_t m = 0; m < n_; ++m) {
                        if (c(i, j, m) != 0) s += c(i, j, m) * c(m, k, l);
                        if (c(j, k, m) != 0) s += c(j, k, m) * c(m, i, l);
                        if (c(k, i, m) != 0) s += c(k, i, m) * c(m, j, l);
                    }
                    ok = (s == 0);
                }
                if (!ok) ++bad;
            }
    return {bad, total};
}

QMat LieAlgebra::killing() const {
    std::vector<QMat> ads;
    for (std::size_t i = 0; i < n_; ++i) ads.push_back(ad_basis(i));
    QMat k(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) {
            k(i, j) = (ads[i] * ads[j]).trace();
            k(j, i) = k(i, j);
        }
    return k;
}

bool LieAlgebra::is_subalgebra(const std::vector<QVec>& basis) const {
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a + 1; b < basis.size(); ++b)
            if (!in_span(basis, bracket(basis[a], basis[b]))) return false;
    return true;
}

bool LieAlgebra::is_ideal(const std::vector<QVec>& basis) const {
    for (const auto& v : basis)
        for (std::size_t j = 0; j < n_; ++j)
            if (!in_span(basis, bracket(unit_vec(n_, j), v))) return false;
    return true;
}

std::vector<QVec> LieAlgebra::center() const {
    // x with [e_j, x] = 0 for all j
    QMat m(n_ * n_, n_);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) m(j * n_ + k, i) = c(j, i, k);
    return nullspace(m);
}

std::vector<QVec> LieAlgebra::derived() const {
    std::vector<QVec> v;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
            QVec b = bracket_basis(i, j);
            if (!is_zero(b)) v.push_back(std::move(b));
        }
    return span_basis(v);
}

LieAlgebra::MC LieAlgebra::maurer_cartan() const {
    MC mc(n_);
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (c(i, j, k) != 0) mc[k][{static_cast<int>(i), static_cast<int>(j)}] = -c(i, j, k);
    return mc;
}

LieAlgebra LieAlgebra::from_maurer_cartan(const MC& mc, std::vector<std::string> names) {
    LieAlgebra g(mc.size(), std::move(names));
    for (std::size_t k = 0; k < mc.size(); ++k)
        for (const auto& [ij, v] : mc[k]) {
            auto [i, j] = ij;
            if (i == j || i < 0 || j < 0 || static_cast<std::size_t>(std::max(i, j)) >= mc.size())
                throw std::invalid_argument("bad Maurer-Cartan index");
            // stored with i<j or reversed
            mpq_class cur = g.c(i, j, k);
            g.set(i, j, k, cur - v);
        }
    return g;
}

LieAlgebra LieAlgebra::restrict_to(const std::vector<std::size_t>& idx) const {
    std::vector<std::string> nm;
    for (auto i : idx) nm.push_back(names_[i]);
    LieAlgebra h(idx.size(), nm);
    std::vector<int> pos(n_, -1);
    for (std::size_t a = 0; a < idx.size(); ++a) pos[idx[a]] = static_cast<int>(a);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            for (std::size_t k = 0; k < n_; ++k) {
                const mpq_class& v = c(idx[a], idx[b], k);
                if (v == 0) continue;
                if (pos[k] < 0) throw std::invalid_argument("basis subset is not closed under the bracket");
                h.set(a, b, pos[k], v);
            }
    return h;
}

std::string LieAlgebra::table() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k)
                if (c(i, j, k) != 0) os << "c(" << names_[i] << "," << names_[j] << ";" << names_[k] << ") = " << c(i, j, k).get_str() << "\n";
    return os.str();
}

std::size_t d_squared_defects(const LieAlgebra::MC& mc) {
    std::size_t n = mc.size();
    auto bit = [](int i) { return std::uint64_t{1} << i; };
    auto sign = [](std::uint64_t a, std::uint64_t b) {
        int inv = 0;
        while (b) {
            int j = std::countr_zero(b);
            b &= b - 1;
            inv += std::popcount(a >> (j + 1));
        }
        return (inv & 1) ? -1 : 1;
    };
    std::size_t defects = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::map<std::uint64_t, mpq_class> out;
        for (const auto& [ij, v0] : mc[k]) {
            auto [i, j] = ij;
            mpq_class v = v0;
            if (i > j) {
                std::swap(i, j);
                v = -v;
            }
            // d(theta^i ^ theta^j) = d theta^i ^ theta^j - theta^i ^ d theta^j
            for (const auto& [ab, w] : mc[i]) {
                std::uint64_t m2 = bit(ab.first) | bit(ab.second);
                int s2 = ab.first < ab.second ? 1 : -1;
                if (m2 & bit(j)) continue;
                out[m2 | bit(j)] += v * w * s2 * sign(m2, bit(j));
            }
            for (const auto& [ab, w] : mc[j]) {
                std::uint64_t m2 = bit(ab.first) | bit(ab.second);
                int s2 = ab.first < ab.second ? 1 : -1;
                if (m2 & bit(i)) continue;
                out[m2 | bit(i)] -= v * w * s2 * sign(bit(i), m2);
            }
        }
        for (const auto& [m, v] : out)
            if (v != 0) ++defects;
    }
    return defects;
}

std::vector<std::vector<QVec>> ideal_decomposition(const LieAlgebra& g) {
    std::size_t n = g.dim();
    std::vector<QMat> ads;
    for (std::size_t i = 0; i < n; ++i) ads.push_back(g.ad_basis(i));
    // centroid: X commuting with every ad(e_i)
    QMat sys(n * n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t row = (i * n + r) * n + c;
                // (X A - A X)_{rc} = sum_k X_rk A_kc - A_rk X_kc
                for (std::size_t k = 0; k < n; ++k) {
                    sys(row, r * n + k) += ads[i](k, c);
                    sys(row, k * n + c) -= ads[i](r, k);
                }
            }
    auto basis = nullspace(sys);
    std::vector<QVec> whole;
    for (std::size_t i = 0; i < n; ++i) whole.push_back(unit_vec(n, i));
    if (basis.size() <= 1) return {whole};
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-9, 9);
    QMat X(n, n);
    for (const auto& b : basis) {
        int f = d(rng);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) X(r, c) += mpq_class(f) * b[r * n + c];
    }
    bool all = false;
    auto ev = rational_eigenvalues(X, &all);
    if (!all) return {whole};
    std::vector<std::vector<QVec>> out;
    for (const auto& l : ev) out.push_back(span_basis(nullspace(X - QMat::identity(n) * l)));
    std::size_t total = 0;
    for (const auto& o : out) total += o.size();
    if (total != n) return {whole};
    return out;
}

}  // namespace ek::la

namespace ek::la {

namespace {

struct McLexer {
    const std::string& s;
    std::size_t pos = 0;
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool at_digit() {
        skip();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    long integer() {
        skip();
        std::size_t st = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (st == pos) fail("expected a number");
        return std::stol(s.substr(st, pos - st));
    }
    [[noreturn]] void fail(const std::string& m) {
        throw std::invalid_argument("structure equation '" + s + "': " + m + " at position " + std::to_string(pos));
    }
};

}  // namespace

LieAlgebra::MC parse_mc(const std::vector<int>& labels, const std::vector<std::string>& rhs, const mpq_class& eps) {
    if (labels.size() != rhs.size()) throw std::invalid_argument("parse_mc: one right side per label");
    std::map<int, int> pos;
    for (std::size_t k = 0; k < labels.size(); ++k) pos[labels[k]] = static_cast<int>(k);
    auto index = [&](McLexer& lx) {
        long l = lx.integer();
        auto it = pos.find(static_cast<int>(l));
        if (it == pos.end()) lx.fail("unknown form index " + std::to_string(l));
        return it->second;
    };
    LieAlgebra::MC mc(labels.size());
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        McLexer lx{rhs[k]};
        lx.skip();
        if (lx.s.substr(lx.pos) == "0") continue;
        bool first = true;
        while (true) {
            lx.skip();
            if (lx.pos >= lx.s.size()) break;
            mpq_class sign = 1;
            if (lx.eat('-')) sign = -1;
            else if (!lx.eat('+') && !first) lx.fail("expected + or -");
            first = false;
            mpq_class coef = 1;
            // rational factor followed by '*', or the first index of the wedge
            long a = -1;
            if (lx.at_digit()) {
                long n = lx.integer();
                if (lx.eat('/')) {
                    long d = lx.integer();
                    coef = mpq_class(n, d);
                    coef.canonicalize();
                    if (!lx.eat('*')) lx.fail("expected '*'");
                } else if (lx.eat('*')) {
                    coef = n;
                } else {
                    a = n;
                }
            }
            if (a < 0) {
                lx.skip();
                if (lx.pos < lx.s.size() && lx.s[lx.pos] == 'e') {
                    ++lx.pos;
                    coef *= eps;
                    if (!lx.eat('*')) lx.fail("expected '*'");
                }
                a = lx.integer();
            }
            auto it = pos.find(static_cast<int>(a));
            if (it == pos.end()) lx.fail("unknown form index " + std::to_string(a));
            if (!lx.eat('^')) lx.fail("expected '^'");
            int b = index(lx);
            int ia = it->second;
            mpq_class v = sign * coef;
            if (ia == b) lx.fail("repeated index in wedge");
            if (ia > b) {
                std::swap(ia, b);
                v = -v;
            }
            mc[k][{ia, b}] += v;
            if (mc[k][{ia, b}] == 0) mc[k].erase({ia, b});
        }
    }
    return mc;
}

std::string format_mc_line(const std::map<std::pair<int, int>, mpq_class>& line, const std::vector<int>& labels) {
    if (line.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [ij, v] : line) {
        mpq_class a = abs(v);
        out += first ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + ");
        first = false;
        if (a != 1) out += a.get_str() + "*";
        out += std::to_string(labels[ij.first]) + "^" + std::to_string(labels[ij.second]);
    }
    return out;
}

}  // namespace ek::la
