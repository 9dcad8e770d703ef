#include "ek/cubicalg.hpp"

#include <stdexcept>

namespace ek::cubic {

namespace {

// binary form of degree d in (s, u): coefficient i belongs to s^(d-i) u^i
using BinForm = std::vector<mpq_class>;

BinForm mul(const BinForm& a, const BinForm& b) {
    BinForm r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

BinForm add(const BinForm& a, const BinForm& b, const mpq_class& kb = 1) {
    BinForm r = a;
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += kb * b[i];
    return r;
}

BinForm scale(const BinForm& a, const mpq_class& k) {
    BinForm r = a;
    for (auto& x : r) x *= k;
    return r;
}

// first-order jets: value + eps * tangent
struct Dual {
    mpq_class v, d;
    Dual(mpq_class a = 0, mpq_class b = 0) : v(std::move(a)), d(std::move(b)) {}
    friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
    friend Dual operator*(long k, const Dual& a) { return {a.v * k, a.d * k}; }
};

template <class T>
std::array<std::array<T, 4>, 4> rho_generic(const T& a, const T& b, const T& c, const T& d) {
    // c is the lower-left entry of the 2x2 matrix
    return {{{a * a * a, 3 * (a * a * b), 3 * (a * b * b), b * b * b},
             {a * a * c, a * a * d + 2 * (a * b * c), 2 * (a * b * d) + b * b * c, b * b * d},
             {a * c * c, 2 * (a * d * c) + b * c * c, a * d * d + 2 * (b * d * c), b * d * d},
             {c * c * c, 3 * (d * c * c), 3 * (d * d * c), d * d * d}}};
}

}  // namespace

QVec veronese(const mpq_class& s, const mpq_class& u) { return {s * s * s, s * s * u, s * u * u, u * u * u}; }

std::array<mpq_class, 3> quadric_values(const QVec& p) {
    if (p.size() != 4) throw std::invalid_argument("quadric_values expects a 4-vector");
    return {p[0] * p[2] - p[1] * p[1], p[1] * p[3] - p[2] * p[2], p[1] * p[2] - p[0] * p[3]};
}

QMat irrep_rho(const QMat& A) {
    if (A.rows() != 2 || A.cols() != 2) throw std::invalid_argument("irrep_rho expects a 2x2 matrix");
    auto r = rho_generic<mpq_class>(A(0, 0), A(0, 1), A(1, 0), A(1, 1));
    QMat m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = r[i][j];
    return m;
}

QMat rho_prime(const QMat& X) {
    if (X.rows() != 2 || X.cols() != 2) throw std::invalid_argument("rho_prime expects a 2x2 matrix");
    auto r = rho_generic<Dual>(Dual(1, X(0, 0)), Dual(0, X(0, 1)), Dual(0, X(1, 0)), Dual(1, X(1, 1)));
    QMat m(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = r[i][j].d;
    return m;
}

std::vector<QMat> rho_prime_basis() {
    std::vector<QMat> out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            QMat e(2, 2);
            e(a, b) = 1;
            out.push_back(rho_prime(e));
        }
    return out;
}

SymplecticSolution legendrian_symplectic() {
    // tangent vectors of the cone at s^3 E1 + s^2 u E2 + s u^2 E3 + u^3 E4
    std::array<BinForm, 4> X{BinForm{3, 0, 0}, BinForm{0, 2, 0}, BinForm{0, 0, 1}, BinForm{0, 0, 0}};
    std::array<BinForm, 4> Y{BinForm{0, 0, 0}, BinForm{1, 0, 0}, BinForm{0, 2, 0}, BinForm{0, 0, 3}};
    QMat sys(5, 6);
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
        auto [i, j] = kPairs[k];
        BinForm f = add(mul(X[i], Y[j]), mul(X[j], Y[i]), -1);
        for (int r = 0; r < 5; ++r) sys(r, k) = f[r];
    }
    SymplecticSolution out;
    out.basis = la::nullspace(sys);
    if (out.basis.size() == 1) {
        QVec w = out.basis[0];
        mpq_class n = w[2];  // omega_14
        if (n == 0) throw std::logic_error("symplectic solution has omega_14 = 0");
        out.normalized = QMat(4, 4);
        for (std::size_t k = 0; k < kPairs.size(); ++k) {
            auto [i, j] = kPairs[k];
            out.normalized(i, j) = w[k] / n;
            out.normalized(j, i) = -w[k] / n;
        }
    }
    return out;
}

QMat standard_symplectic() {
    QMat w(4, 4);
    w(0, 3) = 1;
    w(3, 0) = -1;
    w(1, 2) = -3;
    w(2, 1) = 3;
    return w;
}

std::vector<QMat> stabilizer_subalgebra() {
    // cone point p(s,u) as cubic binary forms
    std::array<BinForm, 4> p{BinForm{1, 0, 0, 0}, BinForm{0, 1, 0, 0}, BinForm{0, 0, 1, 0}, BinForm{0, 0, 0, 1}};
    // gradients of the three quadrics at p
    std::array<std::array<BinForm, 4>, 3> grad;
    BinForm z(4);
    grad[0] = {p[2], scale(p[1], -2), p[0], z};
    grad[1] = {z, p[3], scale(p[2], -2), p[1]};
    grad[2] = {scale(p[3], -1), p[2], p[1], scale(p[0], -1)};
    // unknown M = sum m_ab E_ab; condition grad g_k(p) . M p = 0 as a sextic in (s,u)
    QMat sys(3 * 7, 16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            // E_ab p has p[b] in slot a
            for (int k = 0; k < 3; ++k) {
                BinForm f = mul(grad[k][a], p[b]);
                for (int r = 0; r < 7; ++r) sys(k * 7 + r, a * 4 + b) = f[r];
            }
        }
    std::vector<QMat> out;
    for (const auto& v : la::nullspace(sys)) {
        QMat m(4, 4);
        for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = v[i];
        out.push_back(m);
    }
    return out;
}

}  // namespace ek::cubic
