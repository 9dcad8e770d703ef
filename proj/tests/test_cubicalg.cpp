#include <random>

#include "doctest.h"
#include "ek/cubicalg.hpp"

using namespace ek::cubic;
using ek::la::QMat;
using ek::la::QVec;

namespace {
QMat rand2(std::mt19937& g) {
    std::uniform_int_distribution<int> d(-6, 6);
    return QMat{{d(g), d(g)}, {d(g), d(g)}};
}
QVec flat(const std::vector<QMat>& ms, std::size_t i) { return ms[i].flatten(); }
std::vector<QVec> flats(const std::vector<QMat>& ms) {
    std::vector<QVec> v;
    for (std::size_t i = 0; i < ms.size(); ++i) v.push_back(flat(ms, i));
    return v;
}
}  // namespace

TEST_CASE("veronese and quadrics") {
    CHECK(veronese(1, 0) == QVec{1, 0, 0, 0});
    CHECK(veronese(1, 2) == QVec{1, 2, 4, 8});
    for (auto q : quadric_values(veronese(1, 2))) CHECK(q == 0);
    auto q = quadric_values(QVec{0, 1, 0, 0});
    CHECK(q[0] == -1);
    CHECK(q[1] == 0);
    CHECK(q[2] == 0);
}

TEST_CASE("irreducible representation") {
    CHECK(irrep_rho(QMat::identity(2)) == QMat::identity(4));
    QMat d = irrep_rho(QMat{{2, 0}, {0, 5}});
    CHECK(d == QMat{{8, 0, 0, 0}, {0, 20, 0, 0}, {0, 0, 50, 0}, {0, 0, 0, 125}});
    std::mt19937 g(4242);
    std::uniform_int_distribution<int> w(-5, 5);
    for (int it = 0; it < 20; ++it) {
        QMat A = rand2(g), B = rand2(g);
        CHECK(irrep_rho(A) * irrep_rho(B) == irrep_rho(A * B));
        mpq_class s = w(g), u = w(g);
        QVec Aw = A * QVec{s, u};
        CHECK(irrep_rho(A) * veronese(s, u) == veronese(Aw[0], Aw[1]));
        // symplectic form is preserved up to det(A)^3
        QMat R = irrep_rho(A), W = standard_symplectic();
        mpq_class dA = ek::la::det(A);
        CHECK(R.transpose() * W * R == W * (dA * dA * dA));
    }
}

TEST_CASE("legendrian symplectic structure") {
    auto sol = legendrian_symplectic();
    REQUIRE(sol.basis.size() == 1);
    const QVec& w = sol.basis[0];
    CHECK(w[2] == -w[3] / 3);  // omega_14 = -1/3 omega_23
    CHECK(w[0] == 0);
    CHECK(w[1] == 0);
    CHECK(w[4] == 0);
    CHECK(w[5] == 0);
    CHECK(sol.normalized == standard_symplectic());
}

TEST_CASE("stabilizer of the cone") {
    auto st = stabilizer_subalgebra();
    CHECK(st.size() == 4);
    auto rp = rho_prime_basis();
    auto S = flats(st);
    CHECK(ek::la::rank(S) == 4);
    for (const auto& m : rp) CHECK(ek::la::in_span(S, m.flatten()));
    CHECK(ek::la::in_span(S, QMat::identity(4).flatten()));
    // hand differentiation of the beta entries at the identity
    QMat e12{{0, 1}, {0, 0}};
    CHECK(rho_prime(e12) == QMat{{0, 3, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    CHECK(rho_prime(QMat::identity(2)) == QMat::identity(4) * 3);
    CHECK(ek::la::in_span(S, rho_prime(e12).flatten()));
    // closed under commutator
    for (const auto& a : st)
        for (const auto& b : st) CHECK(ek::la::in_span(S, ek::la::commutator(a, b).flatten()));
}
