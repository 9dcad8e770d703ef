#include "doctest.h"
#include "ek/g2alg.hpp"
#include "ek/tanaka.hpp"

using namespace ek::tanaka;

namespace {
std::vector<int> g2_grades(const std::vector<std::size_t>& idx) {
    std::vector<int> g;
    for (auto i : idx) g.push_back(ek::g2::grade(i));
    return g;
}
std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(i);
    return v;
}
}  // namespace

TEST_CASE("heisenberg and derivations") {
    auto m = heisenberg_from_g2();
    CHECK(m.pairing(0, 3) == -1);
    CHECK(m.pairing(1, 2) == 3);
    CHECK(m.pairing.transpose() == m.pairing * -1);
    CHECK(ek::la::det(m.pairing) != 0);
    auto der = graded_derivations(m);
    CHECK(der.size() == 11);
    for (const auto& d : der) CHECK(is_graded_derivation(m, d));
    for (const auto& d : g0_from_g2({5, 6, 7, 8})) CHECK(is_graded_derivation(m, d));
    QMat bad = QMat::identity(5);  // not conformal: E0 must scale by 2
    CHECK_FALSE(is_graded_derivation(m, bad));
    CHECK_THROWS_AS(tanaka_prolong(m, {bad}, 2), std::invalid_argument);
}

TEST_CASE("prolongation of gl2") {
    auto m = heisenberg_from_g2();
    auto t = tanaka_prolong(m, rho_prime_derivations(m), 6);
    CHECK(t.complete);
    CHECK(t.positive_dims() == std::vector<std::size_t>{4, 1, 0});
    CHECK(t.total_dim() == 14);
    auto a = tanaka_prolong(m, g0_from_g2({5, 6, 7, 8}), 6);
    // graded dims agree with the g2 grading
    for (int k = -2; k <= 2; ++k) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < 14; ++i) n += ek::g2::grade(i) == k;
        CHECK(a.dim(k) == n);
    }
    auto L = a.algebra();
    CHECK(L.jacobi().first == 0);
    CHECK(graded_isomorphic(a, ek::g2::algebra(), g2_grades(iota(14))));
}

TEST_CASE("prolongation of the Borel subalgebra") {
    auto m = heisenberg_from_g2();
    auto t = tanaka_prolong(m, g0_from_g2({5, 6, 8}), 6);
    CHECK(t.positive_dims() == std::vector<std::size_t>{1, 0});
    CHECK(t.total_dim() == 9);
    std::vector<std::size_t> q(ek::g2::kQ.begin(), ek::g2::kQ.end());
    CHECK(graded_isomorphic(t, ek::g2::algebra().restrict_to(q), g2_grades(q)));
    // not isomorphic to the full algebra
    CHECK_FALSE(graded_isomorphic(t, ek::g2::algebra(), g2_grades(iota(14))));
}

TEST_CASE("csp prolongation is the contact algebra") {
    auto m = heisenberg_from_g2();
    auto t = tanaka_prolong(m, graded_derivations(m), 2);
    CHECK_FALSE(t.complete);
    CHECK(t.dim(0) == 11);
    // weighted homogeneous generating functions of degree k + 2
    CHECK(t.dim(1) == 24);
    CHECK(t.dim(2) == 46);
}

TEST_CASE("coboundary squares to zero") {
    const auto& g = ek::g2::algebra();
    auto gr = g2_grades(iota(14));
    std::vector<std::size_t> all = iota(14), qt(ek::g2::kQ.begin(), ek::g2::kQ.end());
    for (const auto* tg : {&all, &qt})
        for (int l = 0; l <= 4; ++l)
            for (int q = 0; q <= 3; ++q) {
                QMat a = coboundary(g, gr, *tg, q, l), b = coboundary(g, gr, *tg, q + 1, l);
                if (a.rows() && a.cols() && b.rows()) CHECK((b * a).is_zero());
            }
}

TEST_CASE("cohomology") {
    for (int l = 1; l <= 4; ++l) {
        CHECK(cohomology_dim(Coefficients::G, 1, l) == 0);
        CHECK(cohomology_dim(Coefficients::Q, 1, l) == 0);
    }
    CHECK(cohomology_dim(Coefficients::G, 2, 1) == 8);
    CHECK(cohomology_dim(Coefficients::Q, 2, 1) == 9);
    // H^0 in positive homogeneity vanishes
    CHECK(cohomology_dim(Coefficients::G, 0, 1) == 0);
}

TEST_CASE("no invariant normalization") {
    auto r = normalization_obstruction();
    CHECK(r.cochain_dim == 28);
    CHECK(r.summand_a == 24);
    CHECK(r.summand_b == 4);
    CHECK(r.ker_dim == 24);
    CHECK(r.im_tilde == 16);
    CHECK(r.im_q == 15);
    CHECK(r.im_q_inside);
    CHECK(r.h2_g == 8);
    CHECK(r.h2_q == 9);
    CHECK(r.rational);
    CHECK_FALSE(r.lines.empty());
    CHECK(r.lines_outside == 0);
    CHECK(r.g0_invariant_lines == 0);
    CHECK(r.ok());
}
