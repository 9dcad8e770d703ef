#include "doctest.h"
#include "ek/g2alg.hpp"

using namespace ek::g2;
using ek::la::QVec;

TEST_CASE("basis matrices") {
    auto e = build_basis();
    REQUIRE(e.size() == 14);
    CHECK(e[0](0, 2) == mpq_class(4, 3));
    CHECK(e[0](2, 0) == mpq_class(-4, 3));
    CHECK(e[13](0, 2) == mpq_class(-9, 8));
    std::vector<QVec> flat;
    for (const auto& m : e) flat.push_back(m.flatten());
    CHECK(ek::la::rank(flat) == 14);
    // trace free
    for (const auto& m : e) CHECK(m.trace() == 0);
}

TEST_CASE("commutator table") {
    const auto& g = algebra();
    CHECK(g.antisymmetric());
    // [E1, E4] = -E0 ; [E5, E0] = -6 E0
    auto b = g.bracket_basis(1, 4);
    CHECK(b == ek::la::QVec{-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK(g.c(5, 0, 0) == -6);
    auto [bad, total] = g.jacobi();
    CHECK(total == 364);
    CHECK(bad == 0);
    CHECK(g.center().empty());
    CHECK(ek::la::rank(g.derived()) == 14);
}

TEST_CASE("structure equations") {
    auto r = verify_maurer_cartan();
    CHECK(r.matched == 14);
    CHECK(r.convention == 1);
    CHECK(r.mismatches.empty());
    CHECK(r.ok());
    CHECK(ek::la::d_squared_defects(reference_mc()) == 0);
    CHECK(ek::la::d_squared_defects(reference_mc_q()) == 0);
}

TEST_CASE("grading and parabolics") {
    auto r = grading_and_parabolics();
    REQUIRE(r.z_found);
    QVec z = ek::la::zero_vec(14);
    z[5] = mpq_class(1, 3);
    CHECK(r.Z == z);
    const auto& g = algebra();
    auto adz = g.ad(r.Z);
    CHECK(adz(0, 0) == -2);
    CHECK(adz(13, 13) == 2);
    CHECK(r.additive);
    CHECK(r.p2_closed);
    CHECK(r.p12_closed);
    CHECK(r.q_closed);
    CHECK(r.reduction_mismatches.empty());
    CHECK(r.heisenberg);
    CHECK(r.ok());
}

TEST_CASE("invariant forms") {
    auto r = invariant_forms();
    CHECK(r.h_dim == 1);
    CHECK(r.h_signature.zero == 0);
    CHECK(r.h_signature.pos + r.h_signature.neg == 7);
    CHECK(((r.h_signature.pos == 3 && r.h_signature.neg == 4) || (r.h_signature.pos == 4 && r.h_signature.neg == 3)));
    CHECK(r.killing_det != 0);
    CHECK(r.killing_zz != 0);
    CHECK(r.grading_pairing);
    // split real form: Killing signature (8, 6)
    CHECK(r.killing_signature.pos == 8);
    CHECK(r.killing_signature.neg == 6);
    CHECK(r.ok());
}
