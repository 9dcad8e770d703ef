#include <random>

#include "doctest.h"
#include "ek/models.hpp"

using namespace ek::models;

namespace {
const ConstantStructureSystem& find(const std::vector<ConstantStructureSystem>& cat, const std::string& name, int eps = 0) {
    for (const auto& s : cat)
        if (s.name == name && s.eps == eps) return s;
    throw std::runtime_error("missing " + name);
}
}  // namespace

TEST_CASE("catalogue closes") {
    auto cat = catalogue();
    CHECK(cat.size() == 7);
    for (const auto& s : cat) {
        INFO(s.name << " eps " << s.eps);
        auto r = jacobi_check(s);
        CHECK(r.d2_defects == 0);
        CHECK(r.jacobi_failed == 0);
    }
    CHECK(find(cat, "J!=0").dim() == 6);
    CHECK(find(cat, "J=0,L=0,M=0,P=0,Q!=0").dim() == 6);
    CHECK(find(cat, "submaximal", 1).dim() == 8);
}

TEST_CASE("fractional coefficients are exact") {
    auto s = find(catalogue(), "J!=0");
    CHECK(s.mc[1].at({1, 5}) == mpq_class(-24, 5));
    auto m = find(catalogue(), "J=0,L=0,M!=0,P!=0", -1);
    CHECK(m.mc[4].at({1, 3}) == mpq_class(-27, 2));
    CHECK(m.mc[4].at({0, 3}) == mpq_class(9, 4));
}

TEST_CASE("mutations break closure") {
    auto s = find(catalogue(), "J!=0");
    s.mc[1][{1, 5}] = mpq_class(24, 5);
    auto r = jacobi_check(s);
    CHECK(r.d2_defects > 0);
    CHECK(r.jacobi_failed > 0);
}

TEST_CASE("d^2 and Jacobi agree on random mutations") {
    std::mt19937 rng(99);
    for (const auto& base : catalogue())
        for (int it = 0; it < 10; ++it) {
            auto s = base;
            std::vector<std::pair<std::size_t, std::pair<int, int>>> terms;
            for (std::size_t k = 0; k < s.mc.size(); ++k)
                for (const auto& kv : s.mc[k]) terms.push_back({k, kv.first});
            auto [k, ij] = terms[rng() % terms.size()];
            s.mc[k][ij] *= -2;
            auto r = jacobi_check(s);
            CHECK((r.d2_defects == 0) == (r.jacobi_failed == 0));
        }
}

TEST_CASE("identification") {
    auto cat = catalogue();
    auto neg = identify(find(cat, "submaximal", -1));
    auto pos = identify(find(cat, "submaximal", 1));
    CHECK(neg.semisimple);
    CHECK(pos.semisimple);
    CHECK(neg.killing_signature.pos == 5);
    CHECK(neg.killing_signature.neg == 3);
    CHECK(pos.killing_signature.pos == 4);
    CHECK(pos.killing_signature.neg == 4);
    auto q = identify(find(cat, "J=0,L=0,M=0,P=0,Q!=0"));
    CHECK(q.semisimple);
    CHECK(q.ideal_dims == std::vector<std::size_t>{3, 3});
    CHECK(q.killing_signature.pos == 4);
    CHECK(q.killing_signature.neg == 2);
    auto j = identify(find(cat, "J!=0"));
    CHECK_FALSE(j.semisimple);
}

TEST_CASE("flat symmetry algebra") {
    auto f = flat_symmetry_system();
    CHECK(jacobi_check(f).ok());
    auto g = f.algebra();
    std::vector<ek::la::QVec> low;
    for (std::size_t i = 0; i < 5; ++i) low.push_back(ek::la::unit_vec(9, i));
    CHECK(g.is_subalgebra(low));
    CHECK_FALSE(g.is_ideal(low));
    CHECK_FALSE(identify(f).semisimple);
}
