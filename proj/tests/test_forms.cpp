#include <random>

#include "doctest.h"
#include "ek/forms.hpp"

using namespace ek::forms;
using ek::sym::parse;
using ek::sym::x;

namespace {

ChartPtr C() { return chart_x5(); }

Form one_form(std::initializer_list<const char*> cs) {
    Form f(C(), 1);
    int i = 0;
    for (const char* c : cs) f.add_term(1u << i++, parse(c));
    return f;
}

VectorField vf(std::initializer_list<const char*> cs) {
    std::vector<Expr> v;
    for (const char* c : cs) v.push_back(parse(c));
    return VectorField(C(), v);
}

CoframePtr coframe_t(const Expr& t) {
    Expr t2 = t * t, t3 = t2 * t;
    std::vector<Form> w;
    w.push_back(one_form({"1", "0", "0", "-3*x2", "x1"}));
    Form w1(C(), 1), w2(C(), 1), w3(C(), 1), w4(C(), 1);
    w1.add_term(2, 1);
    w1.add_term(4, 3 * t);
    w1.add_term(8, 3 * t2);
    w1.add_term(16, t3);
    w2.add_term(4, 1);
    w2.add_term(8, 2 * t);
    w2.add_term(16, t2);
    w3.add_term(8, 1);
    w3.add_term(16, t);
    w4.add_term(16, 1);
    w.insert(w.end(), {w1, w2, w3, w4});
    return make_coframe(C(), w);
}

Expr rand_poly(std::mt19937& g) {
    std::uniform_int_distribution<int> c(-3, 3), v(0, 4), e(0, 2);
    Expr r;
    for (int k = 0; k < 3; ++k) r += Expr(c(g)) * Expr(x(v(g))).pow(e(g)) * Expr(x(v(g))).pow(e(g));
    return r;
}

Form rand_form(std::mt19937& g, int deg) {
    Form f(C(), deg);
    std::uniform_int_distribution<unsigned> m(0, 31);
    for (int k = 0; k < 4; ++k) {
        unsigned mask;
        do mask = m(g);
        while (std::popcount(mask) != deg);
        f.add_term(mask, rand_poly(g));
    }
    return f;
}

VectorField rand_vf(std::mt19937& g) {
    std::vector<Expr> c;
    for (int i = 0; i < 5; ++i) c.push_back(rand_poly(g));
    return VectorField(C(), c);
}

}  // namespace

TEST_CASE("exterior derivative examples") {
    Form a0 = one_form({"1", "0", "0", "-3*x2", "x1"});
    Form expect = wedge(Form::dx(C(), 1), Form::dx(C(), 4)) - wedge(Form::dx(C(), 2), Form::dx(C(), 3)).scaled(3);
    CHECK(exterior_derivative(a0) == expect);
    Form df = Form::exact(C(), parse("x0*x1^2"));
    CHECK(exterior_derivative(df).is_zero());
}

TEST_CASE("lie bracket examples") {
    CHECK(lie_bracket(vf({"0", "1", "0", "0", "0"}), vf({"-x1", "0", "0", "0", "1"})) == vf({"-1", "0", "0", "0", "0"}));
    CHECK(lie_bracket(vf({"0", "0", "1", "0", "0"}), vf({"3*x2", "0", "0", "1", "0"})) == vf({"3", "0", "0", "0", "0"}));
    VectorField X = vf({"x1*x2", "x0", "1", "0", "x3^2"});
    CHECK(lie_bracket(X, X).is_zero());
}

TEST_CASE("coframe expansions") {
    auto cf = coframe_t(parse("t"));
    // d(omega0) = omega1^omega4 - 3 omega2^omega3 in the coframe basis for symbolic t
    auto e = expand_in_coframe(exterior_derivative(cf->form(0)), cf);
    CHECK(e.size() == 2);
    CHECK(e[(1u << 1) | (1u << 4)] == Expr(1));
    CHECK(e[(1u << 2) | (1u << 3)] == Expr(-3));
    auto e4 = expand_in_coframe(Form::dx(C(), 4), cf);
    CHECK(e4.size() == 1);
    CHECK(e4[1u << 4] == Expr(1));
    // d(omega2) = 2 dt ^ omega3
    Form dw2 = exterior_derivative(cf->form(2));
    CHECK(dw2 == wedge(Form::exact(C(), parse("t")), cf->form(3)).scaled(2));
    CHECK(cf->det() == Expr(1));
    // duality
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(evaluate_on(cf->form(i), {cf->frame(j)}) == Expr(i == j ? 1 : 0));
    // frame 4 from inversion
    CHECK(cf->frame(4) == vf({"-x1 - 3*t*x2", "-t^3", "t^2", "-t", "1"}));
    // reconstruction for t = x3
    auto cf3 = coframe_t(parse("x3"));
    Form dt = Form::exact(C(), parse("x3"));
    auto c = expand_in_coframe(dt, cf3);
    Form back(C(), 1);
    for (auto& [m, v] : c) back = back + cf3->form(std::countr_zero(m)).scaled(v);
    CHECK(back == dt);
    CHECK(c[1u << 3] == Expr(1));
}

TEST_CASE("generic rank and growth") {
    CHECK(generic_rank(std::vector<VectorField>{vf({"1", "0", "0", "0", "0"}), vf({"x1", "0", "0", "0", "0"})}) == 1);
    auto cf = coframe_t(parse("x4"));
    CHECK(distribution_growth({cf->frame(4), cf->frame(3)}, 3) == std::vector<int>{2, 3, 5});
    auto cf0 = coframe_t(Expr(0));
    CHECK(distribution_growth({cf0->frame(4), cf0->frame(3)}, 3) == std::vector<int>{2, 2, 2});
    // symbolic elimination path: rank deficient over the field, full at special points excluded
    ExprMatrix m{{parse("x1"), parse("x2")}, {parse("x1*x3"), parse("x2*x3")}};
    CHECK(generic_rank(m) == 1);
}

TEST_CASE("type of vector fields in the contact distribution") {
    auto kerr = coframe_t(parse("(x1 - 2*x3)/(-x2 + 2*x4)"));
    CHECK(type_of(kerr->frame(4), kerr->form(0)) == 2);
    auto cf = coframe_t(parse("x4"));
    int ty = type_of(cf->frame(4), cf->form(0));
    CHECK(ty != 2);
    CHECK(ty >= 3);
    CHECK_THROWS_AS(type_of(cf->frame(0), cf->form(0)), std::invalid_argument);
}

TEST_CASE("property: exterior calculus identities") {
    std::mt19937 g(2024);
    for (int it = 0; it < 25; ++it) {
        Form a = rand_form(g, 1), b = rand_form(g, 2), f = rand_form(g, 0);
        CHECK(exterior_derivative(exterior_derivative(a)).is_zero());
        CHECK(exterior_derivative(exterior_derivative(b)).is_zero());
        CHECK(wedge(a, b) == wedge(b, a));
        CHECK(wedge(a, a).is_zero());
        Form a2 = rand_form(g, 1);
        CHECK(wedge(a, a2) == -wedge(a2, a));
        // Leibniz
        CHECK(exterior_derivative(wedge(a, b)) == wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b)));
        VectorField X = rand_vf(g), Y = rand_vf(g), Z = rand_vf(g);
        // pairing and Jacobi
        CHECK(evaluate_on(exterior_derivative(f), {X}) == X.apply(f.coeff(0u)));
        CHECK((lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))).is_zero());
        // d theta(X,Y) = X theta(Y) - Y theta(X) - theta([X,Y])
        Expr lhs = evaluate_on(exterior_derivative(a), {X, Y});
        Expr rhs = X.apply(evaluate_on(a, {Y})) - Y.apply(evaluate_on(a, {X})) - evaluate_on(a, {lie_bracket(X, Y)});
        CHECK(lhs == rhs);
        // Cartan formula against the component oracle (L_X a)(Y) = X(a(Y)) - a([X,Y])
        CHECK(evaluate_on(lie_derivative(X, a), {Y}) == X.apply(evaluate_on(a, {Y})) - evaluate_on(a, {lie_bracket(X, Y)}));
    }
}

TEST_CASE("property: coframe round trip on random forms") {
    std::mt19937 g(99);
    auto cf = coframe_t(parse("x1*x3 - x4^2 + 2"));
    for (int it = 0; it < 10; ++it) {
        for (int deg : {1, 2}) {
            Form a = rand_form(g, deg);
            Form in = a.to_basis(cf);
            CHECK(in.basis() == cf);
            CHECK(in.to_coordinates() == a);
        }
    }
}
