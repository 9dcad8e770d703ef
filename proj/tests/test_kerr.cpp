#include <cmath>
#include <random>

#include "doctest.h"
#include "ek/engel.hpp"
#include "ek/kerr.hpp"

using namespace ek;
using namespace ek::kerr;
using sym::Expr;
using sym::parse;

namespace {
Expr X(int i) { return Expr(sym::x(i)); }
double closed_s2(const std::array<double, 5>& x) { return (x[1] - 2 * x[3]) / (-x[2] + 2 * x[4]); }
}  // namespace

TEST_CASE("y coordinates") {
    auto y0 = y_of(Expr(0));
    CHECK(y0[0] == X(0) + X(1) * X(4));
    CHECK(y0[1] == X(1));
    CHECK(y0[2] == X(2));
    CHECK(y0[3] == X(3));
    auto y = y_of(parse("x0*x3 + q"));
    for (int i = 0; i < 4; ++i) CHECK(sym::substitute(y[i], {{sym::x(4), Expr(0)}}) == X(i));
    Expr T(sym::t_jet());
    auto g = y_of(T);
    CHECK(g[0] == parse("x0 + x1*x4 + 3*t*x2*x4 - t^3*x4^2"));
    CHECK(g[1] == parse("x1 + t^3*x4"));
    CHECK(g[2] == parse("x2 - t^2*x4"));
    CHECK(g[3] == parse("x3 + t*x4"));
}

TEST_CASE("Kerr pairs") {
    auto r = verify_kerr_pair(parse("t - (s*y3 - y1)/y2"), parse("(x1 - s*x3)/(-x2 + s*x4)"));
    INFO(r.str());
    CHECK(r.pass());
    CHECK(r.wedge_vanishes);

    CHECK(verify_kerr_pair(parse("t - c"), parse("c")).pass());

    auto f = verify_kerr_pair(parse("t"), X(4));
    CHECK_FALSE(f.pass());
    CHECK(f.J == Expr(-1));

    // F vanishes but the marking is not a solution of F = 0
    CHECK_FALSE(verify_kerr_pair(parse("t - y3"), X(3)).F_vanishes);
    CHECK_THROWS_AS(verify_kerr_pair(parse("t - x1"), X(1)), std::invalid_argument);
    CHECK_THROWS_AS(verify_kerr_pair(parse("t - y4"), X(1)), std::invalid_argument);
}

TEST_CASE("J = 0 in wedge form") {
    CHECK(kerr_wedge_identity(parse("(x1 - s*x3)/(-x2 + s*x4)")));
    CHECK(kerr_wedge_identity(X(4)));
    for (std::uint64_t k = 0; k < 6; ++k) {
        Expr t = engel::random_marking(300 + k);
        INFO(t.str());
        CHECK(kerr_wedge_identity(t));
    }
}

TEST_CASE("numeric solver on the s = 2 family") {
    // at (1,3,1,1,1) the closed form gives t = 1 where y2 = x2 - t^2 x4 vanishes: only the cleared F has that root
    auto r = solve_kerr_numeric(parse("y2*t - (2*y3 - y1)"), {1, 3, 1, 1, 1});
    CHECK(r.t == 1.0);
    CHECK(std::abs(r.J) < 1e-9);
    // the reduced F there is 1/(1 + t)
    CHECK_THROWS_AS(solve_kerr_numeric(parse("t - (2*y3 - y1)/y2"), {1, 3, 1, 1, 1}), SolveError);
    auto q = solve_kerr_numeric(parse("t - (2*y3 - y1)/y2"), {1, 3, 1, 1, 2});
    CHECK(q.t == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(std::abs(q.J) < 1e-9);

    auto c = solve_kerr_numeric(parse("t - 7/3"), {0.3, -1, 2, 5, 1});
    CHECK(c.iterations == 1);
    CHECK(c.t == doctest::Approx(7.0 / 3).epsilon(1e-15));
    CHECK(c.J == 0.0);

    std::mt19937_64 g(17);
    std::uniform_real_distribution<double> u(-2, 2);
    Expr F = parse("y2*t - (2*y3 - y1)");
    int done = 0;
    while (done < 20) {
        std::array<double, 5> x{u(g), u(g), u(g), u(g), u(g)};
        if (std::abs(x[2] - 2 * x[4]) <= 0.1) continue;
        SolveOptions opt;
        opt.guess = closed_s2(x) + 0.05;
        auto s = solve_kerr_numeric(F, x, opt);
        INFO("x = " << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << "," << x[4]);
        CHECK(std::abs(s.J) < 1e-9);
        CHECK(std::abs(s.F) < opt.tol);
        ++done;
    }
}

TEST_CASE("implicit derivatives agree with finite differences") {
    Expr F = parse("10*t + y0 - y2*y3 - 3");
    std::array<double, 5> x{0.4, -0.7, 1.1, 0.3, 0.9};
    SolveOptions opt;
    opt.guess = 1;
    opt.tol = 1e-13;
    auto r = solve_kerr_numeric(F, x, opt);
    for (int i = 0; i < 5; ++i) {
        const double h = 1e-6;
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        SolveOptions o2 = opt;
        o2.guess = r.t;
        double fd = (solve_kerr_numeric(F, xp, o2).t - solve_kerr_numeric(F, xm, o2).t) / (2 * h);
        CHECK(r.t_x[i] == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("solver errors") {
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const SolveError& e) {
            return static_cast<int>(e.kind());
        }
        return -1;
    };
    std::array<double, 5> origin{};
    CHECK(kind([&] { solve_kerr_numeric(parse("t - 1/y2"), origin); }) == static_cast<int>(SolveError::Kind::pole));
    CHECK(kind([&] { solve_kerr_numeric(parse("(t - 1)^2"), origin); }) ==
          static_cast<int>(SolveError::Kind::singular_derivative));
    CHECK(kind([&] { solve_kerr_numeric(parse("t^2 + 1"), origin); }) != -1);
    SolveOptions bad;
    bad.tol = 0;
    CHECK_THROWS_AS(solve_kerr_numeric(parse("t"), origin, bad), std::invalid_argument);
}

TEST_CASE("double fibration coordinates") {
    auto r = coordinate_change_check();
    INFO(r.str());
    CHECK(r.ok());
    REQUIRE(r.forms.size() == 6);
    for (const auto& [n, ok] : r.forms) CHECK(ok);
    CHECK(r.round_trip);
    // y5 = x4 and y4 = x5
    auto phi = x_to_y();
    CHECK(phi[5] == X(4));
    CHECK(phi[4] == X(5));
    CHECK(forms::pullback(omegas_y()[4], chart_x6(), phi) == omegas_x()[4]);
}

TEST_CASE("sections from hypersurfaces") {
    auto grid = sample_grid({0.5, 1.0, 1.5, -0.5, -0.25}, 0.2, 3);
    CHECK(grid.size() == 243);

    auto c = section_from_hypersurface(parse("y4 - 3/2"), grid);
    for (const auto& s : c.samples) CHECK(s.root.t == 1.5);
    CHECK(c.max_J == 0.0);

    SolveOptions opt;
    opt.guess = 0;
    auto f = section_from_hypersurface(parse("y2*y4 - (2*y3 - y1)"), grid, opt);
    CHECK(f.samples.size() == grid.size());
    CHECK(f.max_J < 1e-7);
    for (const auto& s : f.samples) {
        // any root of the cleared cubic is a section; the closed form is the one reached when it is nearest
        double closed = closed_s2(s.root.x);
        if (std::abs(s.root.t - closed) < 1e-3) CHECK(s.root.t == doctest::Approx(closed).epsilon(1e-9));
    }
    // starting at the closed form reproduces it everywhere
    for (const auto& x : grid) {
        SolveOptions o;
        o.guess = closed_s2(x) + 1e-3;
        auto s = section_from_hypersurface(parse("y2*y4 - (2*y3 - y1)"), {x}, o);
        CHECK(std::abs(s.samples[0].root.t - closed_s2(x)) < 1e-10);
    }

    CHECK_THROWS_AS(section_from_hypersurface(parse("y1"), grid), SolveError);
    CHECK_THROWS_AS(section_from_hypersurface(parse("y5 - 1"), grid), std::invalid_argument);
}
