#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ek/cubicalg.hpp"
#include "ek/engel.hpp"
#include "ek/g2alg.hpp"
#include "ek/kerr.hpp"
#include "ek/models.hpp"
#include "ek/tanaka.hpp"

using namespace ek;
using sym::Expr;
using sym::parse;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream why;
    void require(bool c, const std::string& what) {
        if (!c) {
            if (pass) why << what;
            else why << "; " << what;
            pass = false;
        }
    }
};

int failures = 0;

void criterion(int n, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        std::ostringstream m;
        m << "runtime " << secs << " s over " << limit_s << " s";
        o.require(false, m.str());
    }
    std::printf("criterion %2d: %s  %-28s %7.2f s%s%s\n", n, o.pass ? "PASS" : "FAIL", name, secs,
                o.pass ? "" : "  ", o.pass ? "" : o.why.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::vector<Expr> seeded_markings() {
    std::vector<Expr> out;
    for (int k = 0; k < 20; ++k) out.push_back(k % 7 == 3 ? Expr(k - 5) : engel::random_marking(1000 + k));
    return out;
}

const models::ConstantStructureSystem& find(const std::vector<models::ConstantStructureSystem>& cat,
                                            const std::string& name, int eps = 0) {
    for (const auto& s : cat)
        if (s.name == name && s.eps == eps) return s;
    throw std::runtime_error("missing system " + name);
}

}  // namespace

int main() {
    criterion(1, "g2 structure table", 5, [](Outcome& o) {
        auto r = g2::verify_maurer_cartan();
        o.require(r.matched == 14, "matched " + std::to_string(r.matched) + "/14");
        o.require(r.jacobi_checked == 364 && r.jacobi_failed == 0, "jacobi");
    });

    criterion(2, "parabolic reduction", 0, [](Outcome& o) {
        auto r = g2::grading_and_parabolics();
        o.require(r.q_closed, "q not closed");
        o.require(r.reduction_matches, "reduced equations differ");
    });

    criterion(3, "flat invariants", 0, [](Outcome& o) {
        auto inv = engel::invariants_closed_form(Expr(0));
        for (std::size_t i = 0; i < 10; ++i)
            o.require(inv.field(i).is_zero(), std::string(engel::InvariantJet::names()[i]) + " != 0");
        auto b = engel::classify(inv);
        o.require(b.branch == "flat" && b.max_symmetry == 9, "classified as " + b.str());
    });

    criterion(4, "Kerr family", 10, [](Outcome& o) {
        Expr t = parse("(x1 - s*x3)/(-x2 + s*x4)");
        o.require(engel::invariants_closed_form(t).J.is_zero(), "J != 0");
        auto r = kerr::verify_kerr_pair(parse("t - (s*y3 - y1)/y2"), t);
        o.require(r.pass(), r.str());
    });

    const auto markings = seeded_markings();

    criterion(5, "two invariant paths", 60, [&](Outcome& o) {
        for (const Expr& t : markings) {
            auto cf = engel::adapted_coframe(t);
            auto closed = engel::invariants_closed_form(cf);
            auto rep = engel::invariants_from_structure_equations(cf);
            for (std::size_t i = 0; i < 10; ++i)
                o.require(closed.field(i) == rep.jet.field(i),
                          std::string(engel::InvariantJet::names()[i]) + " differs at t = " + t.str());
            o.require(engel::J_coordinate(t) == closed.J, "coordinate J at t = " + t.str());
            o.require(closed.J == -cf.xi(4).apply(t), "-xi4(t) at t = " + t.str());
        }
    });

    criterion(6, "geometry battery", 0, [&](Outcome& o) {
        for (const Expr& t : markings) {
            auto g = engel::geometric_checks(t);
            o.require(g.ok(), "t = " + t.str() + ": " + g.str());
            o.require(g.wedge_identity, "wedge identity at t = " + t.str());
            o.require(g.D_integrable == g.J_zero, "integrability at t = " + t.str());
            if (g.J_zero) o.require(g.H_prime_rank == 4, "rank H' at t = " + t.str());
            else o.require(g.D_growth == std::vector<int>{2, 3, 5}, "growth at t = " + t.str());
        }
    });

    criterion(7, "tautological forms", 0, [](Outcome& o) {
        for (const Expr& t : {Expr(0), Expr(sym::x(4)), engel::random_marking(1002)}) {
            auto r = engel::tautological_forms(t);
            o.require(r.ok(), "t = " + t.str() + ": " + r.str());
            o.require(r.T102 == r.T102_printed, "T102 at t = " + t.str());
        }
    });

    criterion(8, "flat reduction", 120, [](Outcome& o) {
        auto r = engel::verify_flat_reduction();
        o.require(r.equations.size() == 9, "equation count");
        o.require(r.ok(), r.str());
    });

    criterion(9, "Tanaka prolongation", 60, [](Outcome& o) {
        using namespace tanaka;
        auto m = heisenberg_from_g2();
        auto gl = tanaka_prolong(m, rho_prime_derivations(m), 6);
        o.require(gl.complete && gl.total_dim() == 14 && gl.positive_dims() == std::vector<std::size_t>{4, 1, 0},
                  "gl2: " + gl.str());
        auto bo = tanaka_prolong(m, g0_from_g2({5, 6, 8}), 6);
        o.require(bo.complete && bo.total_dim() == 9 && bo.positive_dims() == std::vector<std::size_t>{1, 0},
                  "borel: " + bo.str());
        for (int l = 1; l <= 4; ++l)
            o.require(cohomology_dim(Coefficients::G, 1, l) == 0, "H1_" + std::to_string(l));
        auto r = normalization_obstruction();
        o.require(r.h2_g == 8 && r.h2_q == 9, "H2");
        o.require(r.im_q == 15 && r.im_tilde == 16 && r.im_q_inside, "images");
        o.require(r.lines_outside == 0 && r.ok(), r.str());
    });

    criterion(10, "homogeneous models", 0, [](Outcome& o) {
        auto cat = models::catalogue();
        o.require(cat.size() == 7, "catalogue size");
        for (const auto& s : cat) o.require(models::jacobi_check(s).ok(), "d^2 on " + s.name);
        auto neg = models::identify(find(cat, "submaximal", -1));
        auto pos = models::identify(find(cat, "submaximal", 1));
        o.require(neg.semisimple && pos.semisimple, "submaximal not semisimple");
        std::set<std::pair<std::size_t, std::size_t>> sig{{neg.killing_signature.pos, neg.killing_signature.neg},
                                                          {pos.killing_signature.pos, pos.killing_signature.neg}};
        o.require(sig == std::set<std::pair<std::size_t, std::size_t>>{{5, 3}, {4, 4}}, "signatures");
        auto q = models::identify(find(cat, "J=0,L=0,M=0,P=0,Q!=0"));
        o.require(q.ideal_dims == std::vector<std::size_t>{3, 3}, "split " + q.str());
    });

    criterion(11, "numeric Kerr", 5, [](Outcome& o) {
        Expr F = parse("y2*t - (2*y3 - y1)");
        std::mt19937_64 g(2024);
        std::uniform_real_distribution<double> u(-2, 2);
        int done = 0;
        while (done < 20) {
            std::array<double, 5> x{u(g), u(g), u(g), u(g), u(g)};
            double den = -x[2] + 2 * x[4];
            if (std::abs(den) <= 0.1) continue;
            double closed = (x[1] - 2 * x[3]) / den;
            kerr::SolveOptions opt;
            opt.guess = closed + 0.05;
            auto s = kerr::solve_kerr_numeric(F, x, opt);
            o.require(std::abs(s.F) < 1e-10, "|F| too large");
            o.require(std::abs(s.J) < 1e-7, "|J| too large");
            o.require(std::abs(s.t - closed) <= 1e-10 * std::max(1.0, std::abs(closed)), "closed form mismatch");
            ++done;
        }
    });

    criterion(12, "cubic algebra", 0, [](Outcome& o) {
        using la::QMat;
        using la::QVec;
        std::mt19937 g(4242);
        std::uniform_int_distribution<int> d(-6, 6), w(-5, 5);
        for (int it = 0; it < 20; ++it) {
            QMat A{{d(g), d(g)}, {d(g), d(g)}}, B{{d(g), d(g)}, {d(g), d(g)}};
            o.require(cubic::irrep_rho(A) * cubic::irrep_rho(B) == cubic::irrep_rho(A * B), "homomorphism");
            mpq_class s = w(g), v = w(g);
            QVec Aw = A * QVec{s, v};
            o.require(cubic::irrep_rho(A) * cubic::veronese(s, v) == cubic::veronese(Aw[0], Aw[1]), "equivariance");
        }
        auto sol = cubic::legendrian_symplectic();
        o.require(sol.basis.size() == 1, "solution space dimension");
        if (sol.basis.size() == 1) o.require(sol.basis[0][2] == -sol.basis[0][3] / 3, "omega14 = -omega23/3");
        auto st = cubic::stabilizer_subalgebra();
        std::vector<QVec> S, R, both;
        for (const auto& m : st) S.push_back(m.flatten());
        for (const auto& m : cubic::rho_prime_basis()) R.push_back(m.flatten());
        both = S;
        both.insert(both.end(), R.begin(), R.end());
        o.require(st.size() == 4 && la::rank(S) == 4, "stabilizer dimension");
        o.require(la::rank(R) == 4 && la::rank(both) == 4, "span differs from rho'(gl2)");
    });

    return failures == 0 ? 0 : 1;
}
