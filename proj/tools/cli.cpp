#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "ek/cubicalg.hpp"
#include "ek/engel.hpp"
#include "ek/g2alg.hpp"
#include "ek/kerr.hpp"
#include "ek/models.hpp"
#include "ek/tanaka.hpp"

namespace ek::cli {

using json = nlohmann::ordered_json;
using sym::Expr;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string t, F, H, at, g0 = "gl2", coeff = "g", format = "text", out;
    double guess = 0, tol = 1e-10, spacing = 0.1;
    int grid = 1, q = 2, l = 1, max_degree = 6;
    std::uint64_t seed = 1;
    bool seed_given = false, printed_u3 = false;
};

// collects results in json and text form
struct Report {
    json results = json::object();
    std::ostringstream text;
    bool failed = false;

    void check(bool ok, const std::string& what) {
        text << (ok ? "PASS " : "FAIL ") << what << "\n";
        results["checks"].push_back({{"item", what}, {"pass", ok}});
        if (!ok) failed = true;
    }
};

Expr parse_expr(const std::string& s, const char* what) {
    if (s.empty()) throw InputError(std::string("missing --") + what);
    try {
        return sym::parse(s);
    } catch (const sym::ParseError& e) {
        throw InputError(std::string("--") + what + ": " + e.what());
    }
}

mpq_class parse_number(std::string v) {
    v.erase(std::remove_if(v.begin(), v.end(), ::isspace), v.end());
    if (v.empty()) throw InputError("empty number");
    auto dot = v.find('.');
    try {
        if (dot == std::string::npos) {
            mpq_class q(v);
            q.canonicalize();
            return q;
        }
        std::string digits = v.substr(0, dot) + v.substr(dot + 1);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, v.size() - dot - 1);
        mpq_class q(mpz_class(digits), den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("malformed number '" + v + "'");
    }
}

// "x0=1,x1=1/2" -> exact values; unknown names are input errors
std::map<sym::Var, mpq_class> parse_point(const std::string& s) {
    std::map<sym::Var, mpq_class> p;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("--at expects name=value pairs, got '" + item + "'");
        std::string name = item.substr(0, eq);
        name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
        auto v = sym::find_var(name);
        if (!v) throw InputError("--at: unknown symbol '" + name + "'");
        p[*v] = parse_number(item.substr(eq + 1));
    }
    return p;
}

std::array<double, 5> x_point(const std::string& s) {
    std::array<double, 5> x{};
    for (const auto& [v, q] : parse_point(s)) {
        int i = sym::x_index(v);
        if (i < 0 || i > 4) throw InputError("--at: only x0..x4 allowed here");
        x[i] = q.get_d();
    }
    return x;
}

Expr marking(const Options& o, Report& r) {
    Expr t;
    if (!o.t.empty()) t = parse_expr(o.t, "t");
    else if (o.seed_given) t = engel::random_marking(o.seed);
    else throw InputError("missing --t (or --seed for a random quadratic marking)");
    try {
        engel::check_marking(t);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    r.results["t"] = t.str();
    return t;
}

const char* vanishing_name(engel::Vanishing v) {
    switch (v) {
        case engel::Vanishing::zero: return "zero";
        case engel::Vanishing::nonzero: return "nonzero";
        default: return "non-constant";
    }
}

json branch_json(const engel::BranchLabel& b) {
    json j{{"branch", b.branch}, {"constant", b.constant}, {"annotation", b.annotation}};
    j["max_symmetry"] = b.max_symmetry ? json(*b.max_symmetry) : json(nullptr);
    if (!b.offending.empty()) j["offending"] = b.offending;
    for (const auto& [n, v] : b.path) j["path"].push_back({{"invariant", n}, {"vanishing", vanishing_name(v)}});
    return j;
}

std::string ints(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// ---- commands ------------------------------------------------------------------------

void cmd_invariants(const Options& o, Report& r) {
    Expr t = marking(o, r);
    auto cf = engel::adapted_coframe(t);
    auto inv = engel::invariants_closed_form(cf);
    auto rep = engel::invariants_from_structure_equations(cf);
    for (std::size_t i = 0; i < 10; ++i) {
        const char* n = engel::InvariantJet::names()[i];
        r.results["invariants"][n] = inv.field(i).str();
        r.text << n << " = " << inv.field(i).str() << "\n";
    }
    bool agree = true;
    for (std::size_t i = 0; i < 10; ++i) agree = agree && inv.field(i) == rep.jet.field(i);
    auto b = engel::classify(inv);
    r.results["classification"] = branch_json(b);
    r.text << "branch: " << b.str() << "\n";
    r.check(agree, "closed form and structure equations agree");
    r.check(rep.identities_hold(), "structure equation identities");
    r.check(engel::J_coordinate(t) == inv.J, "J equals its coordinate expression");
}

void cmd_classify(const Options& o, Report& r) {
    Expr t = marking(o, r);
    auto inv = engel::invariants_closed_form(t);
    engel::BranchLabel b = o.at.empty() ? engel::classify(inv) : engel::classify_at(inv, parse_point(o.at));
    if (!o.at.empty()) r.results["at"] = o.at;
    r.results["classification"] = branch_json(b);
    r.text << b.str() << "\n";
    for (const auto& [n, v] : b.path) r.text << "  " << n << ": " << vanishing_name(v) << "\n";
}

void cmd_growth(const Options& o, Report& r) {
    Expr t = marking(o, r);
    auto cf = engel::adapted_coframe(t);
    auto g = forms::distribution_growth({cf.xi(4), cf.xi(3)}, 3, o.seed);
    r.results["growth"] = g;
    r.text << "growth of span(xi4, xi3): " << ints(g) << "\n";
    if (!o.at.empty()) {
        auto p = parse_point(o.at);
        forms::ExprMatrix m{cf.xi(4).components(), cf.xi(3).components(), forms::lie_bracket(cf.xi(4), cf.xi(3)).components()};
        auto rk = forms::rank_at(m, p);
        if (!rk) throw InputError("--at: pole at the given point");
        r.results["rank_D_prime_at"] = *rk;
        r.text << "rank of D' at point: " << *rk << "\n";
    }
}

void cmd_geometry(const Options& o, Report& r) {
    Expr t = marking(o, r);
    auto g = engel::geometric_checks(t);
    r.results["J"] = g.J.str();
    r.results["D_integrable"] = g.D_integrable;
    r.results["D_growth"] = g.D_growth;
    r.results["H_prime_rank"] = g.H_prime_rank;
    r.results["type_xi4"] = g.type_xi4;
    r.results["H_prime_integrable"] = g.H_prime_integrable;
    if (g.J_zero) {
        r.results["xi3_xi3_xi2_in_H_prime"] = g.xi3_xi3_xi2_in_H_prime;
        r.results["R_integrable"] = g.R_integrable;
        r.results["R_coefficient"] = g.R_coefficient.str();
    }
    r.text << g.str();
    r.check(g.wedge_identity, "d w2 ^ w0 ^ w1 ^ w2 = 2 J vol");
    r.check(g.weyl_identity, "nabla_xi4 xi4 = J xi3");
    r.check(g.ok(), "equivalences");
    for (const auto& f : g.failures) r.results["failures"].push_back(f);
}

void cmd_tautological(const Options& o, Report& r) {
    Expr t = marking(o, r);
    if (!t.is_polynomial()) throw InputError("tautological forms need a polynomial marking");
    auto tf = engel::tautological_forms(t);
    r.results["T102"] = tf.T102.str();
    r.results["T106"] = tf.T106.str();
    r.results["T124"] = tf.T124.str();
    r.text << tf.str();
    r.check(tf.check_i && tf.check_ii && tf.check_iii && tf.check_iv, "tautological form identities");
    r.check(tf.theta6_consistent && tf.T106_ok, "theta6 consistency");
    r.check(tf.T102 == tf.T102_printed, "T102 closed formula");
}

void cmd_kerr_verify(const Options& o, Report& r) {
    Expr F = parse_expr(o.F, "F");
    Expr t = parse_expr(o.t, "t");
    engel::check_marking(t);
    auto k = kerr::verify_kerr_pair(F, t);
    r.results["F"] = F.str();
    r.results["t"] = t.str();
    r.results["F_residual"] = k.F_residual.str();
    r.results["J"] = k.J.str();
    r.text << "F(y(t), t) = " << k.F_residual.str() << "\nJ = " << k.J.str() << "\n";
    r.check(k.F_vanishes, "F(y(t), t) = 0");
    r.check(k.J_vanishes, "J = 0");
    if (k.pass()) r.check(k.wedge_vanishes, "d w2 ^ w0 ^ w1 ^ w2 = 0");
}

json root_json(const kerr::NumericRoot& s) {
    return {{"x", s.x}, {"t", s.t}, {"F", s.F}, {"dF_dt", s.dF_dt}, {"J", s.J}, {"t_x", s.t_x}, {"iterations", s.iterations}};
}

kerr::SolveOptions solve_options(const Options& o) {
    if (!(o.tol > 0)) throw InputError("--tol must be positive");
    kerr::SolveOptions s;
    s.guess = o.guess;
    s.tol = o.tol;
    return s;
}

void cmd_kerr_solve(const Options& o, Report& r) {
    Expr F = parse_expr(o.F, "F");
    auto x = x_point(o.at);
    auto s = kerr::solve_kerr_numeric(F, x, solve_options(o));
    r.results["F"] = F.str();
    r.results["root"] = root_json(s);
    r.text.precision(15);
    r.text << "t = " << s.t << "  |F| = " << std::abs(s.F) << "  |J| = " << std::abs(s.J) << "  iterations " << s.iterations << "\n";
    r.check(std::abs(s.F) < o.tol, "|F| < tol");
    r.check(std::abs(s.J) < 1e3 * o.tol, "|J| < 1e3 tol");
}

void cmd_kerr_section(const Options& o, Report& r) {
    Expr H = parse_expr(o.H, "H");
    if (o.grid < 1) throw InputError("--grid must be positive");
    auto pts = kerr::sample_grid(x_point(o.at), o.spacing, o.grid);
    auto rep = kerr::section_from_hypersurface(H, pts, solve_options(o));
    r.results["H"] = H.str();
    for (const auto& s : rep.samples) r.results["samples"].push_back(root_json(s.root));
    r.results["max_F"] = rep.max_F;
    r.results["max_J"] = rep.max_J;
    r.text << rep.str();
    r.check(rep.max_F < o.tol, "max |F| < tol");
    r.check(rep.max_J < 1e3 * o.tol, "max |J| < 1e3 tol");
    if (!o.out.empty() && o.out.size() > 4 && o.out.substr(o.out.size() - 4) == ".csv") {
        std::ofstream f(o.out);
        f.precision(17);
        f << "x0,x1,x2,x3,x4,t,F,J\n";
        for (const auto& s : rep.samples) {
            for (double v : s.root.x) f << v << ",";
            f << s.root.t << "," << s.root.F << "," << s.root.J << "\n";
        }
    }
}

void cmd_fibration(const Options&, Report& r) {
    auto c = kerr::coordinate_change_check();
    r.text << c.str();
    for (const auto& [n, ok] : c.forms) r.check(ok, "pullback of " + n);
    r.check(c.xi4_x && c.xi7_x, "dual frame in the x chart");
    r.check(c.xi4_y && c.xi7_y, "dual frame in the y chart");
    r.check(c.xi4_push && c.xi7_push, "xi4 and xi7 correspond");
    r.check(c.round_trip, "coordinate change round trip");
}

void cmd_g2(const Options&, Report& r) {
    auto mc = g2::verify_maurer_cartan();
    r.results["maurer_cartan_matched"] = mc.matched;
    r.results["jacobi_passed"] = mc.jacobi_checked - mc.jacobi_failed;
    r.results["jacobi_checked"] = mc.jacobi_checked;
    r.text << mc.matched << "/14 Maurer-Cartan equations matched\n";
    r.text << (mc.jacobi_checked - mc.jacobi_failed) << "/" << mc.jacobi_checked << " Jacobi triples\n";
    for (const auto& m : mc.mismatches) r.text << "  " << m << "\n";
    r.check(mc.ok(), "Maurer-Cartan equations and Jacobi identity");
    auto gr = g2::grading_and_parabolics();
    r.check(gr.z_found && gr.additive, "grading element");
    r.check(gr.p2_closed && gr.p12_closed && gr.q_closed, "parabolic subalgebras close");
    r.check(gr.reduction_matches, "reduced structure equations");
    r.check(gr.heisenberg, "negative part is Heisenberg");
    auto inv = g2::invariant_forms();
    r.results["killing_signature"] = inv.killing_signature.str();
    r.results["h_signature"] = inv.h_signature.str();
    r.text << "Killing signature " << inv.killing_signature.str() << ", invariant form on R^7 " << inv.h_signature.str() << "\n";
    r.check(inv.ok(), "invariant forms");
}

void cmd_tanaka_prolong(const Options& o, Report& r) {
    auto m = tanaka::heisenberg_from_g2();
    std::vector<la::QMat> g0;
    if (o.g0 == "gl2") g0 = tanaka::rho_prime_derivations(m);
    else if (o.g0 == "borel") g0 = tanaka::g0_from_g2({5, 6, 8});
    else if (o.g0 == "g2") g0 = tanaka::g0_from_g2({5, 6, 7, 8});
    else if (o.g0 == "csp") g0 = tanaka::graded_derivations(m);
    else throw InputError("--g0 must be gl2, borel, g2 or csp");
    auto t = tanaka::tanaka_prolong(m, g0, o.max_degree);
    std::vector<std::size_t> dims;
    for (int k = -2; k <= t.top(); ++k) dims.push_back(t.dim(k));
    r.results["g0"] = o.g0;
    r.results["dims_from_minus_2"] = dims;
    r.results["positive_dims"] = t.positive_dims();
    r.results["complete"] = t.complete;
    if (t.complete) r.results["total"] = t.total_dim();
    r.text << t.str();
}

void cmd_tanaka_cohomology(const Options& o, Report& r) {
    tanaka::Coefficients c;
    if (o.coeff == "g") c = tanaka::Coefficients::G;
    else if (o.coeff == "q") c = tanaka::Coefficients::Q;
    else throw InputError("--coeff must be g or q");
    if (o.q < 0 || o.l < 0) throw InputError("--q and --l must be nonnegative");
    auto d = tanaka::cohomology_dim(c, o.q, o.l);
    r.results["coefficients"] = o.coeff;
    r.results["q"] = o.q;
    r.results["l"] = o.l;
    r.results["dim"] = d;
    r.text << "H^" << o.q << "(m, " << o.coeff << ")_" << o.l << " = " << d << "\n";
}

void cmd_tanaka_normalization(const Options&, Report& r) {
    auto n = tanaka::normalization_obstruction();
    r.results["im_d"] = n.im_q;
    r.results["im_d_tilde"] = n.im_tilde;
    r.results["h2_g"] = n.h2_g;
    r.results["h2_q"] = n.h2_q;
    r.results["g0_invariant_lines"] = n.g0_invariant_lines;
    r.text << n.str();
    r.check(n.im_q_inside, "Im d inside Im d~");
    r.check(n.lines_outside == 0, "invariant lines of Im d~ lie in Im d");
    r.check(n.ok(), "no invariant normalization");
}

void cmd_models(const Options&, Report& r) {
    for (const auto& s : models::catalogue()) {
        std::string name = s.name + (s.eps ? (s.eps > 0 ? " eps=+1" : " eps=-1") : "");
        auto j = models::jacobi_check(s);
        auto a = models::identify(s);
        r.results["systems"].push_back({{"name", name},
                                        {"dim", s.dim()},
                                        {"d2_defects", j.d2_defects},
                                        {"jacobi_failed", j.jacobi_failed},
                                        {"semisimple", a.semisimple},
                                        {"killing_signature", a.killing_signature.str()},
                                        {"ideal_dims", a.ideal_dims}});
        r.text << name << ": " << a.str() << "\n";
        r.check(j.ok(), name + " d^2 = 0");
    }
}

void cmd_reduction(const Options& o, Report& r) {
    auto f = engel::verify_flat_reduction(o.printed_u3);
    for (const auto& e : f.equations) r.results["equations"].push_back({{"name", e.name}, {"zero", e.zero}, {"offending", e.offending}});
    for (const auto& [k, v] : f.values) r.results["values"][k] = v.str();
    r.text << f.str();
    for (const auto& e : f.equations) r.check(e.zero, e.name + " vanishes");
}

void cmd_cubic(const Options& o, Report& r) {
    std::mt19937_64 g(o.seed);
    std::uniform_int_distribution<int> d(-6, 6);
    bool hom = true, equi = true;
    for (int it = 0; it < 20; ++it) {
        la::QMat A{{d(g), d(g)}, {d(g), d(g)}}, B{{d(g), d(g)}, {d(g), d(g)}};
        hom = hom && cubic::irrep_rho(A) * cubic::irrep_rho(B) == cubic::irrep_rho(A * B);
        mpq_class s = d(g), u = d(g);
        la::QVec w = A * la::QVec{s, u};
        equi = equi && cubic::irrep_rho(A) * cubic::veronese(s, u) == cubic::veronese(w[0], w[1]);
    }
    r.check(hom, "rho is a homomorphism on 20 seeded matrices");
    r.check(equi, "Veronese map is equivariant on 20 seeded pairs");
    auto sol = cubic::legendrian_symplectic();
    r.results["symplectic_solutions"] = sol.basis.size();
    r.check(sol.basis.size() == 1, "Legendrian symplectic forms form a line");
    if (sol.basis.size() == 1) {
        const auto& w = sol.basis[0];
        r.check(w[2] == -w[3] / 3, "omega14 = -omega23/3");
    }
    auto st = cubic::stabilizer_subalgebra();
    std::vector<la::QVec> S;
    for (const auto& m : st) S.push_back(m.flatten());
    bool same = la::rank(S) == 4;
    for (const auto& m : cubic::rho_prime_basis()) same = same && la::in_span(S, m.flatten());
    r.results["stabilizer_dim"] = st.size();
    r.check(st.size() == 4 && same, "stabilizer equals rho'(gl2)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ekit: invariants and checks for contact Engel structures"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--t", o.t, "marking function in x0..x4");
    app.add_option("--F", o.F, "Kerr function in y0..y3, t");
    app.add_option("--H", o.H, "hypersurface in y0..y4");
    app.add_option("--at", o.at, "point, e.g. \"x0=1,x1=1/2\"");
    app.add_option("--guess", o.guess, "Newton starting value");
    app.add_option("--tol", o.tol, "tolerance on |F|");
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", o.seed, "seed for randomized inputs");
    app.add_option("--out", o.out, "also write the report here (.csv for section samples)");
    app.add_option("--grid", o.grid, "section samples per axis");
    app.add_option("--spacing", o.spacing, "section grid spacing");
    app.add_option("--g0", o.g0, "gl2, borel, g2 or csp");
    app.add_option("--max-degree", o.max_degree, "prolongation cutoff");
    app.add_option("--coeff", o.coeff, "g or q");
    app.add_option("--q", o.q, "cochain degree");
    app.add_option("--l", o.l, "homogeneity");
    app.add_flag("--printed-u3", o.printed_u3, "use the u3 term without the factor a");

    std::string command;
    std::function<void(const Options&, Report&)> handler;
    auto leaf = [&](CLI::App* sub, const std::string& name, void (*f)(const Options&, Report&)) {
        sub->callback([&, name, f] {
            command = name;
            handler = f;
        });
    };
    leaf(app.add_subcommand("invariants", "ten invariants and branch"), "invariants", cmd_invariants);
    leaf(app.add_subcommand("classify", "branch of the classification tree"), "classify", cmd_classify);
    leaf(app.add_subcommand("growth", "growth vector of span(xi4, xi3)"), "growth", cmd_growth);
    leaf(app.add_subcommand("geometry", "geometric equivalences"), "geometry", cmd_geometry);
    leaf(app.add_subcommand("tautological", "rigid coframe identities"), "tautological", cmd_tautological);
    auto* kerr = app.add_subcommand("kerr", "Kerr correspondence");
    kerr->require_subcommand(1);
    leaf(kerr->add_subcommand("verify", "exact check of a Kerr pair"), "kerr verify", cmd_kerr_verify);
    leaf(kerr->add_subcommand("solve", "numeric root of F"), "kerr solve", cmd_kerr_solve);
    leaf(kerr->add_subcommand("section", "section from a hypersurface"), "kerr section", cmd_kerr_section);
    auto* fib = app.add_subcommand("fibration", "double fibration coordinates");
    fib->require_subcommand(1);
    leaf(fib->add_subcommand("check", "coordinate change"), "fibration check", cmd_fibration);
    auto* g2c = app.add_subcommand("g2", "split g2 model");
    g2c->require_subcommand(1);
    leaf(g2c->add_subcommand("verify", "structure equations"), "g2 verify", cmd_g2);
    auto* tan = app.add_subcommand("tanaka", "prolongation and cohomology");
    tan->require_subcommand(1);
    leaf(tan->add_subcommand("prolong", "Tanaka prolongation"), "tanaka prolong", cmd_tanaka_prolong);
    leaf(tan->add_subcommand("cohomology", "Lie algebra cohomology"), "tanaka cohomology", cmd_tanaka_cohomology);
    leaf(tan->add_subcommand("normalization", "normalization obstruction"), "tanaka normalization", cmd_tanaka_normalization);
    auto* mod = app.add_subcommand("models", "homogeneous models");
    mod->require_subcommand(1);
    leaf(mod->add_subcommand("check", "closure and identification"), "models check", cmd_models);
    auto* red = app.add_subcommand("reduction", "flat reduction");
    red->require_subcommand(1);
    leaf(red->add_subcommand("verify-flat", "nine equations at t = 0"), "reduction verify-flat", cmd_reduction);
    auto* cub = app.add_subcommand("cubic", "twisted cubic algebra");
    cub->require_subcommand(1);
    leaf(cub->add_subcommand("verify", "representation checks"), "cubic verify", cmd_cubic);

    if (!args.empty() && args[0].rfind("-", 0) != 0) {
        bool known = false;
        for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == args[0];
        if (!known) {
            err << "input error: unknown command '" << args[0] << "'\n";
            return 2;
        }
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
    o.seed_given = app.count("--seed") > 0;

    Report r;
    std::string status = "ok";
    int code = 0;
    auto t0 = std::chrono::steady_clock::now();
    try {
        handler(o, r);
        if (r.failed) {
            status = "verification-failed";
            code = 1;
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        status = "input-error";
        code = 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        status = "input-error";
        code = 2;
    } catch (const kerr::SolveError& e) {
        // violated preconditions are input errors; a failed iteration is a failed verification
        using K = kerr::SolveError::Kind;
        bool input = e.kind() == K::pole || e.kind() == K::transversality || e.kind() == K::singular_derivative;
        r.results["error"] = e.what();
        if (input) {
            err << "input error: " << e.what() << "\n";
            status = "input-error";
            code = 2;
        } else {
            r.text << "FAIL " << e.what() << "\n";
            status = "verification-failed";
            code = 1;
        }
    } catch (const sym::PoleError& e) {
        err << "input error: " << e.what() << "\n";
        status = "input-error";
        code = 2;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json inputs = json::object();
    for (const auto* opt : app.get_options())
        if (opt->count() > 0 && opt->get_name() != "--help") inputs[opt->get_name()] = opt->results().empty() ? "" : opt->results().back();
    json report{{"command", command}, {"inputs", inputs}, {"results", r.results}, {"status", status}, {"seconds", secs}};

    std::string body = r.text.str();
    if (!body.empty() && body.back() != '\n') body += '\n';
    std::string rendered = o.format == "json" ? report.dump(2) + "\n" : body + "status: " + status + "\n";
    out << rendered;
    bool csv = o.out.size() > 4 && o.out.substr(o.out.size() - 4) == ".csv";
    if (!o.out.empty() && !csv) {
        std::ofstream f(o.out);
        if (!f) {
            err << "cannot write " << o.out << "\n";
            return 2;
        }
        f << rendered;
    }
    return code;
}

}  // namespace ek::cli
