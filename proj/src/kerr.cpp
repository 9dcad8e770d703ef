#include "ek/kerr.hpp"

#include <cmath>
#include <sstream>

#include "ek/engel.hpp"

namespace ek::kerr {

using forms::Form;
using forms::VectorField;
using sym::Var;

namespace {

Expr xe(int i) { return Expr(sym::x(i)); }
Expr ye(int i) { return Expr(sym::y(i)); }
Expr T() { return Expr(sym::t_jet()); }

void check_vars(const Expr& e, const char* what, int max_y, bool allow_t) {
    for (Var v : e.variables()) {
        if (v.kind() == sym::VarKind::free_parameter) continue;
        if (allow_t && v == sym::t_jet()) continue;
        bool ok = false;
        for (int i = 0; i <= max_y; ++i) ok = ok || v == sym::y(i);
        if (!ok) throw std::invalid_argument(std::string(what) + " may not contain " + v.name());
    }
}

// G(x, t) = F(y(x, t), t), t kept as an independent symbol
Expr compose(const Expr& F) {
    auto y = y_of(T());
    sym::Substitution sub;
    for (int i = 0; i < 4; ++i) sub[sym::y(i)] = y[i];
    return sym::substitute(F, sub);
}

double eval(const Expr& e, const std::map<Var, double>& p) {
    double den = sym::evaluate_double(Expr(e.den()), p);
    if (!std::isfinite(den) || std::abs(den) < 1e-300) throw SolveError(SolveError::Kind::pole, "pole of F at the evaluation point");
    return sym::evaluate_double(Expr(e.num()), p) / den;
}

std::map<Var, double> point(const std::array<double, 5>& x, double t) {
    std::map<Var, double> p;
    for (int i = 0; i < 5; ++i) p[sym::x(i)] = x[i];
    p[sym::t_jet()] = t;
    return p;
}

}  // namespace

std::array<Expr, 4> y_of(const Expr& t) {
    return {xe(0) + xe(1) * xe(4) + 3 * t * xe(2) * xe(4) - t.pow(3) * xe(4).pow(2), xe(1) + t.pow(3) * xe(4),
            xe(2) - t * t * xe(4), xe(3) + t * xe(4)};
}

void check_kerr_function(const Expr& F) { check_vars(F, "Kerr function", 3, true); }

void check_hypersurface(const Expr& H) {
    check_vars(H, "hypersurface", 4, false);
    if (H.is_constant()) throw std::invalid_argument("hypersurface has zero gradient");
}

std::string KerrPairReport::str() const {
    std::ostringstream os;
    os << "F(y(t), t) = " << F_residual.str() << "\n";
    os << "J = " << J.str() << "\n";
    os << "d w2 ^ w0 ^ w1 ^ w2 = 0: " << (wedge_vanishes ? "yes" : "no") << "\n";
    os << (pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

KerrPairReport verify_kerr_pair(const Expr& F, const Expr& t) {
    check_kerr_function(F);
    engel::check_marking(t);
    KerrPairReport r;
    auto y = y_of(t);
    sym::Substitution sub{{sym::t_jet(), t}};
    for (int i = 0; i < 4; ++i) sub[sym::y(i)] = y[i];
    r.F_residual = sym::substitute(F, sub);
    r.F_vanishes = r.F_residual.is_zero();
    r.J = engel::J_coordinate(t);
    r.J_vanishes = r.J.is_zero();
    auto cf = engel::adapted_coframe(t);
    r.wedge_vanishes = forms::wedge({forms::exterior_derivative(cf.omega(2)), cf.omega(0), cf.omega(1), cf.omega(2)}).is_zero();
    return r;
}

bool kerr_wedge_identity(const Expr& t) {
    auto cf = engel::adapted_coframe(t);
    Form lhs = forms::wedge({forms::exterior_derivative(cf.omega(2)), cf.omega(0), cf.omega(1), cf.omega(2)});
    auto y = y_of(t);
    Form rhs = Form::exact(cf.chart, t);
    for (const auto& yi : y) rhs = forms::wedge(rhs, Form::exact(cf.chart, yi));
    return lhs == rhs.scaled(Expr(-2));
}

// ---- numeric -----------------------------------------------------------------------------

namespace {

struct Composite {
    Expr G, Gt, Gtt;
    std::array<Expr, 5> Gx;
};

Composite composite(const Expr& G) {
    Composite c{G, sym::partial(G, sym::t_jet()), {}, {}};
    c.Gtt = sym::partial(c.Gt, sym::t_jet());
    for (int i = 0; i < 5; ++i) c.Gx[i] = sym::partial(G, sym::x(i));
    return c;
}

NumericRoot newton(const Composite& c, const std::array<double, 5>& x, const SolveOptions& opt) {
    if (!(opt.tol > 0)) throw std::invalid_argument("tol must be positive");
    NumericRoot r;
    r.x = x;
    double t = opt.guess;
    for (int it = 0; it <= opt.max_iterations; ++it) {
        auto p = point(x, t);
        double g = eval(c.G, p);
        double gt = eval(c.Gt, p);
        if (std::abs(g) < opt.tol) {
            // multiplicity estimate gt^2 / (gt^2 - g gtt) is 1 at a simple root
            double gtt = eval(c.Gtt, p);
            if (std::abs(gt) < 1e-12 || std::abs(g * gtt) > 0.25 * gt * gt)
                throw SolveError(SolveError::Kind::singular_derivative, "root is not simple");
            r.t = t;
            r.F = g;
            r.dF_dt = gt;
            r.iterations = it;
            for (int i = 0; i < 5; ++i) r.t_x[i] = -eval(c.Gx[i], p) / gt;
            // (x1 + 3 t x2) t_x0 + t^3 t_x1 - t^2 t_x2 + t t_x3 - t_x4
            r.J = (x[1] + 3 * t * x[2]) * r.t_x[0] + t * t * t * r.t_x[1] - t * t * r.t_x[2] + t * r.t_x[3] - r.t_x[4];
            if (!(std::abs(r.J) < 1e3 * opt.tol)) throw SolveError(SolveError::Kind::J_residual, "implicit J residual above 1e3 tol");
            return r;
        }
        if (std::abs(gt) < 1e-14 * std::max(1.0, std::abs(g)))
            throw SolveError(SolveError::Kind::singular_derivative, "derivative in t vanishes during Newton iteration");
        t -= g / gt;
        if (!std::isfinite(t)) break;
    }
    throw SolveError(SolveError::Kind::no_convergence, "Newton iteration did not converge");
}

}  // namespace

NumericRoot solve_kerr_numeric(const Expr& F, const std::array<double, 5>& x, const SolveOptions& opt) {
    check_kerr_function(F);
    return newton(composite(compose(F)), x, opt);
}

// ---- double fibration ------------------------------------------------------------------

forms::ChartPtr chart_x6() {
    static auto c = forms::make_chart({sym::x(0), sym::x(1), sym::x(2), sym::x(3), sym::x(4), sym::x(5)});
    return c;
}

forms::ChartPtr chart_y6() {
    static auto c = forms::make_chart({sym::y(0), sym::y(1), sym::y(2), sym::y(3), sym::y(4), sym::y(5)});
    return c;
}

std::vector<Expr> x_to_y() {
    Expr x5 = xe(5);
    auto y = y_of(x5);
    return {y[0], y[1], y[2], y[3], x5, xe(4)};
}

std::vector<Expr> y_to_x() {
    Expr x4 = ye(5), x5 = ye(4);
    Expr x3 = ye(3) - x5 * x4;
    Expr x2 = ye(2) + x5 * x5 * x4;
    Expr x1 = ye(1) - x5.pow(3) * x4;
    Expr x0 = ye(0) - x1 * x4 - 3 * x5 * x2 * x4 + x5.pow(3) * x4 * x4;
    return {x0, x1, x2, x3, x4, x5};
}

namespace {

Form one(const forms::ChartPtr& c, std::initializer_list<std::pair<int, Expr>> terms) {
    Form f(c, 1);
    for (const auto& [i, e] : terms) f.add_term(1u << i, e);
    return f;
}

}  // namespace

std::vector<Form> omegas_x() {
    auto c = chart_x6();
    Expr x5 = xe(5);
    return {one(c, {{0, Expr(1)}, {4, xe(1)}, {3, -3 * xe(2)}}),
            one(c, {{1, Expr(1)}, {2, 3 * x5}, {3, 3 * x5 * x5}, {4, x5.pow(3)}}),
            one(c, {{2, Expr(1)}, {3, 2 * x5}, {4, x5 * x5}}),
            one(c, {{3, Expr(1)}, {4, x5}}),
            one(c, {{4, Expr(1)}}),
            one(c, {{5, Expr(-1)}})};
}

std::vector<Form> omegas_y() {
    auto c = chart_y6();
    Expr y4 = ye(4), y5 = ye(5);
    return {one(c, {{0, Expr(1)}, {1, -y5}, {2, -3 * y4 * y5}, {3, -3 * (ye(2) + y5 * y4 * y4)}}),
            one(c, {{1, Expr(1)}, {2, 3 * y4}, {3, 3 * y4 * y4}}),
            one(c, {{2, Expr(1)}, {3, 2 * y4}}),
            one(c, {{3, Expr(1)}, {4, -y5}}),
            one(c, {{5, Expr(1)}}),
            one(c, {{4, Expr(-1)}})};
}

bool CoordinateChangeReport::ok() const {
    for (const auto& [n, b] : forms)
        if (!b) return false;
    return xi4_x && xi7_x && xi4_y && xi7_y && xi4_push && xi7_push && round_trip;
}

std::string CoordinateChangeReport::str() const {
    std::ostringstream os;
    auto yn = [](bool b) { return b ? "ok" : "MISMATCH"; };
    for (const auto& [n, b] : forms) os << n << ": " << yn(b) << "\n";
    os << "xi4 (x chart): " << yn(xi4_x) << ", xi7 (x chart): " << yn(xi7_x) << "\n";
    os << "xi4 (y chart): " << yn(xi4_y) << ", xi7 (y chart): " << yn(xi7_y) << "\n";
    os << "pushforward xi4: " << yn(xi4_push) << ", xi7: " << yn(xi7_push) << "\n";
    os << "round trip: " << yn(round_trip) << "\n";
    return os.str();
}

CoordinateChangeReport coordinate_change_check() {
    CoordinateChangeReport r;
    auto cx = chart_x6(), cy = chart_y6();
    auto wx = omegas_x(), wy = omegas_y();
    auto phi = x_to_y();
    static const char* names[] = {"w0", "w1", "w2", "w3", "w4", "w7"};
    for (std::size_t i = 0; i < 6; ++i) r.forms.emplace_back(names[i], forms::pullback(wy[i], cx, phi) == wx[i]);

    Expr x5 = xe(5), y4 = ye(4), y5 = ye(5);
    VectorField xi4x(cx, {-(xe(1) + 3 * x5 * xe(2)), -x5.pow(3), x5 * x5, -x5, Expr(1), Expr()});
    VectorField xi7x = VectorField::coordinate(cx, 5).scaled(Expr(-1));
    VectorField xi4y = VectorField::coordinate(cy, 5);
    VectorField xi7y(cy, {-3 * y5 * ye(2), -3 * y4 * y4 * y5, 2 * y4 * y5, -y5, Expr(-1), Expr()});

    auto fx = forms::make_coframe(cx, wx), fy = forms::make_coframe(cy, wy);
    r.xi4_x = fx->frame(4) == xi4x;
    r.xi7_x = fx->frame(5) == xi7x;
    r.xi4_y = fy->frame(4) == xi4y;
    r.xi7_y = fy->frame(5) == xi7y;
    r.xi4_push = forms::pushes_to(xi4x, phi, xi4y);
    r.xi7_push = forms::pushes_to(xi7x, phi, xi7y);

    auto psi = y_to_x();
    bool rt = true;
    sym::Substitution to_x, to_y;
    for (int i = 0; i < 6; ++i) {
        to_x[sym::y(i)] = phi[i];
        to_y[sym::x(i)] = psi[i];
    }
    for (int i = 0; i < 6; ++i) {
        rt = rt && sym::substitute(psi[i], to_x) == xe(i);
        rt = rt && sym::substitute(phi[i], to_y) == ye(i);
    }
    r.round_trip = rt;
    return r;
}

// ---- sections ----------------------------------------------------------------------------

std::string SectionReport::str() const {
    std::ostringstream os;
    os.precision(12);
    for (const auto& s : samples) {
        os << "x = (";
        for (int i = 0; i < 5; ++i) os << (i ? ", " : "") << s.root.x[i];
        os << ")  t = " << s.root.t << "  |F| = " << std::abs(s.root.F) << "  |J| = " << std::abs(s.root.J) << "\n";
    }
    os << "max |F| = " << max_F << ", max |J| = " << max_J << "\n";
    return os.str();
}

SectionReport section_from_hypersurface(const Expr& H, const std::vector<std::array<double, 5>>& points, const SolveOptions& opt) {
    check_hypersurface(H);
    if (sym::partial(H, sym::y(4)).is_zero())
        throw SolveError(SolveError::Kind::transversality, "hypersurface does not involve y4; fibres are not met transversally");
    // y4 = x5 is the section value
    Expr F = sym::substitute(H, {{sym::y(4), T()}});
    Composite c = composite(compose(F));
    if (c.Gt.is_zero()) throw SolveError(SolveError::Kind::transversality, "derivative along the fibre vanishes identically");
    SectionReport rep;
    for (const auto& x : points) {
        SectionSample s;
        try {
            s.root = newton(c, x, opt);
        } catch (const SolveError& e) {
            if (e.kind() == SolveError::Kind::singular_derivative)
                throw SolveError(SolveError::Kind::transversality, "not transversal at a sample point");
            throw;
        }
        s.dG_dt = s.root.dF_dt;
        rep.max_F = std::max(rep.max_F, std::abs(s.root.F));
        rep.max_J = std::max(rep.max_J, std::abs(s.root.J));
        rep.samples.push_back(s);
    }
    return rep;
}

std::vector<std::array<double, 5>> sample_grid(const std::array<double, 5>& center, double h, int n) {
    if (n < 1) throw std::invalid_argument("grid size must be positive");
    std::vector<std::array<double, 5>> out;
    std::array<int, 5> idx{};
    const double off = (n - 1) / 2.0;
    while (true) {
        std::array<double, 5> p;
        for (int i = 0; i < 5; ++i) p[i] = center[i] + h * (idx[i] - off);
        out.push_back(p);
        int k = 0;
        while (k < 5 && ++idx[k] == n) idx[k++] = 0;
        if (k == 5) break;
    }
    return out;
}

}  // namespace ek::kerr
