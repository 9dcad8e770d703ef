#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "ek/expr.hpp"
#include "ek/forms.hpp"

namespace ek::kerr {

using sym::Expr;

// y0..y3 as functions of x0..x4 and the value t (any Expr, typically the t symbol or a marking)
std::array<Expr, 4> y_of(const Expr& t);

// F may use y0..y3, t and free parameters; throws std::invalid_argument otherwise
void check_kerr_function(const Expr& F);
// H may use y0..y4 and free parameters
void check_hypersurface(const Expr& H);

struct KerrPairReport {
    bool F_vanishes = false;  // F(y(t), t) == 0 exactly
    bool J_vanishes = false;
    bool wedge_vanishes = false;  // d w2 ^ w0 ^ w1 ^ w2 == 0
    Expr F_residual, J;
    bool pass() const { return F_vanishes && J_vanishes; }
    std::string str() const;
};
KerrPairReport verify_kerr_pair(const Expr& F, const Expr& t);

// d w2 ^ w0 ^ w1 ^ w2 == -2 dt ^ dy0 ^ dy1 ^ dy2 ^ dy3 with y = y_of(t)
bool kerr_wedge_identity(const Expr& t);

// ---- numeric layer ----------------------------------------------------------------------

class SolveError : public std::runtime_error {
public:
    enum class Kind { no_convergence, singular_derivative, pole, transversality, J_residual };
    SolveError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct NumericRoot {
    std::array<double, 5> x{};
    double t = 0;
    double F = 0;             // residual at t
    double dF_dt = 0;
    double J = 0;             // implicit-function value of J at (x, t)
    std::array<double, 5> t_x{};
    int iterations = 0;
};

struct SolveOptions {
    double guess = 0;
    double tol = 1e-10;  // |F|; |J| must stay below 1e3 tol
    int max_iterations = 60;
};

// Newton iteration on tau -> F(y(x, tau), tau) with exact derivatives
NumericRoot solve_kerr_numeric(const Expr& F, const std::array<double, 5>& x, const SolveOptions& opt = {});

// ---- double fibration coordinates ----------------------------------------------------

forms::ChartPtr chart_x6();  // x0..x5
forms::ChartPtr chart_y6();  // y0..y5
std::vector<Expr> x_to_y();  // y^i in terms of x
std::vector<Expr> y_to_x();  // inverse

std::vector<forms::Form> omegas_x();  // w0 w1 w2 w3 w4 w7 in the x chart
std::vector<forms::Form> omegas_y();  // the same six forms in the y chart

struct CoordinateChangeReport {
    std::vector<std::pair<std::string, bool>> forms;  // pullback of the y-form equals the x-form
    bool xi4_x = false, xi7_x = false;                // dual frame of the x-forms as displayed
    bool xi4_y = false, xi7_y = false;                // dual frame of the y-forms as displayed
    bool xi4_push = false, xi7_push = false;          // x-chart fields push to the y-chart fields
    bool round_trip = false;                          // both compositions are the identity
    bool ok() const;
    std::string str() const;
};
CoordinateChangeReport coordinate_change_check();

// ---- sections from hypersurfaces -------------------------------------------------------

struct SectionSample {
    NumericRoot root;
    double dG_dt = 0;  // transversality derivative at the root
};
struct SectionReport {
    std::vector<SectionSample> samples;
    double max_J = 0, max_F = 0;
    std::string str() const;
};
// throws SolveError (transversality) when H does not involve y4 or the root is not transversal
SectionReport section_from_hypersurface(const Expr& H, const std::vector<std::array<double, 5>>& points,
                                        const SolveOptions& opt = {});
// regular grid of n^5 points around center with spacing h
std::vector<std::array<double, 5>> sample_grid(const std::array<double, 5>& center, double h, int n);

}  // namespace ek::kerr
