#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ek/expr.hpp"
#include "ek/forms.hpp"

namespace ek::engel {

using forms::ChartPtr;
using forms::CoframePtr;
using forms::Form;
using forms::VectorField;
using sym::Expr;

// throws std::invalid_argument unless t is free of jet symbols and of x5
void check_marking(const Expr& t);

struct AdaptedCoframe {
    Expr t;
    ChartPtr chart;      // x0..x4
    CoframePtr coframe;  // omega^0..omega^4
    const Form& omega(std::size_t i) const { return coframe->form(i); }
    const VectorField& xi(std::size_t j) const { return coframe->frame(j); }
};
AdaptedCoframe adapted_coframe(const Expr& t);

// seeded random polynomial in x0..x4 of degree <= max_degree with small integer coefficients
Expr random_marking(std::uint64_t seed, int max_degree = 2);

// dual frame X_i of the flat coframe alpha (t = 0)
const std::vector<VectorField>& flat_frame();

struct InvariantJet {
    Expr a, b, c, J, L, M, P, Q, R, S;
    // frame derivatives: da[j] = a_{omega^j}, etc.
    std::array<Expr, 5> da, db, dc, dJ;
    // closed-form path only: t_w[i] = t_{omega^i}, t_ww[i][j] = omega^j coefficient of d(t_w[i])
    std::array<Expr, 5> t_w;
    std::array<std::array<Expr, 5>, 5> t_ww;

    static const std::array<const char*, 10>& names();
    const Expr& field(std::size_t i) const;  // order of names()
    Expr m_minus_p() const { return M - P; }
};

InvariantJet invariants_closed_form(const AdaptedCoframe& cf);
InvariantJet invariants_closed_form(const Expr& t);
Expr J_coordinate(const Expr& t);

struct StructureEquationReport {
    InvariantJet jet;
    Expr K;  // b^2 - 4ac + M - P
    // remaining coefficients of da, db, dc compared with their announced values
    std::vector<std::pair<std::string, bool>> identities;
    bool identities_hold() const;
};
// throws std::logic_error if d omega does not have the announced shape
StructureEquationReport invariants_from_structure_equations(const AdaptedCoframe& cf);
StructureEquationReport invariants_from_structure_equations(const Expr& t);

// ---- classification ----------------------------------------------------------------

enum class Vanishing { zero, nonzero, non_constant };
// zero: identically 0; nonzero: free of coordinates (parameters are generic) or a sign-definite
// sum of even monomials; otherwise non_constant
Vanishing vanishing(const Expr& e);

struct BranchLabel {
    std::string branch;                  // e.g. "flat", "J!=0", "J=L=0,M!=0,P=0,Q=0"
    bool constant = true;                // false: branch-non-constant
    std::string offending;               // invariant that is neither zero nor nonvanishing
    std::optional<int> max_symmetry;     // dimension of the largest homogeneous model in the branch
    std::string annotation;
    std::vector<std::pair<std::string, Vanishing>> path;
    std::string str() const;
};
BranchLabel classify(const InvariantJet& inv);
BranchLabel classify(const Expr& t);
// pointwise variant: invariants evaluated at a rational point
BranchLabel classify_at(const InvariantJet& inv, const std::map<sym::Var, mpq_class>& point);

// ---- geometry ------------------------------------------------------------------------

struct GeometryReport {
    Expr J;
    bool J_zero = false;
    bool wedge_identity = false;  // d w2 ^ w0 ^ w1 ^ w2 = 2 J vol
    bool D_integrable = false;
    std::vector<int> D_growth;    // ranks of D, D', D''
    int H_prime_rank = 0;
    int type_xi4 = 0;             // type of xi4 w.r.t. omega^0
    // meaningful under J = 0 (resp. J = L = 0); R fields only computed when J = 0
    bool xi3_xi3_xi2_in_H_prime = false;
    bool H_prime_integrable = false;
    bool R_integrable = false;
    Expr R_coefficient;           // coefficient of vol in d(w3 - c w0) ^ beta1 ^ beta2 ^ beta3
    bool weyl_identity = false;   // nabla_{xi4} xi4 = J xi3
    std::vector<std::string> failures;  // equivalences that did not hold
    bool ok() const { return failures.empty(); }
    std::string str() const;
};
GeometryReport geometric_checks(const Expr& t);

// ---- rigid coframe on the 9-chart (x0..x4, s4, s5, s7, delta) ---------------------------

ChartPtr chart9();
Form lift_to_chart9(const Form& f);  // coordinate form on x0..x4 viewed on chart9

struct TautologicalReport {
    std::array<Form, 5> theta;
    bool check_i = false, check_ii = false, check_iii = false, check_iv = false;
    bool theta6_consistent = false;  // W is a combination of theta2 and theta6 modulo theta0,1,3,4
    Expr T102, T102_printed, T106, T124, T234;
    bool T106_ok = false;
    bool ok() const { return check_i && check_ii && check_iii && check_iv && theta6_consistent && T106_ok; }
    std::string str() const;
};
TautologicalReport tautological_forms(const Expr& t);
Expr printed_T102(const InvariantJet& inv);

struct ResidualReport {
    std::string name;
    bool zero = false;
    std::string offending;  // first nonzero monomial, empty when zero
};
struct FlatReductionReport {
    std::vector<ResidualReport> equations;  // e0 e1 e2 e3 e4 e5 e6 e8 e12
    std::map<std::string, Expr> values;     // s0..s3, u0..u3 at t = 0
    bool ok() const;
    std::string str() const;
};
// printed_u3: use the u3 numerator term 4 s4^2 s5^6 as printed instead of 4 a s4^2 s5^6
FlatReductionReport verify_flat_reduction(bool printed_u3 = false);

}  // namespace ek::engel
