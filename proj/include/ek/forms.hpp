#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ek/expr.hpp"

namespace ek::forms {

using sym::Expr;
using sym::Var;

struct Chart {
    std::vector<Var> coords;
    std::size_t dim() const { return coords.size(); }
    int index_of(Var v) const;  // -1 if absent
};
using ChartPtr = std::shared_ptr<const Chart>;
ChartPtr make_chart(std::vector<Var> coords);
ChartPtr chart_x5();  // x0..x4
bool same_chart(const ChartPtr& a, const ChartPtr& b);

// derivative of f along coordinate v: total derivative (jets) for coordinates, plain partial otherwise
Expr coord_derivative(const Expr& f, Var v);

class VectorField {
public:
    VectorField() = default;
    VectorField(ChartPtr c, std::vector<Expr> comps);
    static VectorField zero(ChartPtr c);
    static VectorField coordinate(ChartPtr c, std::size_t i);

    const ChartPtr& chart() const { return chart_; }
    const std::vector<Expr>& components() const { return comp_; }
    const Expr& operator[](std::size_t i) const { return comp_[i]; }
    bool is_zero() const;

    Expr apply(const Expr& f) const;  // X(f)
    VectorField operator+(const VectorField& o) const;
    VectorField operator-(const VectorField& o) const;
    VectorField operator-() const;
    VectorField scaled(const Expr& f) const;
    friend bool operator==(const VectorField& a, const VectorField& b);
    std::string str() const;

private:
    ChartPtr chart_;
    std::vector<Expr> comp_;
};

VectorField lie_bracket(const VectorField& X, const VectorField& Y);

class CoframeChart;
using CoframePtr = std::shared_ptr<const CoframeChart>;

// Sparse k-form. Keys are bitmasks of strictly increasing index sets in the basis.
// Basis is the coordinate differentials of the chart, or a coframe.
class Form {
public:
    Form() = default;
    Form(ChartPtr c, int degree, CoframePtr basis = nullptr);
    static Form scalar(ChartPtr c, const Expr& f);
    static Form basis_form(ChartPtr c, std::uint32_t mask, const Expr& coeff = Expr(1), CoframePtr basis = nullptr);
    static Form dx(ChartPtr c, std::size_t i) { return basis_form(c, 1u << i); }
    static Form exact(ChartPtr c, const Expr& f);  // df

    const ChartPtr& chart() const { return chart_; }
    int degree() const { return degree_; }
    const CoframePtr& basis() const { return basis_; }
    bool in_coordinates() const { return basis_ == nullptr; }
    const std::map<std::uint32_t, Expr>& terms() const { return terms_; }
    Expr coeff(std::uint32_t mask) const;
    Expr coeff(std::initializer_list<int> idx) const;
    bool is_zero() const { return terms_.empty(); }

    void add_term(std::uint32_t mask, const Expr& c);

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator-() const;
    Form scaled(const Expr& f) const;
    Form map_coeffs(const std::function<Expr(const Expr&)>& f) const;
    friend bool operator==(const Form& a, const Form& b);

    Form to_coordinates() const;
    Form to_basis(const CoframePtr& b) const;  // nullptr = coordinates

    std::string str() const;

private:
    ChartPtr chart_;
    int degree_ = 0;
    CoframePtr basis_;
    std::map<std::uint32_t, Expr> terms_;
};

Form wedge(const Form& a, const Form& b);
Form wedge(std::initializer_list<Form> fs);
Form exterior_derivative(const Form& a);  // result in coordinate basis
Form interior(const VectorField& X, const Form& a);
Expr evaluate_on(const Form& a, const std::vector<VectorField>& Xs);  // a(X1,...,Xk)
Form lie_derivative(const VectorField& X, const Form& a);
// pullback of a form on chart(a) along a map from `source`; map[i] = target coordinate i in source coordinates
Form pullback(const Form& a, const ChartPtr& source, const std::vector<Expr>& map);
// push X forward along the same kind of map and compare with Y: X(map[i]) == Y[i](map) for all i
bool pushes_to(const VectorField& X, const std::vector<Expr>& map, const VectorField& Y);

// sign and result mask of wedging basis monomials; sign 0 if they overlap
int wedge_sign(std::uint32_t a, std::uint32_t b);

using ExprMatrix = std::vector<std::vector<Expr>>;
std::optional<ExprMatrix> inverse(const ExprMatrix& m);
Expr determinant(const ExprMatrix& m);

class CoframeChart {
public:
    // construct through make_coframe; throws std::domain_error if the determinant vanishes identically
    CoframeChart(ChartPtr c, std::vector<Form> forms, std::vector<std::string> labels = {});

    const ChartPtr& chart() const { return chart_; }
    std::size_t dim() const { return forms_.size(); }
    const Form& form(std::size_t a) const { return forms_[a]; }
    const std::vector<Form>& forms() const { return forms_; }
    const ExprMatrix& matrix() const { return m_; }
    const ExprMatrix& inverse_matrix() const { return minv_; }
    const Expr& det() const { return det_; }
    const VectorField& frame(std::size_t j) const { return frame_[j]; }
    const std::vector<VectorField>& frame() const { return frame_; }
    const std::string& label(std::size_t a) const { return labels_[a]; }
    // dx^i as a 1-form in the coframe basis, cached
    const Form& dx_in_coframe(std::size_t i) const { return dx_[i]; }

    // frame derivative f_{w_j} = F_j(f)
    Expr frame_derivative(const Expr& f, std::size_t j) const { return frame_[j].apply(f); }

private:
    friend CoframePtr make_coframe(ChartPtr, std::vector<Form>, std::vector<std::string>);
    ChartPtr chart_;
    std::vector<Form> forms_;
    std::vector<std::string> labels_;
    ExprMatrix m_, minv_;
    Expr det_;
    std::vector<VectorField> frame_;
    std::vector<Form> dx_;
};
CoframePtr make_coframe(ChartPtr c, std::vector<Form> forms, std::vector<std::string> labels = {});

// coefficients of alpha in the coframe basis (degrees 1, 2 are the documented cases; any degree works)
std::map<std::uint32_t, Expr> expand_in_coframe(const Form& a, const CoframePtr& cf);

// Generic rank over the rational-function field. Exact: a random evaluation gives a lower bound
// certified by a nonzero minor; symbolic elimination is used when that bound is not maximal.
int generic_rank(const ExprMatrix& rows, std::uint64_t seed = 0x5eed);
int generic_rank(const std::vector<VectorField>& vs, std::uint64_t seed = 0x5eed);
int generic_rank(const std::vector<Form>& one_forms, std::uint64_t seed = 0x5eed);
std::optional<int> rank_at(const ExprMatrix& rows, const std::map<Var, mpq_class>& point);

// ranks of D, D + [D, D], D + [D, D'], ... (weak derived flag), depth entries
std::vector<int> distribution_growth(const std::vector<VectorField>& D, int depth, std::uint64_t seed = 0x5eed);

// generic rank of theta, L_X theta, L_X^2 theta, L_X^3 theta; throws if theta(X) is not identically 0
int type_of(const VectorField& X, const Form& theta);

}  // namespace ek::forms
