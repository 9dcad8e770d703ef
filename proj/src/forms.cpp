#include "ek/forms.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace ek::forms {

using sym::Poly;

int Chart::index_of(Var v) const {
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] == v) return static_cast<int>(i);
    return -1;
}

ChartPtr make_chart(std::vector<Var> coords) {
    if (coords.empty() || coords.size() > 32) throw std::invalid_argument("chart dimension must be 1..32");
    return std::make_shared<const Chart>(Chart{std::move(coords)});
}

ChartPtr chart_x5() {
    static ChartPtr c = make_chart({sym::x(0), sym::x(1), sym::x(2), sym::x(3), sym::x(4)});
    return c;
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) { return a == b || (a && b && a->coords == b->coords); }

Expr coord_derivative(const Expr& f, Var v) {
    if (v.kind() == sym::VarKind::coordinate) return sym::diff(f, v);
    return sym::partial(f, v);
}

// ---- vector fields ---------------------------------------------------------------

VectorField::VectorField(ChartPtr c, std::vector<Expr> comps) : chart_(std::move(c)), comp_(std::move(comps)) {
    if (comp_.size() != chart_->dim()) throw std::invalid_argument("vector field: component count differs from chart dimension");
}

VectorField VectorField::zero(ChartPtr c) {
    std::size_t n = c->dim();
    return VectorField(std::move(c), std::vector<Expr>(n));
}

VectorField VectorField::coordinate(ChartPtr c, std::size_t i) {
    VectorField v = zero(std::move(c));
    v.comp_.at(i) = Expr(1);
    return v;
}

bool VectorField::is_zero() const {
    return std::all_of(comp_.begin(), comp_.end(), [](const Expr& e) { return e.is_zero(); });
}

Expr VectorField::apply(const Expr& f) const {
    Expr r;
    for (std::size_t i = 0; i < comp_.size(); ++i) {
        if (comp_[i].is_zero()) continue;
        Expr d = coord_derivative(f, chart_->coords[i]);
        if (!d.is_zero()) r += comp_[i] * d;
    }
    return r;
}

static void check_same(const ChartPtr& a, const ChartPtr& b) {
    if (!same_chart(a, b)) throw std::invalid_argument("chart mismatch");
}

VectorField VectorField::operator+(const VectorField& o) const {
    check_same(chart_, o.chart_);
    VectorField r = *this;
    for (std::size_t i = 0; i < comp_.size(); ++i) r.comp_[i] += o.comp_[i];
    return r;
}

VectorField VectorField::operator-(const VectorField& o) const { return *this + (-o); }

VectorField VectorField::operator-() const {
    VectorField r = *this;
    for (auto& c : r.comp_) c = -c;
    return r;
}

VectorField VectorField::scaled(const Expr& f) const {
    VectorField r = *this;
    for (auto& c : r.comp_) c *= f;
    return r;
}

bool operator==(const VectorField& a, const VectorField& b) { return same_chart(a.chart_, b.chart_) && a.comp_ == b.comp_; }

std::string VectorField::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < comp_.size(); ++i) {
        if (comp_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << comp_[i].str() << ")*d/d" << chart_->coords[i].name();
    }
    if (first) os << "0";
    return os.str();
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    check_same(X.chart(), Y.chart());
    std::vector<Expr> c(X.components().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = X.apply(Y[i]) - Y.apply(X[i]);
    return VectorField(X.chart(), std::move(c));
}

// ---- forms -----------------------------------------------------------------------

int wedge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    // count pairs (i in a, j in b) with i > j
    int inv = 0;
    while (b) {
        int j = std::countr_zero(b);
        b &= b - 1;
        inv += std::popcount(a >> (j + 1));
    }
    return (inv & 1) ? -1 : 1;
}

Form::Form(ChartPtr c, int degree, CoframePtr basis) : chart_(std::move(c)), degree_(degree), basis_(std::move(basis)) {
    if (degree_ < 0 || degree_ > static_cast<int>(chart_->dim())) throw std::invalid_argument("form degree out of range");
    if (basis_ && !same_chart(basis_->chart(), chart_)) throw std::invalid_argument("coframe chart mismatch");
}

Form Form::scalar(ChartPtr c, const Expr& f) {
    Form r(std::move(c), 0);
    r.add_term(0, f);
    return r;
}

Form Form::basis_form(ChartPtr c, std::uint32_t mask, const Expr& coeff, CoframePtr basis) {
    Form r(std::move(c), std::popcount(mask), std::move(basis));
    r.add_term(mask, coeff);
    return r;
}

Form Form::exact(ChartPtr c, const Expr& f) { return exterior_derivative(scalar(std::move(c), f)); }

Expr Form::coeff(std::uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Expr() : it->second;
}

Expr Form::coeff(std::initializer_list<int> idx) const {
    // indices in any order; sign of the sorting permutation applied
    std::uint32_t mask = 0;
    int sign = 1;
    for (int i : idx) {
        std::uint32_t bit = 1u << i;
        int s = wedge_sign(mask, bit);
        if (s == 0) return Expr();
        sign *= s;
        mask |= bit;
    }
    Expr c = coeff(mask);
    return sign > 0 ? c : -c;
}

void Form::add_term(std::uint32_t mask, const Expr& c) {
    if (std::popcount(mask) != degree_) throw std::invalid_argument("term degree differs from form degree");
    if (mask >> chart_->dim()) throw std::invalid_argument("basis index out of range");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(mask, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

static void check_compat(const Form& a, const Form& b) {
    check_same(a.chart(), b.chart());
    if (a.degree() != b.degree()) throw std::invalid_argument("form degree mismatch");
}

Form Form::operator+(const Form& o) const {
    check_compat(*this, o);
    if (basis_ != o.basis_) return to_coordinates() + o.to_coordinates();
    Form r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::operator-() const {
    Form r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Form Form::scaled(const Expr& f) const {
    Form r(chart_, degree_, basis_);
    if (f.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * f);
    return r;
}

Form Form::map_coeffs(const std::function<Expr(const Expr&)>& f) const {
    Form r(chart_, degree_, basis_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
}

bool operator==(const Form& a, const Form& b) {
    if (!same_chart(a.chart_, b.chart_) || a.degree_ != b.degree_) return false;
    if (a.basis_ != b.basis_) return a.to_coordinates() == b.to_coordinates();
    return a.terms_ == b.terms_;
}

Form Form::to_coordinates() const {
    if (!basis_) return *this;
    Form r(chart_, degree_);
    for (const auto& [m, c] : terms_) {
        Form prod = scalar(chart_, c);
        for (std::uint32_t b = m; b; b &= b - 1) prod = wedge(prod, basis_->form(std::countr_zero(b)));
        r = r + prod;
    }
    return r;
}

Form Form::to_basis(const CoframePtr& b) const {
    if (b == basis_) return *this;
    if (!b) return to_coordinates();
    if (basis_) return to_coordinates().to_basis(b);
    Form r(chart_, degree_, b);
    for (const auto& [m, c] : terms_) {
        Form prod = Form(chart_, 0, b);
        prod.add_term(0, c);
        for (std::uint32_t bits = m; bits; bits &= bits - 1) prod = wedge(prod, b->dx_in_coframe(std::countr_zero(bits)));
        for (const auto& [mm, cc] : prod.terms_) r.add_term(mm, cc);
    }
    return r;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        bool w = false;
        for (std::uint32_t b = m; b; b &= b - 1) {
            int i = std::countr_zero(b);
            os << (w ? "^" : "*");
            w = true;
            if (basis_) os << basis_->label(i);
            else os << "d" << chart_->coords[i].name();
        }
    }
    return os.str();
}

Form wedge(const Form& a, const Form& b) {
    check_same(a.chart(), b.chart());
    if (a.basis() != b.basis()) return wedge(a.to_coordinates(), b.to_coordinates());
    if (a.degree() + b.degree() > static_cast<int>(a.chart()->dim())) return Form(a.chart(), static_cast<int>(a.chart()->dim()), a.basis());  // zero
    Form r(a.chart(), a.degree() + b.degree(), a.basis());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            Expr p = ca * cb;
            r.add_term(ma | mb, s > 0 ? p : -p);
        }
    }
    return r;
}

Form wedge(std::initializer_list<Form> fs) {
    auto it = fs.begin();
    if (it == fs.end()) throw std::invalid_argument("empty wedge");
    Form r = *it++;
    for (; it != fs.end(); ++it) r = wedge(r, *it);
    return r;
}

Form exterior_derivative(const Form& a) {
    Form c = a.to_coordinates();
    int n = static_cast<int>(c.chart()->dim());
    if (c.degree() == n) return Form(c.chart(), n);  // zero top form stands in for the zero (n+1)-form
    Form r(c.chart(), c.degree() + 1);
    for (const auto& [m, coef] : c.terms()) {
        for (int j = 0; j < n; ++j) {
            std::uint32_t bit = 1u << j;
            if (m & bit) continue;
            Expr dj = coord_derivative(coef, c.chart()->coords[j]);
            if (dj.is_zero()) continue;
            r.add_term(m | bit, wedge_sign(bit, m) > 0 ? dj : -dj);
        }
    }
    return r;
}

Form interior(const VectorField& X, const Form& a) {
    check_same(X.chart(), a.chart());
    if (a.degree() == 0) throw std::invalid_argument("interior product of a 0-form");
    std::size_t n = a.chart()->dim();
    std::vector<Expr> v(n);
    if (a.basis()) {
        for (std::size_t b = 0; b < n; ++b) {
            Expr s;
            const auto& row = a.basis()->matrix()[b];
            for (std::size_t i = 0; i < n; ++i)
                if (!row[i].is_zero() && !X[i].is_zero()) s += row[i] * X[i];
            v[b] = s;
        }
    } else {
        v = X.components();
    }
    Form r(a.chart(), a.degree() - 1, a.basis());
    for (const auto& [m, c] : a.terms()) {
        int pos = 0;
        for (std::uint32_t b = m; b; b &= b - 1, ++pos) {
            int i = std::countr_zero(b);
            if (v[i].is_zero()) continue;
            Expr t = c * v[i];
            r.add_term(m & ~(1u << i), (pos & 1) ? -t : t);
        }
    }
    return r;
}

Expr evaluate_on(const Form& a, const std::vector<VectorField>& Xs) {
    if (static_cast<int>(Xs.size()) != a.degree()) throw std::invalid_argument("evaluate_on: argument count differs from degree");
    Form r = a;
    for (const auto& X : Xs) r = interior(X, r);
    return r.coeff(0u);
}

Form lie_derivative(const VectorField& X, const Form& a) {
    if (a.degree() == 0) return Form::scalar(a.chart(), X.apply(a.coeff(0u)));
    Form r = interior(X, exterior_derivative(a));
    Form i = interior(X, a);
    if (i.degree() == 0) return r + Form::exact(a.chart(), i.coeff(0u));
    return r + exterior_derivative(i);
}

// ---- matrices over Expr ----------------------------------------------------------

namespace {

std::size_t complexity(const Expr& e) { return e.num().size() + e.den().size(); }

}  // namespace

std::optional<ExprMatrix> inverse(const ExprMatrix& m) {
    std::size_t n = m.size();
    ExprMatrix a = m, inv(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Expr(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r)
            if (!a[r][col].is_zero() && (piv == n || complexity(a[r][col]) < complexity(a[piv][col]))) piv = r;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Expr p = a[col][col].inverse();
        if (!p.is_one()) {
            for (auto& e : a[col]) e *= p;
            for (auto& e : inv[col]) e *= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Expr f = a[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                if (!a[col][k].is_zero()) a[r][k] -= f * a[col][k];
                if (!inv[col][k].is_zero()) inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

Expr determinant(const ExprMatrix& m) {
    std::size_t n = m.size();
    ExprMatrix a = m;
    Expr det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r)
            if (!a[r][col].is_zero() && (piv == n || complexity(a[r][col]) < complexity(a[piv][col]))) piv = r;
        if (piv == n) return Expr();
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Expr p = a[col][col].inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            Expr f = a[r][col] * p;
            for (std::size_t k = col; k < n; ++k)
                if (!a[col][k].is_zero()) a[r][k] -= f * a[col][k];
        }
    }
    return det;
}

// ---- coframes --------------------------------------------------------------------

CoframeChart::CoframeChart(ChartPtr c, std::vector<Form> forms, std::vector<std::string> labels)
    : chart_(std::move(c)), forms_(std::move(forms)), labels_(std::move(labels)) {
    std::size_t n = chart_->dim();
    if (forms_.size() != n) throw std::invalid_argument("coframe needs one form per chart dimension");
    if (labels_.empty())
        for (std::size_t a = 0; a < n; ++a) labels_.push_back("w" + std::to_string(a));
    m_.assign(n, std::vector<Expr>(n));
    for (std::size_t a = 0; a < n; ++a) {
        forms_[a] = forms_[a].to_coordinates();
        if (forms_[a].degree() != 1 || !same_chart(forms_[a].chart(), chart_))
            throw std::invalid_argument("coframe member is not a 1-form on the chart");
        for (std::size_t i = 0; i < n; ++i) m_[a][i] = forms_[a].coeff(1u << i);
    }
    det_ = determinant(m_);
    if (det_.is_zero()) throw std::domain_error("coframe is not invertible (determinant vanishes identically)");
    auto inv = inverse(m_);
    if (!inv) throw std::domain_error("coframe is not invertible");
    minv_ = std::move(*inv);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Expr> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = minv_[i][j];
        frame_.emplace_back(chart_, std::move(col));
    }
}

CoframePtr make_coframe(ChartPtr c, std::vector<Form> forms, std::vector<std::string> labels) {
    auto cf = std::make_shared<CoframeChart>(std::move(c), std::move(forms), std::move(labels));
    // dx^i = sum_a Minv[i][a] w^a
    std::size_t n = cf->dim();
    for (std::size_t i = 0; i < n; ++i) {
        Form f(cf->chart(), 1, cf);
        for (std::size_t a = 0; a < n; ++a) f.add_term(1u << a, cf->inverse_matrix()[i][a]);
        cf->dx_.push_back(std::move(f));
    }
    return cf;
}

std::map<std::uint32_t, Expr> expand_in_coframe(const Form& a, const CoframePtr& cf) { return a.to_basis(cf).terms(); }

// ---- rank ------------------------------------------------------------------------

std::optional<int> rank_at(const ExprMatrix& rows, const std::map<Var, mpq_class>& point) {
    std::vector<std::vector<mpq_class>> a;
    try {
        for (const auto& r : rows) {
            std::vector<mpq_class> v;
            for (const auto& e : r) v.push_back(e.is_zero() ? mpq_class(0) : sym::evaluate_exact(e, point));
            a.push_back(std::move(v));
        }
    } catch (const sym::PoleError&) {
        return std::nullopt;
    }
    int rank = 0;
    std::size_t ncols = a.empty() ? 0 : a[0].size();
    for (std::size_t col = 0; col < ncols && rank < static_cast<int>(a.size()); ++col) {
        std::size_t piv = a.size();
        for (std::size_t r = rank; r < a.size(); ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][col] == 0) continue;
            mpq_class f = a[r][col] / a[rank][col];
            for (std::size_t k = col; k < ncols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

namespace {

// fraction-free elimination over Z[vars]
int symbolic_rank(const ExprMatrix& rows) {
    std::vector<std::vector<Poly>> a;
    for (const auto& r : rows) {
        Poly l(1);
        for (const auto& e : r)
            if (!e.den().is_one()) {
                Poly g = sym::gcd(l, e.den());
                l = *Poly::divide_exact(l * e.den(), g);
            }
        std::vector<Poly> v;
        for (const auto& e : r) v.push_back(e.is_zero() ? Poly() : *Poly::divide_exact(l, e.den()) * e.num());
        a.push_back(std::move(v));
    }
    std::size_t ncols = a.empty() ? 0 : a[0].size();
    std::vector<std::size_t> cols(ncols);
    for (std::size_t k = 0; k < ncols; ++k) cols[k] = k;
    int rank = 0;
    Poly prev(1);
    // full pivoting on the smallest entry keeps intermediate polynomials small
    for (std::size_t step = 0; step < ncols && step < a.size(); ++step) {
        std::size_t pr = a.size(), pc = ncols;
        for (std::size_t r = step; r < a.size(); ++r)
            for (std::size_t c = step; c < ncols; ++c) {
                const Poly& e = a[r][cols[c]];
                if (e.is_zero()) continue;
                if (pr == a.size() || e.size() < a[pr][cols[pc]].size() ||
                    (e.size() == a[pr][cols[pc]].size() && e.total_degree() < a[pr][cols[pc]].total_degree())) {
                    pr = r;
                    pc = c;
                }
            }
        if (pr == a.size()) break;
        std::swap(a[pr], a[step]);
        std::swap(cols[pc], cols[step]);
        const std::size_t col = cols[step];
        for (std::size_t r = step + 1; r < a.size(); ++r) {
            for (std::size_t c = step + 1; c < ncols; ++c) {
                const std::size_t k = cols[c];
                Poly v = a[step][col] * a[r][k] - a[r][col] * a[step][k];
                auto q = Poly::divide_exact(v, prev);
                if (!q) throw std::logic_error("internal: Bareiss division failed");
                a[r][k] = std::move(*q);
            }
            a[r][col] = Poly();
        }
        prev = a[step][col];
        ++rank;
    }
    return rank;
}

std::map<Var, mpq_class> random_point(const ExprMatrix& rows, std::mt19937_64& g) {
    std::bitset<sym::kMaxVars> sup;
    for (const auto& r : rows)
        for (const auto& e : r) sup |= e.support();
    std::uniform_int_distribution<long> d(-97, 97);
    std::map<Var, mpq_class> p;
    for (int i = 0; i < sym::kMaxVars; ++i)
        if (sup[i]) p[Var(static_cast<std::uint16_t>(i))] = mpq_class(d(g), 1 + std::abs(d(g)) % 13);
    return p;
}

}  // namespace

int generic_rank(const ExprMatrix& rows, std::uint64_t seed) {
    if (rows.empty()) return 0;
    int full = static_cast<int>(std::min(rows.size(), rows[0].size()));
    std::mt19937_64 g(seed);
    int best = 0;
    for (int attempt = 0; attempt < 3 && best < full; ++attempt)
        if (auto r = rank_at(rows, random_point(rows, g))) best = std::max(best, *r);
    if (best == full) return best;
    return symbolic_rank(rows);
}

int generic_rank(const std::vector<VectorField>& vs, std::uint64_t seed) {
    ExprMatrix m;
    for (const auto& v : vs) m.push_back(v.components());
    return generic_rank(m, seed);
}

int generic_rank(const std::vector<Form>& one_forms, std::uint64_t seed) {
    ExprMatrix m;
    for (const auto& f : one_forms) {
        Form c = f.to_coordinates();
        if (c.degree() != 1) throw std::invalid_argument("generic_rank expects 1-forms");
        std::vector<Expr> row(c.chart()->dim());
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = c.coeff(1u << i);
        m.push_back(std::move(row));
    }
    return generic_rank(m, seed);
}

std::vector<int> distribution_growth(const std::vector<VectorField>& D, int depth, std::uint64_t seed) {
    if (D.empty()) throw std::invalid_argument("empty distribution");
    if (depth < 1 || depth > 3) throw std::invalid_argument("depth must be 1..3");
    std::vector<int> out;
    std::vector<VectorField> cur = D;
    int r = generic_rank(cur, seed);
    out.push_back(r);
    const int full = static_cast<int>(D.front().chart()->dim());
    for (int k = 1; k < depth; ++k) {
        std::vector<VectorField> next = cur;
        for (const auto& X : D)
            for (const auto& Y : cur) {
                if (r == full) break;
                VectorField B = lie_bracket(X, Y);
                if (B.is_zero()) continue;
                next.push_back(B);
                int nr = generic_rank(next, seed);
                if (nr == r) next.pop_back();
                else r = nr;
            }
        cur = std::move(next);
        out.push_back(r);
    }
    return out;
}

int type_of(const VectorField& X, const Form& theta) {
    if (theta.degree() != 1) throw std::invalid_argument("type_of expects a 1-form");
    if (!evaluate_on(theta, {X}).is_zero()) throw std::invalid_argument("type_of: vector field is not in the kernel of the form");
    std::vector<Form> fs{theta.to_coordinates()};
    for (int k = 0; k < 3; ++k) fs.push_back(lie_derivative(X, fs.back()));
    return generic_rank(fs);
}

Form pullback(const Form& a, const ChartPtr& source, const std::vector<Expr>& map) {
    const Form c = a.to_coordinates();
    const auto& tgt = c.chart()->coords;
    if (map.size() != tgt.size()) throw std::invalid_argument("pullback: map size differs from target dimension");
    sym::Substitution sub;
    for (std::size_t i = 0; i < tgt.size(); ++i) sub[tgt[i]] = map[i];
    std::vector<Form> dy;
    for (const auto& m : map) dy.push_back(Form::exact(source, m));
    Form r(source, c.degree());
    for (const auto& [mask, coeff] : c.terms()) {
        Form prod = Form::scalar(source, sym::substitute(coeff, sub));
        for (std::uint32_t b = mask; b; b &= b - 1) prod = wedge(prod, dy[std::countr_zero(b)]);
        r = r + prod;
    }
    return r;
}

bool pushes_to(const VectorField& X, const std::vector<Expr>& map, const VectorField& Y) {
    const auto& tgt = Y.chart()->coords;
    if (map.size() != tgt.size()) throw std::invalid_argument("pushes_to: map size differs from target dimension");
    sym::Substitution sub;
    for (std::size_t i = 0; i < tgt.size(); ++i) sub[tgt[i]] = map[i];
    for (std::size_t i = 0; i < tgt.size(); ++i)
        if (X.apply(map[i]) != sym::substitute(Y[i], sub)) return false;
    return true;
}

}  // namespace ek::forms
