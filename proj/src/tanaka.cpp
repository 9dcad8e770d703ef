#include "ek/tanaka.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ek/cubicalg.hpp"
#include "ek/g2alg.hpp"

namespace ek::tanaka {

using la::operator+;
using la::operator-;
using la::operator*;

namespace {

constexpr int deg_of(std::size_t y) { return y == 0 ? -2 : -1; }

QVec slice(const QVec& v, std::size_t off, std::size_t n) { return QVec(v.begin() + off, v.begin() + off + n); }

QVec flatten(const ProlongElem& e) {
    QVec out;
    for (const auto& v : e.img) out.insert(out.end(), v.begin(), v.end());
    return out;
}

ProlongElem from_matrix(const QMat& d) {
    ProlongElem e;
    e.img[0] = {d(0, 0)};
    for (std::size_t a = 1; a <= 4; ++a) e.img[a] = {d(1, a), d(2, a), d(3, a), d(4, a)};
    return e;
}

std::vector<std::vector<std::size_t>> subsets(const std::vector<std::size_t>& from, int q) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<int>(cur.size()) == q) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < from.size(); ++i) {
            cur.push_back(from[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

QMat restrict_op(const QMat& t, const std::vector<QVec>& basis) {
    QMat r(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        auto c = la::coordinates(basis, t * basis[j]);
        if (!c) throw std::logic_error("subspace is not invariant");
        for (std::size_t i = 0; i < basis.size(); ++i) r(i, j) = (*c)[i];
    }
    return r;
}

bool nilpotent(const QMat& t) {
    if (t.rows() == 0) return true;
    QMat p = t;
    for (std::size_t i = 1; i < t.rows(); ++i) p = p * t;
    return p.is_zero();
}

std::vector<QVec> kernel_within(const QMat& t, const std::vector<QVec>& w) {
    return la::intersect(w, la::nullspace(t));
}

// joint eigenspaces of ops inside the invariant subspace w; nilpotent ops are reduced to kernels first
std::vector<std::vector<QVec>> joint_eigenspaces(const std::vector<QMat>& ops, const std::vector<QVec>& w, bool& rational) {
    rational = true;
    std::vector<QVec> base = w;
    std::vector<const QMat*> torus;
    for (const auto& t : ops) {
        if (base.empty()) break;
        if (nilpotent(restrict_op(t, w)))
            base = kernel_within(t, base);
        else
            torus.push_back(&t);
    }
    std::vector<std::vector<QVec>> spaces;
    if (base.empty()) return spaces;
    spaces.push_back(base);
    for (const QMat* t : torus) {
        std::vector<std::vector<QVec>> next;
        for (const auto& v : spaces) {
            bool all = false;
            auto ev = la::rational_eigenvalues(restrict_op(*t, v), &all);
            rational = rational && all;
            for (const auto& lam : ev) {
                QMat shifted = *t - QMat::identity(t->rows()) * lam;
                auto e = kernel_within(shifted, v);
                if (!e.empty()) next.push_back(e);
            }
        }
        spaces = std::move(next);
    }
    return spaces;
}

}  // namespace

GradedNilpotent heisenberg_from_g2() {
    const auto& g = g2::algebra();
    GradedNilpotent m;
    m.pairing = QMat(4, 4);
    for (std::size_t a = 1; a <= 4; ++a)
        for (std::size_t b = 1; b <= 4; ++b) m.pairing(a - 1, b - 1) = g.c(a, b, 0);
    return m;
}

bool is_graded_derivation(const GradedNilpotent& m, const QMat& d) {
    if (d.rows() != 5 || d.cols() != 5) return false;
    for (std::size_t a = 1; a <= 4; ++a)
        if (d(0, a) != 0 || d(a, 0) != 0) return false;
    QMat A(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) A(i, j) = d(i + 1, j + 1);
    return A.transpose() * m.pairing + m.pairing * A == m.pairing * d(0, 0);
}

std::vector<QMat> graded_derivations(const GradedNilpotent& m) {
    // unknowns: lambda, then A (row major); equations A^T P + P A - lambda P = 0
    QMat sys(16, 17);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            std::size_t row = a * 4 + b;
            sys(row, 0) = -m.pairing(a, b);
            for (std::size_t c = 0; c < 4; ++c) {
                sys(row, 1 + c * 4 + a) += m.pairing(c, b);  // A_ca P_cb
                sys(row, 1 + c * 4 + b) += m.pairing(a, c);  // P_ac A_cb
            }
        }
    std::vector<QMat> out;
    for (const auto& v : la::nullspace(sys)) {
        QMat d(5, 5);
        d(0, 0) = v[0];
        for (std::size_t i = 0; i < 16; ++i) d(1 + i / 4, 1 + i % 4) = v[1 + i];
        out.push_back(d);
    }
    return out;
}

std::vector<QMat> g0_from_g2(const std::vector<std::size_t>& idx) {
    const auto& g = g2::algebra();
    std::vector<QMat> out;
    for (auto i : idx) {
        if (g2::grade(i) != 0) throw std::invalid_argument("g0_from_g2: element not of degree 0");
        QMat d(5, 5);
        for (std::size_t y = 0; y < 5; ++y)
            for (std::size_t k = 0; k < 5; ++k) d(k, y) = g.c(i, y, k);
        out.push_back(d);
    }
    return out;
}

std::vector<QMat> rho_prime_derivations(const GradedNilpotent& m) {
    std::vector<QMat> out;
    for (const auto& a : cubic::rho_prime_basis()) {
        QMat s = a.transpose() * m.pairing + m.pairing * a;
        // conformal factor read from a nonzero pairing entry
        mpq_class lam;
        bool found = false;
        for (std::size_t i = 0; i < 4 && !found; ++i)
            for (std::size_t j = 0; j < 4 && !found; ++j)
                if (m.pairing(i, j) != 0) {
                    lam = s(i, j) / m.pairing(i, j);
                    found = true;
                }
        QMat d(5, 5);
        d(0, 0) = lam;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) d(i + 1, j + 1) = a(i, j);
        if (!is_graded_derivation(m, d)) throw std::domain_error("rho' is not conformally symplectic for this pairing");
        out.push_back(d);
    }
    return out;
}

std::size_t ProlongationTable::dim(int k) const {
    if (k < -2) return 0;
    if (k == -2) return 1;
    if (k == -1) return 4;
    if (k <= top()) return comps[k].size();
    if (complete) return 0;
    throw std::out_of_range("prolongation degree " + std::to_string(k) + " not computed");
}

std::size_t ProlongationTable::total_dim() const {
    std::size_t n = 5;
    for (const auto& c : comps) n += c.size();
    return n;
}

std::vector<std::size_t> ProlongationTable::positive_dims() const {
    std::vector<std::size_t> d;
    for (int k = 1; k <= top(); ++k) d.push_back(comps[k].size());
    return d;
}

QVec ProlongationTable::bracket(int da, const QVec& a, int db, const QVec& b) const {
    const int d = da + db;
    if (da < 0 && db < 0) {
        QVec r(dim(d));
        if (da == -1 && db == -1)
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    if (a[i] != 0 && b[j] != 0) r[0] += a[i] * b[j] * m.pairing(i, j);
        return r;
    }
    if (da < 0) {
        QVec r = bracket(db, b, da, a);
        for (auto& x : r) x = -x;
        return r;
    }
    if (db < 0) {
        // a acts on m through its images
        QVec r(dim(d));
        for (std::size_t yi = 0; yi < b.size(); ++yi) {
            if (b[yi] == 0) continue;
            std::size_t y = (db == -2) ? 0 : yi + 1;
            for (std::size_t c = 0; c < a.size(); ++c)
                if (a[c] != 0)
                    for (std::size_t r_ = 0; r_ < r.size(); ++r_) r[r_] += b[yi] * a[c] * comps[da][c].img[y][r_];
        }
        return r;
    }
    // [[a,b], y] = [a, [b,y]] - [b, [a,y]]
    ProlongElem e;
    bool zero = true;
    for (std::size_t y = 0; y < 5; ++y) {
        const int dy = deg_of(y);
        QVec uy = (dy == -2) ? QVec{1} : la::unit_vec(4, y - 1);
        QVec by = bracket(db, b, dy, uy), ay = bracket(da, a, dy, uy);
        e.img[y] = bracket(da, a, db + dy, by) - bracket(db, b, da + dy, ay);
        if (!la::is_zero(e.img[y])) zero = false;
    }
    if (d > top()) {
        if (!complete) throw std::out_of_range("bracket lands beyond the computed prolongation");
        if (!zero) throw std::logic_error("nonzero bracket beyond a vanishing component");
        return {};
    }
    std::vector<QVec> basis;
    for (const auto& c : comps[d]) basis.push_back(flatten(c));
    auto x = la::coordinates(basis, flatten(e));
    if (!x) throw std::logic_error("bracket leaves the prolongation component");
    return *x;
}

std::vector<int> ProlongationTable::grades() const {
    std::vector<int> g{-2, -1, -1, -1, -1};
    for (int k = 0; k <= top(); ++k)
        for (std::size_t i = 0; i < comps[k].size(); ++i) g.push_back(k);
    return g;
}

LieAlgebra ProlongationTable::algebra() const {
    if (!complete) throw std::logic_error("prolongation not complete");
    std::vector<int> gr = grades();
    std::vector<std::size_t> off(gr.size());
    std::vector<std::string> names{"E0", "E1", "E2", "E3", "E4"};
    for (int k = 0; k <= top(); ++k)
        for (std::size_t i = 0; i < comps[k].size(); ++i) names.push_back("g" + std::to_string(k) + "_" + std::to_string(i));
    // position of element within its degree
    std::vector<std::size_t> local(gr.size());
    {
        std::size_t i = 0;
        for (int k = -2; k <= top(); ++k)
            for (std::size_t j = 0; j < dim(k); ++j) local[i++] = j;
    }
    auto first = [&](int k) {
        std::size_t i = 0;
        while (i < gr.size() && gr[i] != k) ++i;
        return i;
    };
    LieAlgebra L(gr.size(), names);
    for (std::size_t i = 0; i < gr.size(); ++i)
        for (std::size_t j = i + 1; j < gr.size(); ++j) {
            int d = gr[i] + gr[j];
            if (d < -2 || d > top()) continue;
            QVec r = bracket(gr[i], la::unit_vec(dim(gr[i]), local[i]), gr[j], la::unit_vec(dim(gr[j]), local[j]));
            std::size_t f = first(d);
            for (std::size_t c = 0; c < r.size(); ++c)
                if (r[c] != 0) L.set(i, j, f + c, r[c]);
        }
    return L;
}

std::string ProlongationTable::str() const {
    std::ostringstream os;
    os << "dims:";
    for (int k = -2; k <= top(); ++k) os << " g" << k << "=" << dim(k);
    os << (complete ? "" : " (truncated)") << ", total " << total_dim();
    return os.str();
}

ProlongationTable tanaka_prolong(const GradedNilpotent& m, const std::vector<QMat>& g0, int max_degree) {
    std::vector<QVec> flat;
    for (const auto& d : g0) {
        if (!is_graded_derivation(m, d)) throw std::invalid_argument("g0 element is not a graded derivation of m");
        flat.push_back(d.flatten());
    }
    auto span = la::span_basis(flat);
    for (const auto& a : g0)
        for (const auto& b : g0)
            if (!la::in_span(span, la::commutator(a, b).flatten())) throw std::invalid_argument("g0 is not a subalgebra");
    ProlongationTable t;
    t.m = m;
    t.comps.emplace_back();
    for (const auto& v : span) {
        QMat d(5, 5);
        for (std::size_t i = 0; i < 25; ++i) d(i / 5, i % 5) = v[i];
        t.comps[0].push_back(from_matrix(d));
    }
    if (span.empty()) {
        t.complete = true;
        return t;
    }
    for (int k = 1; k <= max_degree; ++k) {
        const std::size_t d1 = t.dim(k - 1), d2 = t.dim(k - 2), n = 4 * d1 + d2;
        auto element = [&](const QVec& z) {
            ProlongElem e;
            for (std::size_t a = 1; a <= 4; ++a) e.img[a] = slice(z, (a - 1) * d1, d1);
            e.img[0] = slice(z, 4 * d1, d2);
            return e;
        };
        // residual of phi([x,y]) = [phi x, y] + [x, phi y] over pairs x < y
        auto residual = [&](const ProlongElem& e) {
            QVec out;
            for (std::size_t x = 0; x < 5; ++x)
                for (std::size_t y = x + 1; y < 5; ++y) {
                    const int dx = deg_of(x), dy = deg_of(y);
                    QVec ux = (dx == -2) ? QVec{1} : la::unit_vec(4, x - 1);
                    QVec uy = (dy == -2) ? QVec{1} : la::unit_vec(4, y - 1);
                    QVec r = t.bracket(k + dx, e.img[x], dy, uy) - t.bracket(k + dy, e.img[y], dx, ux);
                    if (x >= 1) r = r - m.pairing(x - 1, y - 1) * e.img[0];
                    out.insert(out.end(), r.begin(), r.end());
                }
            return out;
        };
        std::vector<QVec> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(residual(element(la::unit_vec(n, j))));
        QMat sys = QMat::from_cols(cols);
        t.comps.emplace_back();
        for (const auto& z : la::nullspace(sys)) t.comps[k].push_back(element(z));
        if (t.comps[k].empty()) {
            t.complete = true;
            break;
        }
    }
    return t;
}

bool graded_isomorphic(const ProlongationTable& t, const LieAlgebra& target, const std::vector<int>& grades) {
    if (!t.complete || grades.size() != target.dim() || target.dim() != t.total_dim()) return false;
    const std::vector<int> mg{-2, -1, -1, -1, -1};
    for (std::size_t i = 0; i < 5; ++i)
        if (grades[i] != mg[i]) return false;
    int top = -1;
    for (int g : grades) top = std::max(top, g);
    std::map<int, std::vector<std::size_t>> by_deg;
    for (std::size_t i = 0; i < grades.size(); ++i) by_deg[grades[i]].push_back(i);
    // psi[k]: target coordinates of degree k -> prolongation coordinates
    std::map<int, QMat> psi;
    psi[-2] = QMat::identity(1);
    psi[-1] = QMat::identity(4);
    auto component = [&](const QVec& v, int k) {
        QVec r;
        for (auto i : by_deg[k]) r.push_back(v[i]);
        return r;
    };
    for (int k = 0; k <= top; ++k) {
        if (k > t.top() || by_deg[k].size() != t.dim(k)) return false;
        std::vector<QVec> basis;
        for (const auto& c : t.comps[k]) basis.push_back(flatten(c));
        std::vector<QVec> cols;
        for (auto i : by_deg[k]) {
            ProlongElem e;
            for (std::size_t y = 0; y < 5; ++y) {
                int dk = k + deg_of(y);
                QVec img = component(target.bracket_basis(i, y), dk);
                e.img[y] = dk >= -2 ? psi.at(dk) * img : QVec{};
            }
            auto x = la::coordinates(basis, flatten(e));
            if (!x) return false;
            cols.push_back(*x);
        }
        psi[k] = QMat::from_cols(cols, by_deg[k].size());
        if (la::det(psi[k]) == 0) return false;
    }
    // assemble and compare brackets
    const std::size_t n = target.dim();
    LieAlgebra L = t.algebra();
    std::vector<int> lg = t.grades();
    std::map<int, std::size_t> lfirst;
    for (std::size_t i = n; i-- > 0;) lfirst[lg[i]] = i;
    QMat P(n, n);
    for (auto& [k, idx] : by_deg)
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) P(lfirst[k] + b, idx[a]) = psi[k](b, a);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (P * target.bracket_basis(i, j) != L.bracket(P.col(i), P.col(j))) return false;
    return true;
}

std::size_t CochainSpace::index(const std::vector<std::size_t>& args, std::size_t target) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].first == args && basis[i].second == target) return i;
    return static_cast<std::size_t>(-1);
}

CochainSpace cochains(const std::vector<int>& grades, const std::vector<std::size_t>& targets, int q, int l) {
    std::vector<std::size_t> mi;
    for (std::size_t i = 0; i < grades.size(); ++i)
        if (grades[i] < 0) mi.push_back(i);
    CochainSpace c;
    c.q = q;
    c.l = l;
    if (q < 0) return c;
    for (const auto& s : subsets(mi, q)) {
        int ds = 0;
        for (auto x : s) ds += grades[x];
        for (auto t : targets)
            if (grades[t] == l + ds) c.basis.push_back({s, t});
    }
    return c;
}

QMat coboundary(const LieAlgebra& g, const std::vector<int>& grades, const std::vector<std::size_t>& targets, int q, int l) {
    CochainSpace dom = cochains(grades, targets, q, l), cod = cochains(grades, targets, q + 1, l);
    std::vector<std::size_t> mi;
    for (std::size_t i = 0; i < grades.size(); ++i)
        if (grades[i] < 0) mi.push_back(i);
    QMat D(cod.basis.size(), dom.basis.size());
    auto add = [&](const std::vector<std::size_t>& args, std::size_t u, std::size_t col, const mpq_class& v) {
        std::size_t row = cod.index(args, u);
        if (row == static_cast<std::size_t>(-1)) throw std::logic_error("coboundary leaves the cochain space");
        D(row, col) += v;
    };
    for (std::size_t col = 0; col < dom.basis.size(); ++col) {
        const auto& [S, t] = dom.basis[col];
        // sum_i (-1)^i [x_i, phi(..x_i hat..)]
        for (auto x : mi) {
            if (std::find(S.begin(), S.end(), x) != S.end()) continue;
            std::vector<std::size_t> T = S;
            T.insert(std::upper_bound(T.begin(), T.end(), x), x);
            std::size_t pos = std::find(T.begin(), T.end(), x) - T.begin();
            for (std::size_t u = 0; u < g.dim(); ++u)
                if (g.c(x, t, u) != 0) add(T, u, col, (pos % 2 ? -1 : 1) * g.c(x, t, u));
        }
        // sum_{i<j} (-1)^{i+j} phi([x_i, x_j], rest)
        for (const auto& T : subsets(mi, q + 1))
            for (std::size_t i = 0; i < T.size(); ++i)
                for (std::size_t j = i + 1; j < T.size(); ++j) {
                    std::vector<std::size_t> rest;
                    for (std::size_t r = 0; r < T.size(); ++r)
                        if (r != i && r != j) rest.push_back(T[r]);
                    for (auto mm : mi) {
                        const mpq_class& c = g.c(T[i], T[j], mm);
                        if (c == 0 || std::find(rest.begin(), rest.end(), mm) != rest.end()) continue;
                        std::vector<std::size_t> args = rest;
                        auto it = args.insert(std::upper_bound(args.begin(), args.end(), mm), mm);
                        if (args != S) continue;
                        std::size_t p = it - args.begin();
                        int sign = ((i + j + p) % 2) ? -1 : 1;
                        add(T, t, col, sign * c);
                    }
                }
    }
    return D;
}

std::size_t cohomology_dim(const LieAlgebra& g, const std::vector<int>& grades, const std::vector<std::size_t>& targets, int q,
                           int l) {
    std::size_t n = cochains(grades, targets, q, l).basis.size();
    std::size_t rk = n ? la::rank(coboundary(g, grades, targets, q, l)) : 0;
    std::size_t rprev = (q > 0 && cochains(grades, targets, q - 1, l).basis.size()) ? la::rank(coboundary(g, grades, targets, q - 1, l))
                                                                                      : 0;
    return n - rk - rprev;
}

namespace {
std::vector<int> g2_grades() {
    std::vector<int> gr;
    for (std::size_t i = 0; i < 14; ++i) gr.push_back(g2::grade(i));
    return gr;
}
std::vector<std::size_t> targets_of(Coefficients c) {
    std::vector<std::size_t> t;
    if (c == Coefficients::G)
        for (std::size_t i = 0; i < 14; ++i) t.push_back(i);
    else
        for (int i : g2::kQ) t.push_back(i);
    return t;
}
}  // namespace

std::size_t cohomology_dim(Coefficients c, int q, int l) {
    return cohomology_dim(g2::algebra(), g2_grades(), targets_of(c), q, l);
}

bool NormalizationReport::ok() const {
    return cochain_dim == 28 && summand_a == 24 && summand_b == 4 && ker_dim == 24 && im_tilde == 16 && im_q == 15 && h2_g == 8 &&
           h2_q == 9 && im_q_inside && rational && !lines.empty() && lines_outside == 0 && g0_invariant_lines == 0;
}

std::string NormalizationReport::str() const {
    std::ostringstream os;
    os << "(L2 m* x g)_1: " << cochain_dim << " = " << summand_a << " + " << summand_b << "\n";
    os << "ker d~: " << ker_dim << ", Im d~: " << im_tilde << ", Im d: " << im_q << (im_q_inside ? " (inside Im d~)" : " (NOT inside)")
       << "\n";
    os << "H2(m,g)_1: " << h2_g << ", H2(m,q)_1: " << h2_q << "\n";
    os << "q0 joint eigenspaces in Im d~: " << lines.size() << " (dims";
    for (const auto& l : lines) os << ' ' << l.size();
    os << "), outside Im d: " << lines_outside << (rational ? "" : ", irrational weights") << "\n";
    os << "g0-invariant directions in Im d~: " << g0_invariant_lines << "\n";
    os << (ok() ? "no q0-invariant complement to Im d" : "obstruction check FAILED");
    return os.str();
}

NormalizationReport normalization_obstruction() {
    const auto& g = g2::algebra();
    const auto gr = g2_grades();
    const auto all = targets_of(Coefficients::G), qt = targets_of(Coefficients::Q);
    NormalizationReport r;
    CochainSpace c2 = cochains(gr, all, 2, 1), c2q = cochains(gr, qt, 2, 1);
    r.cochain_dim = c2.basis.size();
    for (const auto& [S, t] : c2.basis) (S[0] == 0 ? r.summand_b : r.summand_a)++;
    QMat d1 = coboundary(g, gr, all, 1, 1), d2 = coboundary(g, gr, all, 2, 1);
    std::vector<QVec> imt = la::span_basis([&] {
        std::vector<QVec> v;
        for (std::size_t j = 0; j < d1.cols(); ++j) v.push_back(d1.col(j));
        return v;
    }());
    r.im_tilde = imt.size();
    r.ker_dim = r.cochain_dim - la::rank(d2);
    QMat d1q = coboundary(g, gr, qt, 1, 1);
    std::vector<QVec> imq_raw;
    for (std::size_t j = 0; j < d1q.cols(); ++j) {
        QVec v = la::zero_vec(r.cochain_dim);
        for (std::size_t i = 0; i < d1q.rows(); ++i)
            if (d1q(i, j) != 0) v[c2.index(c2q.basis[i].first, c2q.basis[i].second)] = d1q(i, j);
        imq_raw.push_back(v);
    }
    std::vector<QVec> imq = la::span_basis(imq_raw);
    r.im_q = imq.size();
    r.im_q_inside = true;
    for (const auto& v : imq) r.im_q_inside = r.im_q_inside && la::in_span(imt, v);
    r.h2_g = r.ker_dim - r.im_tilde;
    r.h2_q = (c2q.basis.size() - la::rank(coboundary(g, gr, qt, 2, 1))) - r.im_q;
    // g0 action on 2-cochains: (X.phi)(x,y) = [X, phi(x,y)] - phi([X,x], y) - phi(x, [X,y])
    auto action = [&](std::size_t X) {
        QMat A(r.cochain_dim, r.cochain_dim);
        for (std::size_t col = 0; col < c2.basis.size(); ++col) {
            const auto& [S, t] = c2.basis[col];
            auto ev = [&](std::size_t p, std::size_t q) -> int {
                if (p == S[0] && q == S[1]) return 1;
                if (p == S[1] && q == S[0]) return -1;
                return 0;
            };
            for (std::size_t u = 0; u < g.dim(); ++u)
                if (g.c(X, t, u) != 0) A(c2.index(S, u), col) += g.c(X, t, u);
            for (std::size_t row = 0; row < c2.basis.size(); ++row) {
                const auto& [T, tu] = c2.basis[row];
                if (tu != t) continue;
                mpq_class v = 0;
                for (std::size_t m = 0; m < 5; ++m) {
                    v -= g.c(X, T[0], m) * ev(m, T[1]);
                    v -= g.c(X, T[1], m) * ev(T[0], m);
                }
                A(row, col) += v;
            }
        }
        return A;
    };
    std::vector<QMat> q0{action(5), action(6), action(8)};
    bool rat = false;
    r.lines = joint_eigenspaces(q0, imt, rat);
    r.rational = rat;
    for (const auto& sp : r.lines) {
        bool inside = true;
        for (const auto& v : sp) inside = inside && la::in_span(imq, v);
        if (!inside) ++r.lines_outside;
    }
    bool rat_g0 = false;
    for (const auto& sp : joint_eigenspaces({action(5), action(6), action(7), action(8)}, imt, rat_g0)) r.g0_invariant_lines += sp.size();
    r.rational = r.rational && rat_g0;
    return r;
}

}  // namespace ek::tanaka
