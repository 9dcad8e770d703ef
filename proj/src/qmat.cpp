#include "ek/qmat.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ek::la {

QMat::QMat(std::initializer_list<std::initializer_list<mpq_class>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != c_) throw std::invalid_argument("ragged matrix literal");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows, std::size_t cols) {
    std::size_t c = rows.empty() ? cols : rows[0].size();
    QMat m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

QMat QMat::from_cols(const std::vector<QVec>& cols, std::size_t rows) { return from_rows(cols, rows).transpose(); }

QVec QMat::row(std::size_t i) const { return QVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

QVec QMat::col(std::size_t j) const {
    QVec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

QMat QMat::operator+(const QMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("shape mismatch");
    QMat m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

QMat QMat::operator-(const QMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("shape mismatch");
    QMat m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

QMat QMat::operator*(const QMat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("shape mismatch");
    QMat m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const mpq_class& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j)
                if (o(k, j) != 0) m(i, j) += x * o(k, j);
        }
    return m;
}

QMat QMat::operator*(const mpq_class& k) const {
    QMat m = *this;
    for (auto& x : m.a_) x *= k;
    return m;
}

QVec QMat::operator*(const QVec& v) const {
    if (v.size() != c_) throw std::invalid_argument("shape mismatch");
    QVec r(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

QMat QMat::transpose() const {
    QMat m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

bool QMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

mpq_class QMat::trace() const {
    mpq_class t = 0;
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

std::string QMat::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < r_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << la::str((*this)(i, j));
        os << "]\n";
    }
    return os.str();
}

QMat commutator(const QMat& a, const QMat& b) { return a * b - b * a; }

QMat rref(QMat m, std::vector<std::size_t>* pivots) {
    std::size_t r = 0;
    if (pivots) pivots->clear();
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        mpq_class inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            mpq_class f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (m(r, j) != 0) m(i, j) -= f * m(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return m;
}

std::size_t rank(const QMat& m) {
    std::vector<std::size_t> p;
    rref(m, &p);
    return p.size();
}

std::size_t rank(const std::vector<QVec>& vectors) {
    if (vectors.empty()) return 0;
    return rank(QMat::from_rows(vectors));
}

std::vector<QVec> nullspace(const QMat& m) {
    std::vector<std::size_t> piv;
    QMat r = rref(m, &piv);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<QVec> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        QVec v(m.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<QVec> solve(const QMat& a, const QVec& b) {
    QMat aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    QMat r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    QVec x(a.cols());
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r(k, a.cols());
    return x;
}

mpq_class det(QMat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    std::size_t n = m.rows();
    mpq_class d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            mpq_class f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

std::optional<QMat> inverse(const QMat& m) {
    std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    QMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    QMat r = rref(aug, &piv);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    QMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
}

std::vector<QVec> span_basis(const std::vector<QVec>& vectors) {
    if (vectors.empty()) return {};
    std::vector<std::size_t> piv;
    QMat r = rref(QMat::from_rows(vectors), &piv);
    std::vector<QVec> out;
    for (std::size_t k = 0; k < piv.size(); ++k) out.push_back(r.row(k));
    return out;
}

bool in_span(const std::vector<QVec>& basis, const QVec& v) {
    if (is_zero(v)) return true;
    if (basis.empty()) return false;
    auto all = basis;
    all.push_back(v);
    return rank(all) == rank(basis);
}

std::vector<QVec> intersect(const std::vector<QVec>& a, const std::vector<QVec>& b) {
    if (a.empty() || b.empty()) return {};
    // x in span(a) with x = sum l_i a_i = sum m_j b_j
    std::size_t n = a[0].size();
    QMat m(n, a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t r = 0; r < n; ++r) m(r, i) = a[i][r];
    for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t r = 0; r < n; ++r) m(r, a.size() + j) = -b[j][r];
    std::vector<QVec> out;
    for (const auto& k : nullspace(m)) {
        QVec x(n);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (k[i] != 0)
                for (std::size_t r = 0; r < n; ++r) x[r] += k[i] * a[i][r];
        out.push_back(std::move(x));
    }
    return span_basis(out);
}

std::optional<QVec> coordinates(const std::vector<QVec>& basis, const QVec& v) {
    if (basis.empty()) return is_zero(v) ? std::optional<QVec>(QVec{}) : std::nullopt;
    return solve(QMat::from_cols(basis), v);
}

std::string Signature::str() const {
    std::ostringstream os;
    os << "(" << pos << ", " << neg << ")";
    if (zero) os << " + " << zero << " null";
    return os.str();
}

Signature signature(const QMat& sym) {
    std::size_t n = sym.rows();
    if (n != sym.cols() || !(sym == sym.transpose())) throw std::invalid_argument("signature needs a symmetric matrix");
    QMat a = sym;
    Signature s;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        // pick a nonzero diagonal pivot; if none, create one from an off-diagonal entry
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && a(i, i) != 0) {
                p = i;
                break;
            }
        if (p == n) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = 0; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!done[i] && !done[j] && a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n) break;
            // e_i <- e_i + e_j gives a(i,i) = 2 a(i,j) != 0
            for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
            for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
            p = pi;
        }
        const mpq_class d = a(p, p);
        (d > 0 ? s.pos : s.neg)++;
        done[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a(i, p) == 0) continue;
            mpq_class f = a(i, p) / d;
            for (std::size_t k = 0; k < n; ++k) a(i, k) -= f * a(p, k);
            for (std::size_t k = 0; k < n; ++k) a(k, i) -= f * a(k, p);
        }
    }
    s.zero = static_cast<int>(n) - s.pos - s.neg;
    return s;
}

namespace {

// continued fraction approximation with bounded denominator
mpq_class rationalize(double x, long max_den) {
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 40; ++it) {
        double fl = std::floor(r);
        long a = static_cast<long>(fl);
        long h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double frac = r - fl;
        if (std::abs(frac) < 1e-12) break;
        r = 1.0 / frac;
    }
    return mpq_class(h1, k1);
}

}  // namespace

std::vector<mpq_class> rational_eigenvalues(const QMat& m, bool* all_rational) {
    std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("eigenvalues of non-square matrix");
    Eigen::MatrixXd d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d(i, j) = m(i, j).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(d, false);
    std::vector<mpq_class> out;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        auto z = es.eigenvalues()[k];
        if (std::abs(z.imag()) > 1e-6) continue;
        mpq_class q = rationalize(z.real(), 10000);
        bool seen = false;
        for (const auto& o : out) seen = seen || (o == q);
        if (seen) continue;
        if (rank(m - QMat::identity(n) * q) < n) out.push_back(q);
    }
    std::sort(out.begin(), out.end());
    if (all_rational) {
        // exhausted iff the generalized eigenspaces fill the space
        std::size_t total = 0;
        for (const auto& q : out) {
            QMat a = m - QMat::identity(n) * q, p = QMat::identity(n);
            for (std::size_t k = 0; k < n; ++k) p = p * a;
            total += n - rank(p);
        }
        *all_rational = (total == n);
    }
    return out;
}

QVec zero_vec(std::size_t n) { return QVec(n); }

QVec unit_vec(std::size_t n, std::size_t i) {
    QVec v(n);
    v.at(i) = 1;
    return v;
}

bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

QVec operator+(const QVec& a, const QVec& b) {
    QVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

QVec operator-(const QVec& a, const QVec& b) {
    QVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

QVec operator*(const mpq_class& k, const QVec& v) {
    QVec r = v;
    for (auto& x : r) x *= k;
    return r;
}

std::string str(const mpq_class& q) { return q.get_str(); }

std::string str(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s + ")";
}

}  // namespace ek::la
