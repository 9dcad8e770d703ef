#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace ek::la {

using QVec = std::vector<mpq_class>;

// Dense exact rational matrix, row major.
class QMat {
public:
    QMat() = default;
    QMat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
    QMat(std::initializer_list<std::initializer_list<mpq_class>> rows);
    static QMat identity(std::size_t n);
    static QMat from_rows(const std::vector<QVec>& rows, std::size_t cols = 0);
    static QMat from_cols(const std::vector<QVec>& cols, std::size_t rows = 0);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    mpq_class& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const mpq_class& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    QVec row(std::size_t i) const;
    QVec col(std::size_t j) const;
    QVec flatten() const { return a_; }

    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    QMat operator*(const QMat& o) const;
    QMat operator*(const mpq_class& k) const;
    QVec operator*(const QVec& v) const;
    QMat transpose() const;
    friend bool operator==(const QMat& a, const QMat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
    bool is_zero() const;
    mpq_class trace() const;
    std::string str() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<mpq_class> a_;
};

QMat commutator(const QMat& a, const QMat& b);

// reduced row echelon form; pivot columns returned through `pivots`
QMat rref(QMat m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const QMat& m);
std::size_t rank(const std::vector<QVec>& vectors);
std::vector<QVec> nullspace(const QMat& m);  // basis of {x : m x = 0}
std::optional<QVec> solve(const QMat& a, const QVec& b);  // one solution or nullopt
mpq_class det(QMat m);
std::optional<QMat> inverse(const QMat& m);

// row-reduced basis of the span of the vectors (independent, canonical)
std::vector<QVec> span_basis(const std::vector<QVec>& vectors);
bool in_span(const std::vector<QVec>& basis, const QVec& v);
std::vector<QVec> intersect(const std::vector<QVec>& a, const std::vector<QVec>& b);
// coordinates of v in a basis (basis must be independent and v in the span)
std::optional<QVec> coordinates(const std::vector<QVec>& basis, const QVec& v);

struct Signature {
    int pos = 0, neg = 0, zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
    std::string str() const;
};
// inertia of a symmetric matrix by exact congruence diagonalization
Signature signature(const QMat& sym);

// Rational eigenvalues of a square matrix: candidates from a floating-point solve,
// each verified exactly (singularity of m - lambda I). Complex or irrational ones are skipped;
// `all_rational` reports whether the algebraic multiplicities found exhaust the dimension.
std::vector<mpq_class> rational_eigenvalues(const QMat& m, bool* all_rational = nullptr);

QVec zero_vec(std::size_t n);
QVec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const QVec& v);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const mpq_class& k, const QVec& v);
std::string str(const mpq_class& q);
std::string str(const QVec& v);

}  // namespace ek::la
