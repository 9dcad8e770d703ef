#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ek/qmat.hpp"

namespace ek::la {

// Real Lie algebra by structure constants [e_i, e_j] = sum_k c^k_ij e_k.
class LieAlgebra {
public:
    LieAlgebra() = default;
    LieAlgebra(std::size_t n, std::vector<std::string> names = {});

    std::size_t dim() const { return n_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    const mpq_class& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
    // sets c^k_ij and c^k_ji = -c^k_ij
    void set(std::size_t i, std::size_t j, std::size_t k, const mpq_class& v);
    QVec bracket_basis(std::size_t i, std::size_t j) const;
    QVec bracket(const QVec& x, const QVec& y) const;
    QMat ad(const QVec& x) const;  // column j = [x, e_j]
    QMat ad_basis(std::size_t i) const;

    bool antisymmetric() const;
    // (failing, checked) over unordered triples i<j<k
    std::pair<std::size_t, std::size_t> jacobi() const;
    QMat killing() const;

    bool is_subalgebra(const std::vector<QVec>& basis) const;
    bool is_ideal(const std::vector<QVec>& basis) const;
    std::vector<QVec> center() const;
    std::vector<QVec> derived() const;  // [g, g]

    // Maurer-Cartan coefficients: d theta^k = sum_{i<j} m^k_ij theta^i ^ theta^j with m = -c
    using MC = std::vector<std::map<std::pair<int, int>, mpq_class>>;
    MC maurer_cartan() const;
    // inverse of maurer_cartan
    static LieAlgebra from_maurer_cartan(const MC& mc, std::vector<std::string> names = {});

    // restriction to a basis subset closed under bracket (throws if not closed)
    LieAlgebra restrict_to(const std::vector<std::size_t>& idx) const;

    std::string table() const;  // one line per nonzero c^k_ij, i<j

private:
    std::size_t n_ = 0;
    std::vector<std::string> names_;
    std::vector<mpq_class> c_;
};

// Parse structure equations written as "c*i^j + ..." per line. `labels[k]` is the form index used in the
// text for position k (e.g. {0,1,2,3,4,5,6,8,12}); line k gives d theta^{labels[k]}. A coefficient is an
// optional rational and an optional factor "e" which is replaced by `eps`. "0" denotes an empty right side.
LieAlgebra::MC parse_mc(const std::vector<int>& labels, const std::vector<std::string>& rhs, const mpq_class& eps = 1);
std::string format_mc_line(const std::map<std::pair<int, int>, mpq_class>& line, const std::vector<int>& labels);

// d^2 = 0 check for a constant-coefficient system d theta^k = sum m^k_ij theta^i^theta^j:
// returns the number of nonzero 3-form coefficients of d(d theta^k)
std::size_t d_squared_defects(const LieAlgebra::MC& mc);

// Decomposition of a semisimple algebra into ideals using a generic element of the centroid.
// Each entry is a basis of one ideal; ideals whose centroid has no rational split stay whole.
std::vector<std::vector<QVec>> ideal_decomposition(const LieAlgebra& g);

}  // namespace ek::la
