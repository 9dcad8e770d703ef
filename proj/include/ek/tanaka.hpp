#pragma once

#include <array>
#include <string>
#include <vector>

#include "ek/liealg.hpp"
#include "ek/qmat.hpp"

namespace ek::tanaka {

using la::LieAlgebra;
using la::QMat;
using la::QVec;

// m = m_-2 + m_-1 with basis E0 | E1..E4 and [E_a, E_b] = pairing(a-1, b-1) E0
struct GradedNilpotent {
    QMat pairing;  // 4x4 skew
};
GradedNilpotent heisenberg_from_g2();

// 5x5 matrices on (E0, E1..E4)
bool is_graded_derivation(const GradedNilpotent& m, const QMat& d);
std::vector<QMat> graded_derivations(const GradedNilpotent& m);  // basis of Der_gr(m)
std::vector<QMat> g0_from_g2(const std::vector<std::size_t>& idx);  // ad(E_i) restricted to m
// rho'(gl2) on m_-1 extended to m_-2 by the conformal factor; throws if not conformally symplectic
std::vector<QMat> rho_prime_derivations(const GradedNilpotent& m);

// element of degree k >= 0: img[0] = image of E0 in g_{k-2}, img[a] = image of E_a in g_{k-1}
struct ProlongElem {
    std::array<QVec, 5> img;
};

struct ProlongationTable {
    GradedNilpotent m;
    std::vector<std::vector<ProlongElem>> comps;  // comps[k] = basis of g_k, k = 0..
    bool complete = false;                        // last computed component is zero

    std::size_t dim(int k) const;  // any k >= -2
    int top() const { return static_cast<int>(comps.size()) - 1; }
    std::size_t total_dim() const;
    std::vector<std::size_t> positive_dims() const;  // k = 1..top
    // graded bracket; result degree a_deg + b_deg
    QVec bracket(int da, const QVec& a, int db, const QVec& b) const;
    LieAlgebra algebra() const;   // basis ordered by degree -2, -1, 0, 1, ...; requires complete
    std::vector<int> grades() const;
    std::string str() const;
};

// throws std::invalid_argument if g0 is not a subalgebra of graded derivations
ProlongationTable tanaka_prolong(const GradedNilpotent& m, const std::vector<QMat>& g0, int max_degree);

// exact graded isomorphism onto a target whose first five basis vectors are E0..E4 and whose
// degree-0 part acts on m with the same span as comps[0]
bool graded_isomorphic(const ProlongationTable& t, const LieAlgebra& target, const std::vector<int>& grades);

// Chevalley-Eilenberg complex of m = span(grade < 0) acting on span(targets) by ad
struct CochainSpace {
    int q = 0, l = 0;
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> basis;  // (sorted arguments, target)
    std::size_t index(const std::vector<std::size_t>& args, std::size_t target) const;  // npos if absent
};
CochainSpace cochains(const std::vector<int>& grades, const std::vector<std::size_t>& targets, int q, int l);
// matrix of d: C^q_l -> C^{q+1}_l (rows index C^{q+1}_l)
QMat coboundary(const LieAlgebra& g, const std::vector<int>& grades, const std::vector<std::size_t>& targets, int q, int l);

enum class Coefficients { G, Q };
std::size_t cohomology_dim(Coefficients c, int q, int l);
std::size_t cohomology_dim(const LieAlgebra& g, const std::vector<int>& grades, const std::vector<std::size_t>& targets, int q,
                           int l);

struct NormalizationReport {
    std::size_t cochain_dim = 0;  // (L^2 m* x g)_1
    std::size_t summand_a = 0;    // L^2 g_-1* x g_-1
    std::size_t summand_b = 0;    // g_-2* x g_-1* x g_-2
    std::size_t ker_dim = 0;
    std::size_t im_tilde = 0;
    std::size_t im_q = 0;
    std::size_t h2_g = 0, h2_q = 0;
    bool im_q_inside = false;           // Im d contained in Im d~
    bool rational = false;              // eigenvalues of the torus actions rational
    std::vector<std::vector<QVec>> lines;  // joint eigenspaces of q0 in Im d~
    std::size_t lines_outside = 0;      // eigenspaces not contained in Im d
    std::size_t g0_invariant_lines = 0; // dimension of joint g0-eigen directions in Im d~
    bool ok() const;
    std::string str() const;
};
NormalizationReport normalization_obstruction();

}  // namespace ek::tanaka
