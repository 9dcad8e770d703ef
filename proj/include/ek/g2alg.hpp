#pragma once

#include <string>
#include <vector>

#include "ek/liealg.hpp"
#include "ek/qmat.hpp"

namespace ek::g2 {

using la::LieAlgebra;
using la::QMat;
using la::QVec;

// the 14 basis matrices E0..E13 read off the parametric 7x7 matrices
std::vector<QMat> build_basis();
// [E_i, E_j] expanded in the basis; throws std::runtime_error if a commutator leaves the span
LieAlgebra commutator_table(const std::vector<QMat>& basis);
const LieAlgebra& algebra();  // cached table of build_basis()

// grading degree of E_i: -2 (E0), -1 (E1..E4), 0 (E5..E8), 1 (E9..E12), 2 (E13)
int grade(std::size_t i);

// transcribed structure equations
LieAlgebra::MC reference_mc();
LieAlgebra::MC reference_mc_q();  // labels kQ
inline const std::vector<int> kQ{0, 1, 2, 3, 4, 5, 6, 8, 12};
inline const std::vector<int> kAll{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};

struct McReport {
    int matched = 0;                     // equations equal under the chosen convention
    int convention = 1;                  // +1: d theta(X,Y) = -theta([X,Y]); -1: opposite sign matched
    std::vector<std::string> mismatches; // "d theta^k: computed ... expected ..."
    std::size_t jacobi_failed = 0, jacobi_checked = 0;
    bool ok() const { return matched == 14 && jacobi_failed == 0; }
};
McReport verify_maurer_cartan();

struct GradingReport {
    QVec Z;                    // grading element (coordinates in E0..E13)
    bool z_found = false;
    bool additive = false;     // [g_i, g_j] in g_{i+j}
    bool p2_closed = false;    // span(E5..E13)
    bool p12_closed = false;   // span(E5, E6, E8, E9..E13)
    bool q_closed = false;     // span(E0..E6, E8, E12)
    bool reduction_matches = false;
    std::vector<std::string> reduction_mismatches;
    bool heisenberg = false;   // g_- bracket nondegenerate onto g_-2, g_-2 central in g_-
    bool ok() const { return z_found && additive && p2_closed && p12_closed && q_closed && reduction_matches && heisenberg; }
};
GradingReport grading_and_parabolics();

struct InvariantFormsReport {
    std::size_t h_dim = 0;   // dimension of invariant symmetric bilinear forms on R^7
    QMat h;                  // a generator
    la::Signature h_signature;
    QMat killing;
    la::Signature killing_signature;
    mpq_class killing_det;
    mpq_class killing_zz;     // kappa(Z, Z)
    bool grading_pairing = false;  // kappa(g_i, g_j) = 0 unless i + j = 0
    bool ok() const;
};
InvariantFormsReport invariant_forms();

}  // namespace ek::g2
