#pragma once

#include <array>
#include <vector>

#include "ek/qmat.hpp"

namespace ek::cubic {

using la::QMat;
using la::QVec;

QVec veronese(const mpq_class& s, const mpq_class& u);  // (s^3, s^2 u, s u^2, u^3)
std::array<mpq_class, 3> quadric_values(const QVec& p);

QMat irrep_rho(const QMat& A);   // 2x2 -> 4x4
QMat rho_prime(const QMat& X);   // tangent map at the identity

// Pairs (i,j), i<j, in the order 12, 13, 14, 23, 24, 34 (1-based labels).
inline constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct SymplecticSolution {
    std::vector<QVec> basis;  // each a 6-vector of omega_ij over kPairs
    QMat normalized;          // 4x4 antisymmetric, scaled so omega_14 = 1
};
SymplecticSolution legendrian_symplectic();
QMat standard_symplectic();  // E^1^E^4 - 3 E^2^E^3 as an antisymmetric matrix

// 4x4 matrices tangent to the cone over the twisted cubic
std::vector<QMat> stabilizer_subalgebra();
std::vector<QMat> rho_prime_basis();  // images of the four elementary 2x2 matrices

}  // namespace ek::cubic
