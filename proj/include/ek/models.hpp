#pragma once

#include <string>
#include <vector>

#include "ek/liealg.hpp"

namespace ek::models {

using la::LieAlgebra;

// d theta^{labels[k]} = sum m^k_ij theta^{labels[i]} ^ theta^{labels[j]} with constant m
struct ConstantStructureSystem {
    std::string name;
    std::vector<int> labels;
    LieAlgebra::MC mc;
    int eps = 0;  // 0 when the system carries no sign parameter
    std::size_t dim() const { return mc.size(); }
    LieAlgebra algebra() const;  // dual brackets, basis named E<label>
    std::string str() const;     // one line per equation
};

ConstantStructureSystem make_system(std::string name, std::vector<int> labels, const std::vector<std::string>& rhs, int eps = 0);

// J != 0; J = 0, L != 0; J = L = 0, M != 0, P != 0 (eps); submaximal (eps); J = L = M = P = 0, Q != 0
std::vector<ConstantStructureSystem> catalogue();
// the 9-dimensional symmetry algebra of the flat model
ConstantStructureSystem flat_symmetry_system();

struct JacobiReport {
    std::size_t d2_defects = 0;     // nonzero coefficients of d(d theta^k)
    std::size_t jacobi_failed = 0;  // failing triples of the dual brackets
    std::size_t jacobi_checked = 0;
    bool ok() const { return d2_defects == 0 && jacobi_failed == 0; }
};
JacobiReport jacobi_check(const ConstantStructureSystem& sys);

struct AlgebraReport {
    std::size_t dim = 0;
    la::Signature killing_signature;
    bool semisimple = false;
    std::size_t center_dim = 0;
    std::size_t derived_dim = 0;
    std::vector<std::size_t> ideal_dims;  // simple-ish summands found by the centroid split
    std::string str() const;
};
AlgebraReport identify(const ConstantStructureSystem& sys);

}  // namespace ek::models
