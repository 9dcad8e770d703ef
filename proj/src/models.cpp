#include "ek/models.hpp"

#include <sstream>

namespace ek::models {

LieAlgebra ConstantStructureSystem::algebra() const {
    std::vector<std::string> names;
    for (int l : labels) names.push_back("E" + std::to_string(l));
    return LieAlgebra::from_maurer_cartan(mc, names);
}

std::string ConstantStructureSystem::str() const {
    std::ostringstream os;
    os << name;
    if (eps != 0) os << " (eps = " << eps << ")";
    os << '\n';
    for (std::size_t k = 0; k < mc.size(); ++k) os << "  d theta^" << labels[k] << " = " << la::format_mc_line(mc[k], labels) << '\n';
    return os.str();
}

ConstantStructureSystem make_system(std::string name, std::vector<int> labels, const std::vector<std::string>& rhs, int eps) {
    ConstantStructureSystem s;
    s.name = std::move(name);
    s.mc = la::parse_mc(labels, rhs, eps == 0 ? 1 : eps);
    s.labels = std::move(labels);
    s.eps = eps;
    return s;
}

std::vector<ConstantStructureSystem> catalogue() {
    std::vector<ConstantStructureSystem> out;
    out.push_back(make_system("J!=0", {0, 1, 2, 3, 4, 5},
                              {"-6*0^5 + 1^4 - 3*2^3", "-24/5*1^5 + 3*2^4", "-18/5*2^5 + 2*3^4", "-12/5*3^5", "-6/5*4^5", "0"}));
    out.push_back(make_system("J=0,L!=0", {0, 1, 2, 3, 4},
                              {"-5/6*0^3 - 24*0^4 + 1^4 - 3*2^3", "0^3 - 2/3*1^3 - 30*1^4", "-1/2*2^3 - 18*2^4", "-6*3^4",
                               "1/6*3^4"}));
    for (int e : {1, -1})
        out.push_back(make_system("J=0,L=0,M!=0,P!=0", {0, 1, 2, 3, 4},
                                  {"-15/2*0^2 - 1/6*e*0^4 + 1^4 - 3*2^3", "e*0^2 - 3*1^2 - 1/3*e*1^4",
                                   "1/4*0^1 - 1/12*e*0^3 - 1/2*1^3 - 1/6*e*2^4", "9/2*0^2 + 1/6*e*0^4 + 9*e*1^2 + 3*2^3",
                                   "-27/4*e*0^1 + 9/4*0^3 + 27/2*e*1^3 + 9/2*2^4"},
                                  e));
    for (int e : {1, -1})
        out.push_back(make_system("submaximal", {0, 1, 2, 3, 4, 5, 6, 12},
                                  {"-6*0^5 + 1^4 - 3*2^3", "e*0^2 - 12*1^5", "3/4*e*0^3 + 1^6 - 6*2^5", "1/2*e*0^4 + 2*2^6",
                                   "6*0^12 + 3*3^6 + 6*4^5", "-1/12*e*0^6 - 1^12 + 1/12*e*2^4", "6*2^12 - 3/4*e*3^4 - 6*5^6",
                                   "1/6*e*4^6 - 12*5^12"},
                                  e));
    out.push_back(make_system("J=0,L=0,M=0,P=0,Q!=0", {0, 1, 2, 3, 4, 8},
                              {"1^4 - 3*2^3", "1/2*0^1 - 3*1^8", "1/2*0^2 - 2^8", "-1/2*0^3 + 3^8", "-1/2*0^4 + 3*4^8",
                               "-1/2*1^4 + 1/2*2^3"}));
    return out;
}

ConstantStructureSystem flat_symmetry_system() {
    return make_system("flat", {0, 1, 2, 3, 4, 5, 6, 8, 12},
                       {"-6*0^5 + 1^4 - 3*2^3", "-3*1^5 - 3*1^8", "1^6 - 3*2^5 - 2^8", "2*2^6 - 3*3^5 + 3^8",
                        "6*0^12 + 3*3^6 - 3*4^5 + 3*4^8", "-1^12", "6*2^12 + 2*6^8", "-3*1^12", "-3*5^12 - 3*8^12"});
}

JacobiReport jacobi_check(const ConstantStructureSystem& sys) {
    JacobiReport r;
    r.d2_defects = la::d_squared_defects(sys.mc);
    auto [bad, total] = sys.algebra().jacobi();
    r.jacobi_failed = bad;
    r.jacobi_checked = total;
    return r;
}

AlgebraReport identify(const ConstantStructureSystem& sys) {
    LieAlgebra g = sys.algebra();
    AlgebraReport r;
    r.dim = g.dim();
    la::QMat k = g.killing();
    r.killing_signature = la::signature(k);
    r.semisimple = la::det(k) != 0;
    r.center_dim = g.center().size();
    r.derived_dim = la::rank(g.derived());
    for (const auto& ideal : la::ideal_decomposition(g)) r.ideal_dims.push_back(ideal.size());
    return r;
}

std::string AlgebraReport::str() const {
    std::ostringstream os;
    os << "dim " << dim << ", Killing signature (" << killing_signature.pos << ", " << killing_signature.neg << ", "
       << killing_signature.zero << "), " << (semisimple ? "semisimple" : "not semisimple") << ", center " << center_dim
       << ", [g,g] " << derived_dim << ", ideals";
    for (auto d : ideal_dims) os << ' ' << d;
    return os.str();
}

}  // namespace ek::models
