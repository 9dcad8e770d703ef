#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ek::sym {

enum class VarKind { coordinate, jet, group_parameter, free_parameter };

const char* kind_name(VarKind k);

// Upper bound on distinct symbols in one process; monomials store a dense
// exponent array of this width.
inline constexpr int kMaxVars = 96;

// Interned symbol. The id doubles as the position in the monomial order:
// standard symbols are registered first in a fixed order, other names in
// order of first use.
class Var {
public:
    Var() = default;
    explicit Var(std::uint16_t id) : id_(id) {}

    std::uint16_t id() const { return id_; }
    const std::string& name() const;
    VarKind kind() const;

    friend bool operator==(Var a, Var b) { return a.id_ == b.id_; }
    friend auto operator<=>(Var a, Var b) { return a.id_ <=> b.id_; }

private:
    std::uint16_t id_ = 0;
};

// Look up or register a name. A first registration with an explicit kind
// fixes that kind; a later request with a conflicting kind throws.
Var var(std::string_view name);
Var var(std::string_view name, VarKind kind);
std::optional<Var> find_var(std::string_view name);
int var_count();

bool valid_identifier(std::string_view name);

// Jet symbols: t (order 0), t_xi (order 1), t_xixj with i <= j (order 2).
int jet_order(Var v);
// d/dx_i of a jet symbol; throws std::domain_error for order > 2.
Var jet_derivative(Var jet, Var coordinate);
// x index of a coordinate symbol x0..x5, or -1.
int x_index(Var v);

Var x(int i);
Var y(int i);
Var t_jet();
Var t_x(int i);
Var t_xx(int i, int j);
Var s(int i);
Var delta();

}  // namespace ek::sym
