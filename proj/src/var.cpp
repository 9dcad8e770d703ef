#include "ek/var.hpp"

#include <array>
#include <atomic>
#include <cctype>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace ek::sym {

namespace {

struct Registry {
    std::array<std::string, kMaxVars> names;
    std::array<VarKind, kMaxVars> kinds{};
    std::atomic<int> count{0};
    std::unordered_map<std::string, std::uint16_t> index;
    std::mutex mu;

    // caller holds mu
    std::uint16_t add(const std::string& n, VarKind k) {
        int c = count.load(std::memory_order_relaxed);
        if (c >= kMaxVars) throw std::length_error("too many distinct symbols (limit " + std::to_string(kMaxVars) + ")");
        names[c] = n;
        kinds[c] = k;
        index.emplace(n, static_cast<std::uint16_t>(c));
        count.store(c + 1, std::memory_order_release);
        return static_cast<std::uint16_t>(c);
    }

    Registry() {
        std::lock_guard<std::mutex> lk(mu);
        for (int i = 0; i < 6; ++i) add("x" + std::to_string(i), VarKind::coordinate);
        for (int i = 0; i < 6; ++i) add("y" + std::to_string(i), VarKind::coordinate);
        add("t", VarKind::jet);
        for (int i = 0; i < 5; ++i) add("t_x" + std::to_string(i), VarKind::jet);
        for (int i = 0; i < 5; ++i)
            for (int j = i; j < 5; ++j) add("t_x" + std::to_string(i) + "x" + std::to_string(j), VarKind::jet);
        for (int i = 0; i < 9; ++i) add("s" + std::to_string(i), VarKind::group_parameter);
        add("delta", VarKind::group_parameter);
    }
};

Registry& reg() {
    static Registry r;
    return r;
}

}  // namespace

const char* kind_name(VarKind k) {
    switch (k) {
        case VarKind::coordinate: return "coordinate";
        case VarKind::jet: return "jet";
        case VarKind::group_parameter: return "group-parameter";
        case VarKind::free_parameter: return "free-parameter";
    }
    return "?";
}

const std::string& Var::name() const { return reg().names[id_]; }
VarKind Var::kind() const { return reg().kinds[id_]; }

bool valid_identifier(std::string_view n) {
    if (n.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
    for (char ch : n)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
    return true;
}

std::optional<Var> find_var(std::string_view name) {
    Registry& r = reg();
    std::lock_guard<std::mutex> lk(r.mu);
    auto it = r.index.find(std::string(name));
    if (it == r.index.end()) return std::nullopt;
    return Var(it->second);
}

Var var(std::string_view name) {
    Registry& r = reg();
    std::lock_guard<std::mutex> lk(r.mu);
    std::string n(name);
    auto it = r.index.find(n);
    if (it != r.index.end()) return Var(it->second);
    if (!valid_identifier(n)) throw std::invalid_argument("invalid identifier '" + n + "'");
    if (n.rfind("t_", 0) == 0) throw std::invalid_argument("unsupported jet symbol '" + n + "'");
    return Var(r.add(n, VarKind::free_parameter));
}

Var var(std::string_view name, VarKind kind) {
    Registry& r = reg();
    std::lock_guard<std::mutex> lk(r.mu);
    std::string n(name);
    auto it = r.index.find(n);
    if (it != r.index.end()) {
        if (r.kinds[it->second] != kind)
            throw std::invalid_argument("symbol '" + n + "' already has kind " + kind_name(r.kinds[it->second]));
        return Var(it->second);
    }
    if (!valid_identifier(n)) throw std::invalid_argument("invalid identifier '" + n + "'");
    return Var(r.add(n, kind));
}

int var_count() { return reg().count.load(std::memory_order_acquire); }

// fixed ids from the registration order above
namespace {
constexpr int kX = 0, kY = 6, kT = 12, kTx = 13, kTxx = 18, kS = 33, kDelta = 42;
int txx_offset(int i, int j) {
    // position of (i,j), i<=j, in row-major upper triangle of 5x5
    int off = 0;
    for (int r = 0; r < i; ++r) off += 5 - r;
    return off + (j - i);
}
}  // namespace

Var x(int i) {
    if (i < 0 || i > 5) throw std::out_of_range("x index");
    reg();
    return Var(static_cast<std::uint16_t>(kX + i));
}
Var y(int i) {
    if (i < 0 || i > 5) throw std::out_of_range("y index");
    reg();
    return Var(static_cast<std::uint16_t>(kY + i));
}
Var t_jet() {
    reg();
    return Var(static_cast<std::uint16_t>(kT));
}
Var t_x(int i) {
    if (i < 0 || i > 4) throw std::out_of_range("t_x index");
    reg();
    return Var(static_cast<std::uint16_t>(kTx + i));
}
Var t_xx(int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j > 4) throw std::out_of_range("t_xx index");
    reg();
    return Var(static_cast<std::uint16_t>(kTxx + txx_offset(i, j)));
}
Var s(int i) {
    if (i < 0 || i > 8) throw std::out_of_range("s index");
    reg();
    return Var(static_cast<std::uint16_t>(kS + i));
}
Var delta() {
    reg();
    return Var(static_cast<std::uint16_t>(kDelta));
}

int jet_order(Var v) {
    int id = v.id();
    if (id == kT) return 0;
    if (id >= kTx && id < kTxx) return 1;
    if (id >= kTxx && id < kS) return 2;
    return -1;
}

int x_index(Var v) {
    int id = v.id();
    return (id >= kX && id < kX + 6) ? id - kX : -1;
}

Var jet_derivative(Var jet, Var coordinate) {
    int i = x_index(coordinate);
    if (i < 0 || i > 4) throw std::domain_error("jet derivative only along x0..x4");
    switch (jet_order(jet)) {
        case 0: return t_x(i);
        case 1: return t_xx(jet.id() - kTx, i);
        case 2: throw std::domain_error("derivative of " + jet.name() + " would be a third-order jet");
        default: throw std::invalid_argument(jet.name() + " is not a jet symbol");
    }
}

}  // namespace ek::sym
