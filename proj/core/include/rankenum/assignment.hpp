#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "rankenum/domain.hpp"
#include "rankenum/errors.hpp"

namespace rankenum {

/// A partial assignment of values to variables. Each variable either carries a
/// value id or is undefined; the set of defined variables is the support.
/// Assignments are small value types (at most kMaxVars slots) and compare by
/// support and values.
class PartialAssignment {
  public:
    PartialAssignment() { values_.fill(-1); }

    static PartialAssignment empty() { return PartialAssignment(); }

    bool defined(int var) const { return (support_ >> var) & 1u; }
    std::int32_t value(int var) const { return values_[static_cast<std::size_t>(var)]; }
    VarMask support() const { return support_; }
    int support_size() const { return __builtin_popcount(support_); }

    /// In-place definition. Overwriting an existing value is allowed.
    void set(int var, std::int32_t value) {
        values_[static_cast<std::size_t>(var)] = value;
        support_ |= (VarMask{1} << var);
    }

    /// Copy with one extra singleton. The variable must be fresh.
    PartialAssignment extended(int var, std::int32_t value) const {
        PartialAssignment out = *this;
        if (out.defined(var)) throw ValidationError("variable already defined in extension");
        out.set(var, value);
        return out;
    }

    /// Copy keeping only the variables in `mask`.
    PartialAssignment restricted(VarMask mask) const {
        PartialAssignment out;
        VarMask keep = support_ & mask;
        out.support_ = keep;
        for (VarMask m = keep; m != 0; m &= m - 1) {
            int var = __builtin_ctz(m);
            out.values_[static_cast<std::size_t>(var)] = values_[static_cast<std::size_t>(var)];
        }
        return out;
    }

    bool operator==(const PartialAssignment& other) const {
        if (support_ != other.support_) return false;
        for (VarMask m = support_; m != 0; m &= m - 1) {
            int var = __builtin_ctz(m);
            if (values_[static_cast<std::size_t>(var)] != other.values_[static_cast<std::size_t>(var)])
                return false;
        }
        return true;
    }
    bool operator!=(const PartialAssignment& other) const { return !(*this == other); }

  private:
    VarMask support_ = 0;
    std::array<std::int32_t, kMaxVars> values_;
};

/// True iff every variable defined in both assignments carries the same value.
bool compatible(const PartialAssignment& a, const PartialAssignment& b);

/// Natural join of two compatible assignments; `a` wins on shared variables
/// (the values are equal anyway). Throws ValidationError on incompatibility.
PartialAssignment join(const PartialAssignment& a, const PartialAssignment& b);

/// Deterministic total order used to fix tie order in oracle outputs:
/// by support mask, then by value ids in variable order.
bool lexicographic_less(const PartialAssignment& a, const PartialAssignment& b);

/// Renders as "x=a y=b" over the assignment's support, in variable order.
std::string to_string(const PartialAssignment& a, const VarSet& vars, const Domain& domain);

namespace detail {

/// Odometer over all total assignments of `var_count` variables with
/// `domain_size` values each. The callback receives each assignment once.
template <typename Fn>
void for_each_total_assignment(int domain_size, int var_count, Fn&& fn) {
    PartialAssignment a;
    for (int var = 0; var < var_count; ++var) a.set(var, 0);
    while (true) {
        fn(static_cast<const PartialAssignment&>(a));
        int var = 0;
        for (; var < var_count; ++var) {
            if (a.value(var) + 1 < domain_size) {
                a.set(var, a.value(var) + 1);
                break;
            }
            a.set(var, 0);
        }
        if (var == var_count) break;
    }
}

}  // namespace detail

struct PartialAssignmentHash {
    std::size_t operator()(const PartialAssignment& a) const noexcept {
        std::size_t h = std::hash<VarMask>{}(a.support());
        for (VarMask m = a.support(); m != 0; m &= m - 1) {
            int var = __builtin_ctz(m);
            h = h * 1315423911u + static_cast<std::size_t>(a.value(var)) + 0x9e3779b9u;
        }
        return h;
    }
};

}  // namespace rankenum
