#include "rankenum/assignment.hpp"

namespace rankenum {

bool compatible(const PartialAssignment& a, const PartialAssignment& b) {
    VarMask shared = a.support() & b.support();
    for (VarMask m = shared; m != 0; m &= m - 1) {
        int var = __builtin_ctz(m);
        if (a.value(var) != b.value(var)) return false;
    }
    return true;
}

PartialAssignment join(const PartialAssignment& a, const PartialAssignment& b) {
    if (!compatible(a, b)) throw ValidationError("join of incompatible assignments");
    PartialAssignment out = a;
    VarMask only_b = b.support() & ~a.support();
    for (VarMask m = only_b; m != 0; m &= m - 1) {
        int var = __builtin_ctz(m);
        out.set(var, b.value(var));
    }
    return out;
}

bool lexicographic_less(const PartialAssignment& a, const PartialAssignment& b) {
    if (a.support() != b.support()) return a.support() < b.support();
    for (VarMask m = a.support(); m != 0; m &= m - 1) {
        int var = __builtin_ctz(m);
        if (a.value(var) != b.value(var)) return a.value(var) < b.value(var);
    }
    return false;
}

std::string to_string(const PartialAssignment& a, const VarSet& vars, const Domain& domain) {
    std::string out;
    for (int var = 0; var < vars.size(); ++var) {
        if (!a.defined(var)) continue;
        if (!out.empty()) out += ' ';
        out += vars.name(var);
        out += '=';
        out += domain.name(a.value(var));
    }
    return out;
}

}  // namespace rankenum
