#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rankenum/errors.hpp"

namespace rankenum {

/// Hard cap on the number of circuit variables. Variable sets are kept as
/// machine-word bitmasks, and brute-force helpers index assignment spaces of
/// size |D|^n, so n stays small by contract.
inline constexpr int kMaxVars = 16;

/// Bitmask over the variables of a circuit (bit i = variable i).
using VarMask = std::uint32_t;

namespace detail {

struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};

/// Ordered list of unique names with O(1) name -> index lookup.
class NameTable {
  public:
    NameTable() = default;
    explicit NameTable(std::vector<std::string> names, const char* what) : names_(std::move(names)) {
        if (names_.empty()) throw ValidationError(std::string(what) + " list must be non-empty");
        for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
            auto [it, fresh] = index_.emplace(names_[i], i);
            (void)it;
            if (!fresh) throw ValidationError(std::string(what) + " '" + names_[i] + "' declared twice");
        }
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<int> find(std::string_view name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const NameTable& other) const { return names_ == other.names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int, StringHash, std::equal_to<>> index_;
};

}  // namespace detail

/// The finite set of values a variable may take. Value ids are 0-based
/// positions in declaration order.
class Domain {
  public:
    explicit Domain(std::vector<std::string> values) : table_(std::move(values), "domain value") {}

    int size() const { return table_.size(); }
    const std::string& name(int value) const { return table_.name(value); }
    const std::vector<std::string>& names() const { return table_.names(); }
    std::optional<int> find(std::string_view name) const { return table_.find(name); }
    bool operator==(const Domain& other) const { return table_ == other.table_; }

  private:
    detail::NameTable table_;
};

/// The circuit's variables, in declaration order. At most kMaxVars entries.
class VarSet {
  public:
    explicit VarSet(std::vector<std::string> names) : table_(std::move(names), "variable") {
        if (table_.size() > kMaxVars)
            throw ValidationError("at most " + std::to_string(kMaxVars) + " variables are supported");
    }

    int size() const { return table_.size(); }
    const std::string& name(int var) const { return table_.name(var); }
    const std::vector<std::string>& names() const { return table_.names(); }
    std::optional<int> find(std::string_view name) const { return table_.find(name); }
    VarMask full_mask() const { return static_cast<VarMask>((1u << table_.size()) - 1u); }
    bool operator==(const VarSet& other) const { return table_ == other.table_; }

  private:
    detail::NameTable table_;
};

}  // namespace rankenum
