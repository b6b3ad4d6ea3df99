#pragma once

#include <cmath>
#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>

#include "rankenum/assignment.hpp"
#include "rankenum/domain.hpp"

namespace rankenum {

/// A score is a finite double, or the distinguished bottom element meaning
/// "no completion exists". Bottom compares below every finite score; NaN is
/// rejected at construction.
class Score {
  public:
    static Score bottom() { return Score(); }
    static Score of(double value) {
        if (std::isnan(value)) throw ValidationError("NaN score");
        Score s;
        s.bottom_ = false;
        s.value_ = value;
        return s;
    }

    bool is_bottom() const { return bottom_; }
    double value() const {
        if (bottom_) throw ValidationError("bottom score has no value");
        return value_;
    }

    friend bool operator==(const Score& a, const Score& b) {
        return a.bottom_ == b.bottom_ && (a.bottom_ || a.value_ == b.value_);
    }
    friend bool operator<(const Score& a, const Score& b) {
        if (a.bottom_) return !b.bottom_;
        if (b.bottom_) return false;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const Score& a, const Score& b) { return a < b || a == b; }
    friend bool operator>(const Score& a, const Score& b) { return b < a; }
    friend bool operator>=(const Score& a, const Score& b) { return b <= a; }

  private:
    Score() = default;
    bool bottom_ = true;
    double value_ = 0.0;
};

/// Score returned by the max aggregator on an empty support. A finite
/// sentinel keeps scores totally ordered without special cases.
inline constexpr double kMaxEmptyScore = -1.0e308;

/// Per-singleton weights W(var, value); unlisted pairs weigh 0.
class WeightTable {
  public:
    WeightTable() = default;

    void set(int var, int value, double weight) {
        if (!std::isfinite(weight)) throw ValidationError("weights must be finite");
        table_[key(var, value)] = weight;
    }

    double get(int var, int value) const {
        auto it = table_.find(key(var, value));
        return it == table_.end() ? 0.0 : it->second;
    }

    bool all_nonnegative() const {
        for (const auto& [k, w] : table_)
            if (w < 0.0) return false;
        return true;
    }

  private:
    static std::uint64_t key(int var, int value) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(var)) << 32) |
               static_cast<std::uint32_t>(value);
    }
    std::unordered_map<std::uint64_t, double> table_;
};

enum class Aggregator { Sum, Max, Prod, Lex };

/// A subset-monotone ranking function: a weight table plus an aggregator.
/// Scores partial assignments by folding the weights of its singletons.
/// Empty-support scores: sum -> 0, max -> kMaxEmptyScore, prod -> 1.
/// Lexicographic rankings are compiled to sums with positional weights.
class RankingFunction {
  public:
    static RankingFunction sum(WeightTable table) {
        return RankingFunction(Aggregator::Sum, std::move(table));
    }
    static RankingFunction max(WeightTable table) {
        return RankingFunction(Aggregator::Max, std::move(table));
    }
    static RankingFunction prod(WeightTable table) {
        if (!table.all_nonnegative())
            throw ValidationError("prod ranking requires nonnegative weights");
        return RankingFunction(Aggregator::Prod, std::move(table));
    }

    /// Ranks assignments lexicographically along `order` (a permutation of
    /// the variables; earlier entries dominate), with higher value ids
    /// scoring higher. Encoded as sum with weights value * (|D|+1)^(n-i);
    /// exactness requires n*log2(|D|+1) <= 52.
    static RankingFunction lex(const std::vector<int>& order, int domain_size, int var_count);

    Aggregator aggregator() const { return agg_; }

    double operator()(const PartialAssignment& a) const {
        switch (agg_) {
            case Aggregator::Max: {
                double best = kMaxEmptyScore;
                for (VarMask m = a.support(); m != 0; m &= m - 1) {
                    int var = __builtin_ctz(m);
                    best = std::max(best, table_.get(var, a.value(var)));
                }
                return best;
            }
            case Aggregator::Prod: {
                double out = 1.0;
                for (VarMask m = a.support(); m != 0; m &= m - 1) {
                    int var = __builtin_ctz(m);
                    out *= table_.get(var, a.value(var));
                }
                return out;
            }
            default: {
                double out = 0.0;
                for (VarMask m = a.support(); m != 0; m &= m - 1) {
                    int var = __builtin_ctz(m);
                    out += table_.get(var, a.value(var));
                }
                return out;
            }
        }
    }

    Score score(const PartialAssignment& a) const { return Score::of((*this)(a)); }

  private:
    RankingFunction(Aggregator agg, WeightTable table) : agg_(agg), table_(std::move(table)) {}

    Aggregator agg_;
    WeightTable table_;
};

/// Parses the ranking file format:
///
///   ranking v1
///   agg sum|max|prod|lex
///   w <var> <value> <number>      (sum/max/prod; unlisted pairs weigh 0)
///   order <var>...                (lex only)
RankingFunction parse_ranking(std::string_view text, const Domain& domain, const VarSet& vars);

struct MonotoneCounterexample {
    VarMask support_y = 0;  // the Y the pair lives over
    PartialAssignment t1;   // w(t1) <= w(t2) ...
    PartialAssignment t2;
    PartialAssignment sigma;  // ... but w(sigma x t1) > w(sigma x t2)
};

/// Exhaustive subset-monotonicity check of an arbitrary ranking over a domain
/// of `domain_size` values and `var_count` variables: for every Y, every pair
/// of partial assignments over Y ordered by score, and every disjoint sigma,
/// extension must preserve the order. Requires (|D|+1)^n <= guard. Returns
/// the first counterexample found, scanning Y by ascending mask.
std::optional<MonotoneCounterexample> check_subset_monotone_bruteforce(
    const std::function<double(const PartialAssignment&)>& w, int domain_size, int var_count,
    std::uint64_t guard = 1000000);

}  // namespace rankenum
