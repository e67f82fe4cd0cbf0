#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace truncprod {

/// One term of the order-p moment update: a nonzero bit string x_1..x_p,
/// its sign (-1)^{sum x_i}, and for every set bit i the cyclic gap d_i to the
/// next set bit (a lone set bit has d = p). The gaps of any term tile the
/// cycle: sum_i d_i = p.
struct GapTerm {
    std::uint32_t bits = 0;
    int sign = 1;
    std::vector<int> gaps;
};

inline constexpr int kMaxRecursionOrder = 24;  // 2^p term enumeration stays desk-scale

/// Enumerates all 2^p - 1 terms. Intended for small p; recursion stepping
/// uses the grouped table below instead.
std::vector<GapTerm> gap_terms(int p);

/// Streaming enumeration without materializing the list.
void for_each_gap_term(int p, const std::function<void(const GapTerm&)>& visit);

/// Moment vector (S_1 .. S_pmax) after `step` projector factors, at
/// truncation ratio delta_n / n. Starts from S_p(0) = 1.
struct MomentState {
    int step = 0;
    double ratio = 0;              // delta_n / n
    std::vector<double> values;    // values[p-1] = S_p

    int order() const { return static_cast<int>(values.size()); }
};

MomentState initial_moment_state(int p_max, double ratio);

/// Update terms of one order, grouped by gap multiset: the signed integer
/// count of bit strings sharing that multiset. The update reads
/// dS_p = ratio * sum_g coefficient_g * prod_d S_d.
struct GroupedGapTerms {
    struct Term {
        std::int64_t coefficient;
        std::vector<int> gaps;  // a partition of p, ascending
    };
    int p = 0;
    std::vector<Term> terms;
};

/// Precomputed grouped tables for orders 1..p_max; the 2^p enumeration is
/// paid once and amortized over every recursion step.
class RecursionTable {
  public:
    explicit RecursionTable(int p_max);
    int order() const { return static_cast<int>(grouped_.size()); }
    const GroupedGapTerms& grouped(int p) const { return grouped_.at(p - 1); }

    /// One step of the moment recursion; every order is updated from the
    /// previous step's values only. Throws on moment-monotonicity violation.
    void step(MomentState& state) const;

  private:
    std::vector<GroupedGapTerms> grouped_;
};

/// Single recursion step with a table built on the fly (small p convenience).
MomentState recursion_step(const MomentState& state);

/// Full trajectory S_p(n) for n = 0..length at the given dimension and
/// truncation depth. rows[n].values[p-1] = S_p(n).
std::vector<MomentState> solve_recursion(int n, int delta_n, int length, int p_max);

}  // namespace truncprod
