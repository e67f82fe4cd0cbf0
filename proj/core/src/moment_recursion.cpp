#include "truncprod/moment_recursion.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>

#include "truncprod/spectrum.hpp"

namespace truncprod {

namespace {

void require_order(int p) {
    if (p < 1 || p > kMaxRecursionOrder)
        throw std::invalid_argument("moment order must be in [1, " +
                                    std::to_string(kMaxRecursionOrder) + "], got " + std::to_string(p));
}

}  // namespace

void for_each_gap_term(int p, const std::function<void(const GapTerm&)>& visit) {
    require_order(p);
    GapTerm term;
    for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
        term.bits = mask;
        term.sign = (std::popcount(mask) % 2 == 0) ? 1 : -1;
        term.gaps.clear();
        for (int i = 0; i < p; ++i) {
            if (!(mask >> i & 1u)) continue;
            int d = 1;
            while (!(mask >> ((i + d) % p) & 1u)) ++d;
            term.gaps.push_back(d);
        }
        visit(term);
    }
}

std::vector<GapTerm> gap_terms(int p) {
    std::vector<GapTerm> out;
    out.reserve((std::size_t{1} << p) - 1);
    for_each_gap_term(p, [&](const GapTerm& t) { out.push_back(t); });
    return out;
}

MomentState initial_moment_state(int p_max, double ratio) {
    require_order(p_max);
    if (!(ratio > 0) || !(ratio < 1)) throw std::invalid_argument("ratio delta_n/n must lie in (0, 1)");
    MomentState s;
    s.step = 0;
    s.ratio = ratio;
    s.values.assign(p_max, 1.0);
    return s;
}

RecursionTable::RecursionTable(int p_max) {
    require_order(p_max);
    grouped_.resize(p_max);
    for (int p = 1; p <= p_max; ++p) {
        std::map<std::vector<int>, std::int64_t> acc;
        for_each_gap_term(p, [&](const GapTerm& t) {
            std::vector<int> key = t.gaps;
            std::sort(key.begin(), key.end());
            acc[key] += t.sign;
        });
        GroupedGapTerms g;
        g.p = p;
        for (auto& [gaps, coeff] : acc)
            if (coeff != 0) g.terms.push_back({coeff, gaps});
        grouped_[p - 1] = std::move(g);
    }
}

void RecursionTable::step(MomentState& state) const {
    const int p_max = state.order();
    if (p_max > order()) throw std::invalid_argument("RecursionTable built for lower order than state");
    const std::vector<double>& prev = state.values;
    std::vector<double> next(prev.size());
    for (int p = 1; p <= p_max; ++p) {
        double delta = 0;
        for (const auto& term : grouped_[p - 1].terms) {
            double prod = static_cast<double>(term.coefficient);
            for (int d : term.gaps) prod *= prev[d - 1];
            delta += prod;
        }
        next[p - 1] = prev[p - 1] + state.ratio * delta;
    }
    constexpr double slack = 1e-9;
    for (int p = 1; p <= p_max; ++p) {
        if (next[p - 1] < -slack || next[p - 1] > 1.0 + slack ||
            (p > 1 && next[p - 1] > next[p - 2] + slack)) {
            throw numerical_error("moment recursion violated S_{p+1} <= S_p <= 1 at step " +
                                  std::to_string(state.step + 1) + ", p=" + std::to_string(p));
        }
    }
    state.values = std::move(next);
    ++state.step;
}

MomentState recursion_step(const MomentState& state) {
    RecursionTable table(state.order());
    MomentState next = state;
    table.step(next);
    return next;
}

std::vector<MomentState> solve_recursion(int n, int delta_n, int length, int p_max) {
    if (n < 2 || delta_n < 1 || delta_n >= n) throw std::invalid_argument("invalid (n, delta_n)");
    if (length < 0) throw std::invalid_argument("trajectory length must be >= 0");
    RecursionTable table(p_max);
    MomentState state = initial_moment_state(p_max, static_cast<double>(delta_n) / n);
    std::vector<MomentState> rows;
    rows.reserve(length + 1);
    rows.push_back(state);
    for (int i = 0; i < length; ++i) {
        table.step(state);
        rows.push_back(state);
    }
    return rows;
}

}  // namespace truncprod
