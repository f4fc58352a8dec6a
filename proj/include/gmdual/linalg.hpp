#pragma once

#include "rational.hpp"

#include <map>
#include <vector>

namespace gmdual {

using SparseRow = std::map<int, Rational>;

struct Nullspace {
    int rank = 0;
    std::vector<std::vector<Rational>> basis;  // one dense vector per free column
};

/// Exact nullspace of a sparse rational system by row echelon elimination.
/// Each pivot row is normalised to 1 at its leading column and only carries
/// columns to the right of it.
inline Nullspace nullspace(const std::vector<SparseRow>& rows, int ncols) {
    std::map<int, SparseRow> pivots;
    for (SparseRow row : rows) {
        while (!row.empty()) {
            const int lead = row.begin()->first;
            auto p = pivots.find(lead);
            if (p == pivots.end()) {
                const Rational inv = 1 / row.begin()->second;
                for (auto& [c, v] : row) v *= inv;
                pivots.emplace(lead, std::move(row));
                break;
            }
            const Rational factor = row.begin()->second;
            for (const auto& [c, v] : p->second) {
                auto [it, inserted] = row.try_emplace(c, 0);
                it->second -= factor * v;
                if (it->second == 0) row.erase(it);
            }
        }
    }

    Nullspace out;
    out.rank = static_cast<int>(pivots.size());
    for (int free = 0; free < ncols; ++free) {
        if (pivots.count(free)) continue;
        std::vector<Rational> x(static_cast<std::size_t>(ncols));
        x[static_cast<std::size_t>(free)] = 1;
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            Rational s = 0;
            for (const auto& [c, v] : it->second)
                if (c != it->first) s += v * x[static_cast<std::size_t>(c)];
            x[static_cast<std::size_t>(it->first)] = -s;
        }
        out.basis.push_back(std::move(x));
    }
    return out;
}

} // namespace gmdual
