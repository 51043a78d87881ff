#pragma once

#include <vector>

#include "sav/lattice.hpp"

namespace sav {

struct Weak11Row {
    Rat lambda;
    int64_t level_count = 0;  // #{x : sup_j |f * mu_j(x)| > lambda}
    Rat constant;             // lambda * count / ||f||_1
};

struct Weak11Report {
    std::vector<Weak11Row> rows;
    Rat max_constant;
    size_t window_cells = 0;
};

/// Exact maximal sweep: sup_j |f * mu_j| pointwise, then the empirical
/// weak-(1,1) constant over the lambda grid. Throws if the union of
/// convolution supports exceeds cell_budget (no silent truncation).
Weak11Report weak11_sweep(const std::vector<SparseMeasure>& family, const SparseMeasure& f,
                          const std::vector<Rat>& lambdas, size_t cell_budget = 20'000'000);

/// Pointwise sup_j |f * mu_j| as a measure (also used by the dynamics module).
SparseMeasure maximal_function(const std::vector<SparseMeasure>& family, const SparseMeasure& f,
                               size_t cell_budget = 20'000'000);

}  // namespace sav
