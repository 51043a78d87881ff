#include "sav/weak11.hpp"

namespace sav {

SparseMeasure maximal_function(const std::vector<SparseMeasure>& family, const SparseMeasure& f,
                               size_t cell_budget) {
    if (family.empty()) throw std::invalid_argument("maximal_function: empty family");
    SparseMeasure sup(f.dim(), "maximal");
    for (const auto& mu : family) {
        SparseMeasure conv = convolve(f, mu);
        for (const auto& [p, x] : conv.entries()) {
            Rat a = abs(x);
            if (a > sup.at(p)) sup.set(p, a);
        }
        if (sup.support_size() > cell_budget)
            throw std::runtime_error("maximal_function: window cell budget exceeded");
    }
    return sup;
}

Weak11Report weak11_sweep(const std::vector<SparseMeasure>& family, const SparseMeasure& f,
                          const std::vector<Rat>& lambdas, size_t cell_budget) {
    SparseMeasure sup = maximal_function(family, f, cell_budget);
    Rat l1 = measure_stats(f).l1;
    if (sgn(l1) == 0) throw std::invalid_argument("weak11_sweep: f must be nonzero");
    Weak11Report rep;
    rep.window_cells = sup.support_size();
    for (const Rat& lam : lambdas) {
        Weak11Row row;
        row.lambda = lam;
        for (const auto& [p, x] : sup.entries())
            if (x > lam) ++row.level_count;
        row.constant = lam * Rat(row.level_count) / l1;
        if (row.constant > rep.max_constant) rep.max_constant = row.constant;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace sav
