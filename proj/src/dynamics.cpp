#include "sav/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace sav {

TorusRotation default_torus_rotation() {
    TorusRotation t;
    t.d = 2;
    t.D = 2;
    t.alpha = {{std::sqrt(2.0) - 1.0, 0.0}, {0.0, std::sqrt(3.0) - 1.0}};
    return t;
}

double TrigObservable::eval(const std::vector<double>& x) const {
    double v = 0;
    for (size_t k = 0; k < freq.size(); ++k) {
        double ph = 0;
        for (size_t i = 0; i < freq[k].size(); ++i) ph += (double)freq[k][i] * x[i];
        ph = 2.0 * std::numbers::pi * (ph - std::floor(ph));
        v += cos_coef[k] * std::cos(ph) + sin_coef[k] * std::sin(ph);
    }
    return v;
}

double TrigObservable::space_mean() const {
    double m = 0;
    for (size_t k = 0; k < freq.size(); ++k) {
        bool zero = true;
        for (int64_t c : freq[k])
            if (c) zero = false;
        if (zero) m += cos_coef[k];  // constant term
    }
    return m;
}

bool CellObservable::contains(const Pt& x, int64_t L) const {
    for (size_t i = 0; i < corner.size(); ++i) {
        int64_t c = ((x[i] % L) + L) % L;
        int64_t lo = ((corner[i] % L) + L) % L;
        int64_t w = extent[i];
        int64_t rel = c - lo;
        if (rel < 0) rel += L;
        if (rel >= w) return false;
    }
    return true;
}

Rat CellObservable::space_mean(int64_t L, int D) const {
    Rat vol = 1;
    for (int i = 0; i < D; ++i) vol *= Rat(extent[i], L);
    return vol;
}

std::vector<TraceRow> evaluate_average_torus(const TorusRotation& act, const TrigObservable& f,
                                             const std::vector<double>& x0,
                                             const std::vector<Pt>& enumeration,
                                             const std::vector<int64_t>& schedule) {
    if ((int)x0.size() != act.D) throw std::invalid_argument("evaluate_average_torus: x0 dim");
    int64_t max_n = *std::max_element(schedule.begin(), schedule.end());
    if ((size_t)max_n > enumeration.size())
        throw std::invalid_argument("evaluate_average_torus: schedule exceeds enumeration");
    std::vector<TraceRow> rows;
    double sum = 0, comp = 0;  // Kahan
    size_t next = 0;
    double mean = f.space_mean();
    std::vector<double> x(act.D);
    for (int64_t n = 1; n <= max_n; ++n) {
        const Pt& a = enumeration[n - 1];
        if ((int)a.size() != act.d)
            throw std::invalid_argument("evaluate_average_torus: enumeration dim");
        for (int i = 0; i < act.D; ++i) {
            double xi = x0[i];
            for (int gidx = 0; gidx < act.d; ++gidx) xi += (double)a[gidx] * act.alpha[gidx][i];
            x[i] = xi - std::floor(xi);
        }
        double y = f.eval(x) - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (next < schedule.size() && schedule[next] == n) {
            double v = sum / (double)n;
            rows.push_back({n, v, std::fabs(v - mean)});
            ++next;
        }
    }
    return rows;
}

std::vector<ExactTraceRow> evaluate_average_finite(const FiniteTorusShift& act,
                                                   const CellObservable& f, const Pt& x0,
                                                   const std::vector<Pt>& enumeration,
                                                   const std::vector<int64_t>& schedule) {
    int64_t max_n = *std::max_element(schedule.begin(), schedule.end());
    if ((size_t)max_n > enumeration.size())
        throw std::invalid_argument("evaluate_average_finite: schedule exceeds enumeration");
    std::vector<ExactTraceRow> rows;
    int64_t count = 0;
    size_t next = 0;
    Pt x(act.D);
    for (int64_t n = 1; n <= max_n; ++n) {
        const Pt& a = enumeration[n - 1];
        for (int i = 0; i < act.D; ++i) {
            int64_t xi = x0[i];
            for (int gidx = 0; gidx < act.d; ++gidx) xi += a[gidx] * act.shift[gidx][i];
            x[i] = ((xi % act.L) + act.L) % act.L;
        }
        if (f.contains(x, act.L)) ++count;
        if (next < schedule.size() && schedule[next] == n) {
            rows.push_back({n, Rat(count, n)});
            ++next;
        }
    }
    return rows;
}

double oscillation_sum(const std::vector<TraceRow>& dense_trace, const std::vector<int64_t>& I,
                       const std::vector<int64_t>& ts) {
    std::map<int64_t, double> at;
    for (const auto& r : dense_trace) at[r.N] = r.value;
    auto val = [&](int64_t t) {
        auto it = at.find(t);
        if (it == at.end()) throw std::invalid_argument("oscillation_sum: trace missing time");
        return it->second;
    };
    double total = 0;
    for (size_t n = 1; n < ts.size(); ++n) {
        double ref = val(ts[n]);
        double sup = 0;
        for (int64_t t : I)
            if (t >= ts[n - 1] && t <= ts[n]) sup = std::max(sup, std::fabs(val(t) - ref));
        total += sup * sup;
    }
    return total;
}

TransferenceReport transference_check(const FiniteTorusShift& act, const CellObservable& f,
                                      const Pt& x0, const std::vector<SparseMeasure>& family,
                                      int K, const std::vector<Rat>& lambdas) {
    if (act.d != (int)act.shift.size()) throw std::invalid_argument("transference_check: shifts");
    int64_t r_fam = 0;
    for (const auto& mu : family) r_fam = std::max(r_fam, measure_stats(mu).support_radius);
    double edge = std::pow((double)(2 * (K + r_fam) + 1) / (double)(2 * K + 1), act.d);
    if (edge > 2.0) throw std::invalid_argument("transference_check: edge factor > 2, enlarge K");

    // orbit pullback psi(u) = f(T_u x0) on the box window A^{K + r_fam}
    auto state_of = [&](const Pt& u) {
        Pt x(act.D);
        for (int i = 0; i < act.D; ++i) {
            int64_t xi = x0[i];
            for (int gidx = 0; gidx < act.d; ++gidx) xi += u[gidx] * act.shift[gidx][i];
            x[i] = ((xi % act.L) + act.L) % act.L;
        }
        return x;
    };
    SparseMeasure psi(act.d, "orbit-pullback");
    {
        Pt u(act.d, -(K + r_fam));
        while (true) {
            if (f.contains(state_of(u), act.L)) psi.set(u, 1);
            int i = 0;
            while (i < act.d && ++u[i] > K + r_fam) u[i++] = -(K + r_fam);
            if (i == act.d) break;
        }
    }
    // group side: sup_j |psi * mu_j~|
    std::vector<SparseMeasure> reflected;
    for (const auto& mu : family) reflected.push_back(mu.reflect());
    SparseMeasure group_sup = maximal_function(reflected, psi);

    // dynamical side on the orbit window, with the exact pointwise identity
    // A_j f(T_g x0) == (psi * mu_j~)(g) for g in A^K
    TransferenceReport rep;
    rep.edge_factor = edge;
    rep.pointwise_identity = true;
    std::vector<SparseMeasure> convs;
    for (const auto& r : reflected) convs.push_back(convolve(psi, r));
    std::map<Pt, Rat> dyn_sup;
    {
        Pt gpt(act.d, -K);
        while (true) {
            Rat best;
            for (size_t jdx = 0; jdx < family.size(); ++jdx) {
                Rat a;
                for (const auto& [h, w] : family[jdx].entries())
                    if (f.contains(state_of(pt_add(gpt, h)), act.L)) a += w;
                if (!(convs[jdx].at(gpt) == a)) rep.pointwise_identity = false;
                a = abs(a);
                if (a > best) best = a;
            }
            dyn_sup[gpt] = best;
            int i = 0;
            while (i < act.d && ++gpt[i] > K) gpt[i++] = -K;
            if (i == act.d) break;
        }
    }
    rep.level_sets_ok = true;
    for (const Rat& lam : lambdas) {
        int64_t dyn = 0, grp = 0;
        for (const auto& [g, v] : dyn_sup)
            if (v > lam) ++dyn;
        for (const auto& [u, v] : group_sup.entries())
            if (v > lam) ++grp;
        if (dyn > grp) rep.level_sets_ok = false;
    }
    return rep;
}

}  // namespace sav
