#pragma once

#include <cstdint>
#include <vector>

#include "sav/lattice.hpp"
#include "sav/weak11.hpp"

namespace sav {

/// Z^d action by commuting rotations of the torus T^D: T(n) x = x + sum n_i alpha_i.
struct TorusRotation {
    int d = 2;  // acting group dimension
    int D = 2;  // torus dimension
    std::vector<std::vector<double>> alpha;  // d shift vectors of length D
};
TorusRotation default_torus_rotation();  // alpha = ((sqrt2-1, 0), (0, sqrt3-1))

/// Z^d action by shifts on Z_L^D (exact, measure preserving).
struct FiniteTorusShift {
    int d = 2;
    int D = 2;
    int64_t L = 101;
    std::vector<Pt> shift;  // d vectors in Z_L^D
};

struct TrigObservable {
    // f(x) = sum_k c_k cos(2 pi k.x) + s_k sin(2 pi k.x)
    std::vector<Pt> freq;
    std::vector<double> cos_coef, sin_coef;
    double eval(const std::vector<double>& x) const;
    double space_mean() const;  // 0 unless a zero frequency is present
};

struct CellObservable {
    Pt corner;     // cell [corner, corner+extent) in Z_L^D
    Pt extent;
    bool contains(const Pt& x, int64_t L) const;
    Rat space_mean(int64_t L, int D) const;
};

struct TraceRow {
    int64_t N;
    double value;      // A_N f(x0)
    double deviation;  // |A_N f - space mean|
};

/// Averages along an enumeration with O(1) prefix updates (compensated
/// summation keeps N ~ 1e6 exact to ~1e-12).
std::vector<TraceRow> evaluate_average_torus(const TorusRotation& act, const TrigObservable& f,
                                             const std::vector<double>& x0,
                                             const std::vector<Pt>& enumeration,
                                             const std::vector<int64_t>& schedule);

struct ExactTraceRow {
    int64_t N;
    Rat value;
};
std::vector<ExactTraceRow> evaluate_average_finite(const FiniteTorusShift& act,
                                                   const CellObservable& f, const Pt& x0,
                                                   const std::vector<Pt>& enumeration,
                                                   const std::vector<int64_t>& schedule);

/// Oscillation bookkeeping along a lacunary index set: for consecutive chosen
/// times, sum_n (sup_{t in I cap [t_{n-1}, t_n]} |A_t f - A_{t_n} f|)^2.
double oscillation_sum(const std::vector<TraceRow>& dense_trace, const std::vector<int64_t>& I,
                       const std::vector<int64_t>& ts);

struct TransferenceReport {
    bool pointwise_identity = false;  // A_j f(T_g x0) == phi * mu_j(g^{-1}) on A^K
    bool level_sets_ok = false;       // dyn count <= group count at every lambda
    double edge_factor = 0;           // #(A^{K+r(family)}) / #A^K
};

/// Calderon transference on Z_L^d: compares the dynamical maximal function
/// along the orbit window A^K with the group-side maximal function of the
/// orbit pullback phi(g) = f(T_{g^{-1}} x0). Exact on both sides.
TransferenceReport transference_check(const FiniteTorusShift& act, const CellObservable& f,
                                      const Pt& x0, const std::vector<SparseMeasure>& family,
                                      int K, const std::vector<Rat>& lambdas);

}  // namespace sav
