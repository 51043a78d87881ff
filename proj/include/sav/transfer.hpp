#pragma once

#include <cstdint>
#include <vector>

#include "sav/finfield.hpp"
#include "sav/lattice.hpp"

namespace sav {

/// Digit-collapse map F: Z^m -> Z^d, coordinate a = sum_{i=1..q} p^{i-1} j_{aq+i}.
Pt freiman_collapse(int64_t p, int q, int d, const std::vector<int64_t>& j);

/// Exhaustive injectivity of F on [0,p-1]^m onto [0, p^q-1]^d.
bool freiman_bijective_check(int64_t p, int q, int d);

/// Gamma_1 f (j) = 1_{[-p,2p-1]^m}(j) phi(tau_{3p} j) f(tau_p j) as a sparse
/// rational measure on Z^m, for rational-valued f given by a support map.
SparseMeasure gamma1_apply(int64_t p, int q, int d, const SparseMeasure& f_on_zpm);

/// Gamma_2: sum over fibers of F, Z^m -> Z^d.
SparseMeasure gamma2_apply(int64_t p, int q, int d, const SparseMeasure& g_on_zm);

/// mu''' = Gamma_2 Gamma_1 mu' computed exactly (p 3^m support).
SparseMeasure mu_triple(int64_t p, int q, int d);
/// nu''' l1 norm via per-axis factorization (exact rational).
Rat nu_triple_l1(int64_t p, int q, int d);

/// pointwise check mu'''(n) >= p^{-m} on the collapsed curve S-bar
bool mu_triple_majorizes(int64_t p, int q, int d);

struct FourierIdentityReport {
    double max_gap = 0;  // sup over sampled theta of |Gamma2Gamma1 f^ - reindexed Gamma1 f^|
    int samples = 0;
};

/// Verifies Gamma_2 Gamma_1 f^(theta) = Gamma_1 f^(theta_1, theta_1 p, ...)
/// on counter-random torus frequencies, for a counter-random complex f.
FourierIdentityReport gamma_fourier_identity(int64_t p, int q, int d, int samples, uint64_t seed);

}  // namespace sav
