#include "sav/smoothing.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sav {

Rat trapezoid_phi(int64_t p, int64_t n) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("trapezoid_phi: odd p >= 3 required");
    if (n < -p || n > 2 * p - 1) throw std::invalid_argument("trapezoid_phi: n outside [-p, 2p-1]");
    const int64_t lz = (-p - 1) / 2;       // left zero end
    const int64_t rz = 3 * (p - 1) / 2;    // right zero start
    if (n >= 0 && n <= p - 1) return 1;
    if (n <= lz || n >= rz) return 0;
    if (n < 0) return Rat(2 * n + p + 1, p + 1);       // ramp (-(p+1)/2, 0)
    return Rat(3 * (p - 1) - 2 * n, p - 1);            // ramp (p-1, (3/2)(p-1))
}

PsiL1Report smoothing_psi_l1(int64_t p, double eta) {
    PsiL1Report rep;
    rep.p = p;
    rep.eta = eta;
    const int64_t n3 = 3 * p;
    std::vector<std::complex<double>> Phi(n3);
    for (int64_t j = -p; j <= 2 * p - 1; ++j) {
        double ph = 2.0 * std::numbers::pi * eta * (double)j;
        Phi[j + p] = to_double(trapezoid_phi(p, j)) * std::complex<double>{std::cos(ph), std::sin(ph)};
    }
    double l1 = 0;
    for (int64_t xi = 0; xi < n3; ++xi) {
        std::complex<double> s{0, 0};
        for (int64_t j = -p; j <= 2 * p - 1; ++j) {
            double a = 2.0 * std::numbers::pi * (double)j * (double)xi / (double)n3;
            s += Phi[j + p] * std::complex<double>{std::cos(a), std::sin(a)};
        }
        double mag = std::abs(s);
        if (xi == 0) rep.xi0_term = mag;
        l1 += mag;
    }
    rep.psi_hat_l1 = l1;
    rep.ratio_to_p = l1 / (double)p;
    double d2 = 0;
    for (int64_t j = 0; j < n3; ++j) {
        std::complex<double> v = Phi[(j + 2) % n3] - 2.0 * Phi[(j + 1) % n3] + Phi[j];
        d2 += std::abs(v);
    }
    rep.delta2_phi_l1 = d2;
    double geom = 0;
    for (int64_t xi = 1; xi < n3; ++xi) {
        double a = 2.0 * std::numbers::pi * (double)xi / (double)n3;
        std::complex<double> e{std::cos(a) - 1.0, std::sin(a)};
        geom += 1.0 / std::norm(e);
    }
    rep.geom_factor = geom;
    return rep;
}

}  // namespace sav
