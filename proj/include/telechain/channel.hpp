#pragma once

#include <telechain/model.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace telechain {

// Two-qubit density operator of X form with equal inner diagonal entries
// and a real inner coherence: diag(r11, r22, r22, r44) plus r23 on the
// (ud, du) pair. Covers both the unnormalized local dimer operator and
// the normalized channel state; the flag records which one it is.
struct XStateDensity {
    double r11 = 0.0;
    double r22 = 0.0;
    double r23 = 0.0;
    double r44 = 0.0;
    bool normalized = false;

    double trace() const { return r11 + 2.0 * r22 + r44; }

    // Eigenvalues of the X form.
    std::array<double, 4> eigenvalues() const { return {r11, r22 + r23, r22 - r23, r44}; }
};

inline void require_normalized(const XStateDensity& rho, const char* where) {
    if (!rho.normalized)
        throw std::logic_error(std::string(where) + ": expected a normalized channel state");
}

// Boltzmann weights of the three nodal-spin sectors and the eigenvalues
// of the 2x2 transfer matrix built from them. The weights are stored on
// a shared exponential scale; exp(log_scale) recovers physical units.
struct TransferData {
    double w_pp = 0.0;
    double w_mm = 0.0;
    double w_pm = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double log_scale = 0.0;
};

namespace detail {

// Thermal data of the three nodal sectors, all shifted by the global
// minimum dimer energy. Every ratio formed downstream cancels the shift
// exactly, which keeps the low-temperature regime finite.
struct SectorTable {
    double beta = 0.0;
    double shift = 0.0;
    double w_pp = 0.0, w_mm = 0.0, w_pm = 0.0;
    XStateDensity rho_pp, rho_mm, rho_pm;
};

inline XStateDensity shifted_local_operator(const std::array<double, 4>& e, double beta,
                                            double shift) {
    const double b1 = std::exp(-beta * (e[0] - shift));
    const double b2 = std::exp(-beta * (e[1] - shift));
    const double b3 = std::exp(-beta * (e[2] - shift));
    const double b4 = std::exp(-beta * (e[3] - shift));
    return XStateDensity{b1, 0.5 * (b2 + b3), 0.5 * (b2 - b3), b4, false};
}

inline SectorTable make_sector_table(const ModelParams& p, double beta) {
    require_valid(p);
    require_valid_beta(beta);

    const auto e_pp = dimer_energies(p, kPairUpUp);
    const auto e_mm = dimer_energies(p, kPairDownDown);
    const auto e_pm = dimer_energies(p, kPairUpDown);

    double shift = e_pp[0];
    for (const auto& e : {e_pp, e_mm, e_pm})
        shift = std::min(shift, *std::min_element(e.begin(), e.end()));

    SectorTable t;
    t.beta = beta;
    t.shift = shift;
    t.w_pp = shifted_level_sum(e_pp, beta, shift);
    t.w_mm = shifted_level_sum(e_mm, beta, shift);
    t.w_pm = shifted_level_sum(e_pm, beta, shift);
    t.rho_pp = shifted_local_operator(e_pp, beta, shift);
    t.rho_mm = shifted_local_operator(e_mm, beta, shift);
    t.rho_pm = shifted_local_operator(e_pm, beta, shift);
    return t;
}

}  // namespace detail

// Unnormalized thermal operator of one dimer for a frozen nodal pair, in
// physical units. Its trace equals boltzmann_weight for the same inputs.
inline XStateDensity local_dimer_operator(const ModelParams& p, double beta, IsingPair pair) {
    require_valid(p);
    require_valid_beta(beta);
    return detail::shifted_local_operator(dimer_energies(p, pair), beta, 0.0);
}

inline TransferData transfer_data(const ModelParams& p, double beta) {
    const auto t = detail::make_sector_table(p, beta);
    const double split = std::hypot(t.w_pp - t.w_mm, 2.0 * t.w_pm);
    return TransferData{t.w_pp,
                        t.w_mm,
                        t.w_pm,
                        0.5 * (t.w_pp + t.w_mm + split),
                        0.5 * (t.w_pp + t.w_mm - split),
                        -beta * t.shift};
}

// Averaged dimer density operator of the infinite chain at temperature T.
// Each element mixes the three sector operators with transfer-matrix
// weights; the result has unit trace by construction.
inline XStateDensity channel_density(const ModelParams& p, double T) {
    if (!std::isfinite(T) || T <= 0.0)
        throw std::invalid_argument("channel_density: T must be finite and positive, got " +
                                    std::to_string(T));
    const auto t = detail::make_sector_table(p, 1.0 / T);

    const double split = std::hypot(t.w_pp - t.w_mm, 2.0 * t.w_pm);
    const double lambda_plus = 0.5 * (t.w_pp + t.w_mm + split);

    const auto mix = [&](double q_pp, double q_mm, double q_pm) {
        double v = 0.5 * (q_pp + q_mm);
        // A vanishing split can only happen when the two polarized
        // sectors are exactly degenerate and the mixed sector has
        // underflowed; the symmetric average is the correct limit there.
        if (split >= 1e-300)
            v += (2.0 * q_pm * t.w_pm + 0.5 * (q_pp - q_mm) * (t.w_pp - t.w_mm)) / split;
        return v / lambda_plus;
    };

    return XStateDensity{mix(t.rho_pp.r11, t.rho_mm.r11, t.rho_pm.r11),
                         mix(t.rho_pp.r22, t.rho_mm.r22, t.rho_pm.r22),
                         mix(t.rho_pp.r23, t.rho_mm.r23, t.rho_pm.r23),
                         mix(t.rho_pp.r44, t.rho_mm.r44, t.rho_pm.r44),
                         true};
}

}  // namespace telechain
