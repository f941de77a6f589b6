#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace telechain {

// Couplings of the Ising-XXZ diamond chain. The dimer exchange J is the
// energy unit (k_B = 1), so J1, h and T are understood as J1/J, h/J, T/J.
struct ModelParams {
    double J = 1.0;      // intradimer XXZ exchange, energy unit
    double J1 = 0.0;     // Ising exchange between nodal and dimer spins
    double Delta = 1.0;  // XXZ anisotropy
    double h = 0.0;      // longitudinal magnetic field
};

inline void require_valid(const ModelParams& p) {
    if (!std::isfinite(p.J) || p.J == 0.0)
        throw std::invalid_argument("ModelParams: J must be finite and nonzero");
    if (!std::isfinite(p.J1)) throw std::invalid_argument("ModelParams: J1 must be finite");
    if (!std::isfinite(p.Delta)) throw std::invalid_argument("ModelParams: Delta must be finite");
    if (!std::isfinite(p.h)) throw std::invalid_argument("ModelParams: h must be finite");
}

// Classical spin-1/2 nodal sites adjacent to one dimer.
enum class IsingSpin { up, down };

constexpr double spin_value(IsingSpin s) { return s == IsingSpin::up ? 0.5 : -0.5; }

struct IsingPair {
    IsingSpin mu = IsingSpin::up;
    IsingSpin mu_prime = IsingSpin::up;

    // Everything below depends on the pair only through this sum.
    constexpr double sum() const { return spin_value(mu) + spin_value(mu_prime); }
};

inline constexpr IsingPair kPairUpUp{IsingSpin::up, IsingSpin::up};
inline constexpr IsingPair kPairDownDown{IsingSpin::down, IsingSpin::down};
inline constexpr IsingPair kPairUpDown{IsingSpin::up, IsingSpin::down};

// XXZ exchange matrix J*(S_a, S_b)_Delta in the basis {uu, ud, du, dd}.
inline Eigen::Matrix4d heisenberg_block(const ModelParams& p) {
    require_valid(p);
    const double diag = p.J * p.Delta / 4.0;
    const double flip = p.J / 2.0;
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = diag;
    m(1, 1) = -diag;
    m(2, 2) = -diag;
    m(3, 3) = diag;
    m(1, 2) = flip;
    m(2, 1) = flip;
    return m;
}

// S^z_a + S^z_b in the same basis.
inline Eigen::Matrix4d sz_sum_block() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 1.0;
    m(3, 3) = -1.0;
    return m;
}

// Exact spectrum of one dimer for a frozen nodal pair. The eigenstates
// are parameter independent: |uu>, the symmetric and antisymmetric
// combinations of |ud>, |du>, and |dd>, in that order.
struct DimerSpectrum {
    std::array<double, 4> energies{};  // polarized-up, triplet, singlet, polarized-down

    // Columns are the four eigenvectors in the {uu, ud, du, dd} basis.
    static const Eigen::Matrix4d& states() {
        static const Eigen::Matrix4d s = [] {
            const double r = 1.0 / std::sqrt(2.0);
            Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
            m(0, 0) = 1.0;
            m(1, 1) = r;
            m(2, 1) = r;
            m(1, 2) = r;
            m(2, 2) = -r;
            m(3, 3) = 1.0;
            return m;
        }();
        return s;
    }
};

inline std::array<double, 4> dimer_energies(const ModelParams& p, IsingPair pair) {
    const double m = pair.sum();
    const double zz = p.J * p.Delta / 4.0;
    return {
        zz + (p.J1 - p.h / 2.0) * m - p.h,
        p.J / 2.0 - zz - (p.h / 2.0) * m,
        -p.J / 2.0 - zz - (p.h / 2.0) * m,
        zz - (p.J1 + p.h / 2.0) * m + p.h,
    };
}

inline DimerSpectrum dimer_spectrum(const ModelParams& p, IsingPair pair) {
    require_valid(p);
    return DimerSpectrum{dimer_energies(p, pair)};
}

inline void require_valid_beta(double beta) {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::invalid_argument("beta must be finite and positive, got " +
                                    std::to_string(beta));
}

namespace detail {

// exp(-beta*(e_i - shift)) for the four levels, summed smallest term
// first. The fixed ascending order keeps parameter points that share a
// level multiset (e.g. the two polarized nodal sectors at h = 0) bitwise
// identical, which the transfer-matrix ratios rely on.
inline double shifted_level_sum(const std::array<double, 4>& energies, double beta,
                                double shift) {
    std::array<double, 4> terms;
    for (int i = 0; i < 4; ++i) terms[i] = std::exp(-beta * (energies[i] - shift));
    std::sort(terms.begin(), terms.end());
    return terms[0] + terms[1] + terms[2] + terms[3];
}

}  // namespace detail

// Partition function of one dimer at inverse temperature beta for a
// frozen nodal pair. Computed around the sector minimum, so the result
// only over/underflows when the true value leaves the double range.
inline double boltzmann_weight(const ModelParams& p, double beta, IsingPair pair) {
    require_valid(p);
    require_valid_beta(beta);
    const auto e = dimer_energies(p, pair);
    const double emin = *std::min_element(e.begin(), e.end());
    return std::exp(-beta * emin) * detail::shifted_level_sum(e, beta, emin);
}

}  // namespace telechain
