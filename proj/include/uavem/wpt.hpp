#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>

#include "uavem/errors.hpp"
#include "uavem/geometry.hpp"
#include "uavem/integrate.hpp"

namespace uavem {

/// Distributed-laser-charging link parameters. The harvested power is an
/// affine fit in the source power,
///
///   P0 = a1 a2 nu Ps + a2 b1 nu + b2,
///
/// with nu = exp(-alpha d) the transmission efficiency over distance d.
struct DlcParams {
    double a1{0.0};
    double a2{0.0};
    double b1_w{0.0};
    double b2_w{0.0};
    double sigma{0.0};              ///< scattering constant
    double chi_m{0.0};              ///< reference particle size
    double visibility_m{0.0};       ///< kappa
    double wavelength_m{0.0};       ///< lambda
    double size_distribution{0.0};  ///< rho, scattering size-distribution exponent
    Vec3 source_position_m;

    void validate() const {
        if (!(a1 * a2 > 0.0)) throw ConfigError("dlc: a1*a2 must be positive");
        if (!(visibility_m > 0.0)) throw ConfigError("dlc: visibility must be positive");
        if (!(wavelength_m > 0.0) || !(chi_m > 0.0)) {
            throw ConfigError("dlc: wavelength and particle size must be positive");
        }
        if (!source_position_m.finite()) {
            throw ConfigError("dlc: source position must be finite");
        }
    }
};

/// One observation of the link, as recorded along a trajectory.
struct HarvestSample {
    double t_s{0.0};
    double p_source_w{0.0};
    double p_harvested_w{0.0};
    double efficiency{0.0};  ///< nu at the sampled position
};

/// Laser attenuation coefficient (1/m): (sigma/kappa) (lambda/chi)^(-rho).
inline double attenuation_coeff(const DlcParams& p) {
    return (p.sigma / p.visibility_m) *
           std::pow(p.wavelength_m / p.chi_m, -p.size_distribution);
}

/// Transmission efficiency over a straight path of length `distance_m`.
inline double transmission_efficiency_at(double distance_m, const DlcParams& p) {
    return std::exp(-attenuation_coeff(p) * distance_m);
}

/// Transmission efficiency from the configured source to `uav_pos`.
inline double transmission_efficiency(const Vec3& uav_pos, const DlcParams& p) {
    return transmission_efficiency_at((uav_pos - p.source_position_m).norm(), p);
}

/// Harvested power before the physical clamp; negative at small source
/// powers because both fit offsets are negative.
inline double harvested_power_raw(double p_source_w, double nu,
                                  const DlcParams& p) {
    return p.a1 * p.a2 * nu * p_source_w + p.a2 * p.b1_w * nu + p.b2_w;
}

/// Harvested power, clamped at zero: a receiver cannot consume power.
inline double harvested_power(double p_source_w, double nu, const DlcParams& p) {
    return std::max(0.0, harvested_power_raw(p_source_w, nu, p));
}

/// Largest source power whose harvested power stays within the battery
/// charge cap `p_charge_cap_w`. Requires line of sight (nu > 0).
inline double max_source_power(double p_charge_cap_w, double nu,
                               const DlcParams& p) {
    if (!(nu > 0.0)) {
        throw InfeasibleError("max_source_power: no line of sight (nu = 0)",
                              "no-line-of-sight");
    }
    return (p_charge_cap_w - p.a2 * p.b1_w * nu - p.b2_w) / (p.a1 * p.a2 * nu);
}

/// Harvested energy over [t0, tf] for a moving receiver and time-varying
/// source power, trapezoid-integrated on the clamped harvested power.
template <typename PosFn, typename PowerFn>
    requires std::invocable<PosFn&, double> && std::invocable<PowerFn&, double>
double harvest_energy(PosFn&& position_at, PowerFn&& source_power_at,
                      const DlcParams& p, double t0, double tf,
                      double dt = 0.01) {
    if (tf < t0) throw DomainError("harvest_energy: interval end precedes its start");
    const double alpha = attenuation_coeff(p);
    auto integrand = [&](double t) {
        const double d = (position_at(t) - p.source_position_m).norm();
        return harvested_power(source_power_at(t), std::exp(-alpha * d), p);
    };
    return integrate_trapezoid(integrand, t0, tf, dt);
}

/// Static-receiver, constant-source special case.
inline double harvest_energy(const Vec3& position, double p_source_w,
                             const DlcParams& p, double t0, double tf,
                             double dt = 0.01) {
    return harvest_energy([&](double) { return position; },
                          [&](double) { return p_source_w; }, p, t0, tf, dt);
}

inline HarvestSample sample_harvest(double t_s, const Vec3& position,
                                    double p_source_w, const DlcParams& p) {
    const double nu = transmission_efficiency(position, p);
    return {t_s, p_source_w, harvested_power(p_source_w, nu, p), nu};
}

}  // namespace uavem
