#pragma once

#include "tdmaxwell/assembly.hpp"
#include "tdmaxwell/sparse.hpp"

namespace tdmaxwell {

/// Adiabatic lumped temperature of one conducting region.
struct ThermalLump {
  double temperature = 20.0;   ///< degC
  double heat_capacity = 1.0;  ///< J/K
  ThermalLaw law;
  int region = 0;
};

/// sigma0 / (1 + alpha (T - T0)). Throws InputError at or beyond the pole
/// T <= T0 - 1/alpha (alpha > 0).
double sigma_of_T(const ThermalLaw &law, double temperature);

/// u^T K_sigma u with the full (lifted) nodal vector.
double eqs_loss_power(const SparseMatrix &k_sigma_full, const Vector &u_full);

/// T + dt P / C_th. Throws InputError for C_th <= 0, dt <= 0 or P < 0.
double thermal_step(const ThermalLump &lump, double power, double dt);

/// Cell conductivities with the lump's region evaluated at its temperature.
std::vector<double> thermal_sigma(const Mesh &mesh, const CellFields &base,
                                  const ThermalLump &lump);

} // namespace tdmaxwell
