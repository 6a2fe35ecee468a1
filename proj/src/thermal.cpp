#include "tdmaxwell/thermal.hpp"

#include "tdmaxwell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tdmaxwell {

double sigma_of_T(const ThermalLaw &law, double temperature) {
  const double denom = 1.0 + law.alpha * (temperature - law.t0);
  if (!(denom > 0.0) || !std::isfinite(temperature)) {
    std::ostringstream msg;
    msg << "temperature " << temperature << " degC is at or beyond the pole of sigma(T) (T0 = "
        << law.t0 << ", alpha = " << law.alpha << ")";
    throw InputError(msg.str());
  }
  return law.sigma0 / denom;
}

double eqs_loss_power(const SparseMatrix &k_sigma_full, const Vector &u_full) {
  if (k_sigma_full.cols() != u_full.size())
    throw InputError("eqs_loss_power: dimension mismatch");
  return std::max(0.0, u_full.dot(k_sigma_full * u_full));
}

double thermal_step(const ThermalLump &lump, double power, double dt) {
  if (!(lump.heat_capacity > 0.0))
    throw InputError("heat capacity must be > 0");
  if (!(dt > 0.0))
    throw InputError("thermal step needs dt > 0");
  if (power < 0.0)
    throw InputError("loss power must be nonnegative");
  return lump.temperature + dt * power / lump.heat_capacity;
}

std::vector<double> thermal_sigma(const Mesh &mesh, const CellFields &base,
                                  const ThermalLump &lump) {
  std::vector<double> sigma = base.sigma;
  const double s = sigma_of_T(lump.law, lump.temperature);
  for (Index c = 0; c < mesh.num_cells(); ++c)
    if (mesh.cell_region[static_cast<std::size_t>(c)] == lump.region)
      sigma[static_cast<std::size_t>(c)] = s;
  return sigma;
}

} // namespace tdmaxwell
