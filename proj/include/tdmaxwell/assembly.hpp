#pragma once

#include "tdmaxwell/boundary.hpp"
#include "tdmaxwell/mesh.hpp"
#include "tdmaxwell/sparse.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace tdmaxwell {

inline constexpr double kEpsilon0 = 8.8541878128e-12; // F/m
inline constexpr double kMu0 = 1.25663706212e-6;      // H/m

/// sigma(T) = sigma0 / (1 + alpha (T - T0))
struct ThermalLaw {
  double sigma0 = 0.0;
  double alpha = 0.0;
  double t0 = 20.0;
};

struct Material {
  double sigma = 0.0; ///< S/m
  double eps = kEpsilon0;
  double nu = 1.0 / kMu0;
  std::optional<ThermalLaw> thermal;
};

/// Material per region id.
using MaterialSpec = std::map<int, Material>;

/// Piecewise-constant material fields, one value per cell.
struct CellFields {
  std::vector<double> sigma;
  std::vector<double> eps;
  std::vector<double> nu;
};

/// Throws ConfigError for a region without material or invalid values
/// (eps <= 0, nu <= 0, sigma < 0).
CellFields cell_fields(const Mesh &mesh, const MaterialSpec &materials);

// Global matrices over all mesh entities (no boundary elimination).
SparseMatrix assemble_stiff_grad(const Mesh &mesh, std::span<const double> coeff);
SparseMatrix assemble_grad_coupling(const Mesh &mesh, std::span<const double> coeff);
SparseMatrix assemble_mass_curl(const Mesh &mesh, std::span<const double> coeff);
SparseMatrix assemble_curlcurl(const Mesh &mesh, std::span<const double> coeff);

/// Operators of the semi-discrete two-step system restricted to free DOFs.
struct AssembledOperators {
  // node x node over all nodes (used for losses and the Dirichlet lift)
  SparseMatrix k_sigma_full, k_eps_full;
  // free-node rows: columns free nodes (ff) and Dirichlet nodes (fd)
  SparseMatrix k_sigma_ff, k_sigma_fd, k_eps_ff, k_eps_fd;
  // free edges x all nodes
  SparseMatrix g_sigma, g_eps;
  // free edges x free edges
  SparseMatrix m_sigma, m_eps, k_nu;
};

AssembledOperators build_operators(const Mesh &mesh, const DofMap &dofs,
                                   const CellFields &fields);

/// Re-assembles only the conductivity-dependent operators.
void refresh_conductivity(AssembledOperators &ops, const Mesh &mesh, const DofMap &dofs,
                          std::span<const double> sigma);

} // namespace tdmaxwell
