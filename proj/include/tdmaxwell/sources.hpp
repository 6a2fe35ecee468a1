#pragma once

#include "tdmaxwell/boundary.hpp"
#include "tdmaxwell/mesh.hpp"
#include "tdmaxwell/sparse.hpp"

#include <vector>

namespace tdmaxwell {

enum class TimeProfile { Constant, Sine };

/// Electrode voltage V1(t) = amplitude * sin(2 pi f t).
struct SineDrive {
  double amplitude = 0.0; ///< V
  double frequency = 0.0; ///< Hz
  double value(double t) const;
  double angular_frequency() const;
};

/// Uniform impressed current density inside a region.
struct ImpressedCurrent {
  int region = 0;
  Point density = Point::Zero(); ///< A/m^2
  TimeProfile profile = TimeProfile::Constant;
};

/// Uniform impressed charge-density rate inside a region.
struct ImpressedChargeRate {
  int region = 0;
  double rate = 0.0; ///< C/(m^3 s)
  TimeProfile profile = TimeProfile::Constant;
};

struct SourceSpec {
  SineDrive drive;
  std::vector<ImpressedCurrent> currents;
  std::vector<ImpressedChargeRate> charges;
};

struct SourceVectors {
  Vector qdot;       ///< per free node
  Vector j_s;        ///< per free edge
  Vector dirichlet;  ///< per Dirichlet node (0 on ground, V1(t) on the driven patch)
};

/// Throws InputError for t < 0 or a non-positive drive frequency with nonzero amplitude.
SourceVectors assemble_sources(const Mesh &mesh, const DofMap &dofs, const SourceSpec &sources,
                               double t);

/// Dirichlet values at time t.
Vector dirichlet_values(const DofMap &dofs, const SineDrive &drive, double t);

/// Scatter free and Dirichlet values into a full nodal vector.
Vector full_nodal(const DofMap &dofs, const Vector &free_values, const Vector &dirichlet);
/// Embed a free-edge vector into all edges (zero on constrained edges).
Vector full_edges(const DofMap &dofs, Index num_edges, const Vector &free_values);

} // namespace tdmaxwell
