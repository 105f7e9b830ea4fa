#pragma once

#include "bsvem/cell_ops.hpp"
#include "bsvem/csr.hpp"
#include "bsvem/mesh.hpp"

namespace bsvem {

/// Global stiffness and mass matrices of the bulk space (N vertex dofs) and of
/// the surface space (first M dofs, attached to the boundary faces).
struct GlobalMatrices {
  SparseCsr bulk_stiffness;
  SparseCsr bulk_mass;
  SparseCsr surface_stiffness;
  SparseCsr surface_mass;
  int bulk_dofs = 0;
  int surface_dofs = 0;
  int cell_builds = 0;  ///< Distinct local cell-operator constructions.
  int cube_cells = 0;   ///< Cells served from the cube cache by permutation.
  double domain_volume = 0.0;
  double surface_area = 0.0;
};

struct AssemblyOptions {
  bool use_cube_cache = true;  ///< Off forces a direct build for every cell.
};

/// Assembles the four global matrices by looping over cells and boundary
/// faces in index order; equal inputs give bitwise-identical matrices.
/// Axis-aligned cube cells share one local build through the caller-owned
/// cache.
///
/// Cells must carry boundary-first vertex numbering; local failures propagate
/// with the offending cell or face id attached to the message.
GlobalMatrices assemble_global(const PolyMesh& mesh, CubeCache& cache,
                               const AssemblyOptions& options = {});

}  // namespace bsvem
