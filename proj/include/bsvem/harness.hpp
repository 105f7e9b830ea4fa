#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "bsvem/mesh.hpp"
#include "bsvem/problem.hpp"

namespace bsvem {

struct ConvergenceRow {
  int level = 0;         ///< Grid subdivisions per axis.
  int bulk_dofs = 0;
  int surface_dofs = 0;
  double h = 0.0;
  double error = 0.0;    ///< Combined L2 error of the solved pair.
  double eoc = 0.0;      ///< NaN on the first row.
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

/// Rate log(e_coarse/e_fine) / log(h_coarse/h_fine).
double estimated_order(double h_coarse, double e_coarse, double h_fine,
                       double e_fine);

/// Meshes, assembles and solves the problem at each level (ascending, at
/// least two) and measures the combined error. Throws SolverError when the
/// iteration does not converge at some level.
ConvergenceReport run_convergence(const ManufacturedProblem& problem,
                                  const std::vector<int>& levels,
                                  double tol = 1e-10);

/// Serializes as "i,N,M,h,error,eoc,assembly_s,solve_s" rows with 6
/// significant digits; the first eoc entry is left blank.
std::string to_csv(const ConvergenceReport& report);

/// Parses the format produced by to_csv; blank eoc becomes NaN.
/// Throws FormatError on malformed input.
ConvergenceReport parse_csv(const std::string& text);

/// Writes to_csv output to the given path; throws FormatError on failure.
void write_csv(const ConvergenceReport& report, const std::string& path);

struct BenchReport {
  int total_cells = 0;
  int cube_cells = 0;       ///< Cells served from the cube cache.
  int distinct_builds = 0;  ///< Local constructions with the cache enabled.
  double cached_seconds = 0.0;
  double uncached_seconds = 0.0;
  double speedup = 0.0;     ///< uncached_seconds / cached_seconds.
};

/// Assembles the mesh twice, with and without the cube cache, and reports
/// the build counts and wall times.
BenchReport bench_assembly(const PolyMesh& mesh);

/// Writes a legacy ASCII VTK unstructured grid with polyhedral face-stream
/// cells and one scalar point field per entry. Fields of surface length are
/// padded with NaN on interior vertices. Field validation (length must equal
/// the bulk or surface dof count, names must be non-empty without whitespace)
/// happens before anything is written; violations throw FormatError.
void export_vtk(const PolyMesh& mesh,
                const std::vector<std::pair<std::string, Eigen::VectorXd>>& fields,
                const std::string& path);

}  // namespace bsvem
