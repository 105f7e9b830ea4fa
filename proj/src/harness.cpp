#include "bsvem/harness.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "bsvem/assembly.hpp"
#include "bsvem/error_norms.hpp"
#include "bsvem/exceptions.hpp"
#include "bsvem/system.hpp"

namespace bsvem {

namespace {

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string format_sig(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

}  // namespace

double estimated_order(double h_coarse, double e_coarse, double h_fine,
                       double e_fine) {
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

ConvergenceReport run_convergence(const ManufacturedProblem& problem,
                                  const std::vector<int>& levels, double tol) {
  if (levels.size() < 2)
    throw InvalidArgumentError("run_convergence: need at least two levels");
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    if (levels[i] >= levels[i + 1])
      throw InvalidArgumentError(
          "run_convergence: levels must be strictly ascending");

  ConvergenceReport report;
  for (int n : levels) {
    const PolyMesh mesh = generate_cut_extrude(problem.domain, n);

    const auto t_assembly = std::chrono::steady_clock::now();
    CubeCache cache;
    const GlobalMatrices gm = assemble_global(mesh, cache);
    ConvergenceRow row;
    row.assembly_seconds = seconds_since(t_assembly);

    Eigen::VectorXd f(gm.bulk_dofs);
    for (int i = 0; i < gm.bulk_dofs; ++i)
      f[i] = problem.f(mesh.vertices[static_cast<std::size_t>(i)]);
    Eigen::VectorXd g(gm.surface_dofs);
    for (int i = 0; i < gm.surface_dofs; ++i)
      g[i] = problem.g(mesh.vertices[static_cast<std::size_t>(i)]);

    const CoupledSystem sys =
        build_coupled_system(gm, problem.alpha, problem.beta, f, g);
    const auto t_solve = std::chrono::steady_clock::now();
    const CoupledSolution sol = solve_coupled_system(sys, tol);
    row.solve_seconds = seconds_since(t_solve);
    if (!sol.stats.converged)
      throw SolverError("run_convergence: no convergence at level " +
                        std::to_string(n) + " (relative residual " +
                        std::to_string(sol.stats.relative_residual) + ")");

    const ErrorNorms err = compute_error(mesh, sol.bulk, sol.surface, problem);
    row.level = n;
    row.bulk_dofs = gm.bulk_dofs;
    row.surface_dofs = gm.surface_dofs;
    row.h = mesh.nominal_h;
    row.error = err.combined;
    row.eoc = std::numeric_limits<double>::quiet_NaN();
    if (!report.rows.empty()) {
      const ConvergenceRow& prev = report.rows.back();
      row.eoc = estimated_order(prev.h, prev.error, row.h, row.error);
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string to_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "i,N,M,h,error,eoc,assembly_s,solve_s\n";
  for (const ConvergenceRow& row : report.rows) {
    out << row.level << ',' << row.bulk_dofs << ',' << row.surface_dofs << ','
        << format_sig(row.h) << ',' << format_sig(row.error) << ',';
    if (!std::isnan(row.eoc)) out << format_sig(row.eoc);
    out << ',' << format_sig(row.assembly_seconds) << ','
        << format_sig(row.solve_seconds) << '\n';
  }
  return out.str();
}

ConvergenceReport parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "i,N,M,h,error,eoc,assembly_s,solve_s")
    throw FormatError("convergence csv: missing or wrong header");

  ConvergenceReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (cells.size() != 8)
      throw FormatError("convergence csv: expected 8 columns, got " +
                        std::to_string(cells.size()));
    try {
      ConvergenceRow row;
      row.level = std::stoi(cells[0]);
      row.bulk_dofs = std::stoi(cells[1]);
      row.surface_dofs = std::stoi(cells[2]);
      row.h = std::stod(cells[3]);
      row.error = std::stod(cells[4]);
      row.eoc = cells[5].empty() ? std::numeric_limits<double>::quiet_NaN()
                                 : std::stod(cells[5]);
      row.assembly_seconds = std::stod(cells[6]);
      row.solve_seconds = std::stod(cells[7]);
      report.rows.push_back(row);
    } catch (const std::exception&) {
      throw FormatError("convergence csv: malformed row \"" + line + "\"");
    }
  }
  return report;
}

void write_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  out << to_csv(report);
  if (!out) throw FormatError("failed writing " + path);
}

BenchReport bench_assembly(const PolyMesh& mesh) {
  BenchReport report;
  report.total_cells = static_cast<int>(mesh.cells.size());

  const auto t_cached = std::chrono::steady_clock::now();
  CubeCache cache;
  const GlobalMatrices cached = assemble_global(mesh, cache);
  report.cached_seconds = seconds_since(t_cached);
  report.cube_cells = cached.cube_cells;
  report.distinct_builds = cached.cell_builds;

  const auto t_uncached = std::chrono::steady_clock::now();
  CubeCache unused;
  AssemblyOptions options;
  options.use_cube_cache = false;
  assemble_global(mesh, unused, options);
  report.uncached_seconds = seconds_since(t_uncached);

  report.speedup = report.cached_seconds > 0.0
                       ? report.uncached_seconds / report.cached_seconds
                       : 0.0;
  return report;
}

void export_vtk(
    const PolyMesh& mesh,
    const std::vector<std::pair<std::string, Eigen::VectorXd>>& fields,
    const std::string& path) {
  const int n = static_cast<int>(mesh.vertices.size());
  const int m = mesh.num_boundary_nodes;
  for (const auto& [name, values] : fields) {
    if (name.empty())
      throw FormatError("vtk field name must not be empty");
    for (char ch : name)
      if (std::isspace(static_cast<unsigned char>(ch)))
        throw FormatError("vtk field name \"" + name +
                          "\" must not contain whitespace");
    if (values.size() != n && values.size() != m)
      throw FormatError(
          "vtk field \"" + name + "\" has length " +
          std::to_string(values.size()) + "; expected " + std::to_string(n) +
          " (bulk) or " + std::to_string(m) + " (surface)");
  }

  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path + " for writing");

  char buf[96];
  out << "# vtk DataFile Version 2.0\n";
  out << "coupled bulk and surface fields\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << n << " double\n";
  for (const Eigen::Vector3d& p : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x(), p.y(),
                  p.z());
    out << buf;
  }

  std::size_t stream_ints = 0;
  for (const auto& refs : mesh.cells) {
    stream_ints += 2;  // entry length and face count
    for (int ref : refs)
      stream_ints += 1 + mesh.faces[static_cast<std::size_t>(
                             PolyMesh::face_of(ref))].size();
  }
  out << "CELLS " << mesh.cells.size() << ' ' << stream_ints << '\n';
  for (int c = 0; c < static_cast<int>(mesh.cells.size()); ++c) {
    const auto& refs = mesh.cells[static_cast<std::size_t>(c)];
    std::size_t entry = 1;
    for (int ref : refs)
      entry += 1 + mesh.faces[static_cast<std::size_t>(
                       PolyMesh::face_of(ref))].size();
    out << entry << ' ' << refs.size();
    for (int k = 0; k < static_cast<int>(refs.size()); ++k) {
      const std::vector<int> loop = mesh.oriented_face_loop(c, k);
      out << ' ' << loop.size();
      for (int v : loop) out << ' ' << v;
    }
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.cells.size() << '\n';
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) out << "42\n";

  if (!fields.empty()) {
    out << "POINT_DATA " << n << '\n';
    for (const auto& [name, values] : fields) {
      out << "SCALARS " << name << " double 1\n";
      out << "LOOKUP_TABLE default\n";
      for (int i = 0; i < n; ++i) {
        const double v = i < values.size()
                             ? values[i]
                             : std::numeric_limits<double>::quiet_NaN();
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
      }
    }
  }

  if (!out) throw FormatError("failed writing " + path);
}

}  // namespace bsvem
