#include <CLI11.hpp>
#include <Eigen/Dense>
#include <cstdio>
#include <string>
#include <vector>

#include "bsvem/assembly.hpp"
#include "bsvem/error_norms.hpp"
#include "bsvem/exceptions.hpp"
#include "bsvem/harness.hpp"
#include "bsvem/mesh.hpp"
#include "bsvem/problem.hpp"
#include "bsvem/system.hpp"

namespace {

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      const int value = std::stoi(item, &used);
      if (used != item.size() || value <= 0)
        throw std::invalid_argument(item);
      levels.push_back(value);
    } catch (const std::exception&) {
      throw bsvem::InvalidArgumentError(
          "--levels must be a comma-separated list of positive integers, got \"" +
          text + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return levels;
}

void run_mesh(const std::string& domain_name, int n,
              const std::string& out_path) {
  const bsvem::LevelSetDomain domain = bsvem::LevelSetDomain::named(domain_name);
  const bsvem::PolyMesh mesh = bsvem::generate_cut_extrude(domain, n);
  const bsvem::QualityReport q = bsvem::check_regularity(mesh);
  bsvem::save_mesh(mesh, out_path);
  std::printf("mesh: domain=%s n=%d\n", domain_name.c_str(), n);
  std::printf("  vertices=%d (boundary %d) faces=%d cells=%d\n",
              q.num_vertices, q.num_boundary_nodes, q.num_faces, q.num_cells);
  std::printf("  h=%.6g h_max=%.6g gamma1=%.4g gamma2=%.4g\n", q.h_reported,
              q.h_max, q.gamma1_observed, q.gamma2_observed);
  std::printf("  wrote %s\n", out_path.c_str());
}

void run_solve(const std::string& mesh_path, const std::string& problem_name,
               double tol, const std::string& vtk_path) {
  const bsvem::PolyMesh mesh = bsvem::load_mesh(mesh_path);
  const bsvem::ManufacturedProblem problem =
      bsvem::problem_by_name(problem_name);

  bsvem::CubeCache cache;
  const bsvem::GlobalMatrices gm = bsvem::assemble_global(mesh, cache);

  Eigen::VectorXd f(gm.bulk_dofs);
  for (int i = 0; i < gm.bulk_dofs; ++i)
    f[i] = problem.f(mesh.vertices[static_cast<std::size_t>(i)]);
  Eigen::VectorXd g(gm.surface_dofs);
  for (int i = 0; i < gm.surface_dofs; ++i)
    g[i] = problem.g(mesh.vertices[static_cast<std::size_t>(i)]);

  const bsvem::CoupledSystem sys =
      bsvem::build_coupled_system(gm, problem.alpha, problem.beta, f, g);
  const bsvem::CoupledSolution sol = bsvem::solve_coupled_system(sys, tol);
  if (!sol.stats.converged)
    throw bsvem::SolverError(
        "solve did not converge: relative residual " +
        std::to_string(sol.stats.relative_residual) + " after " +
        std::to_string(sol.stats.iterations) + " iterations");

  const bsvem::ErrorNorms err =
      bsvem::compute_error(mesh, sol.bulk, sol.surface, problem);

  std::printf("solve: problem=%s N=%d M=%d h=%.6g\n", problem.name.c_str(),
              gm.bulk_dofs, gm.surface_dofs, mesh.nominal_h);
  std::printf("  cg iterations=%d residual=%.3e time=%.3gs\n",
              sol.stats.iterations, sol.stats.relative_residual,
              sol.stats.seconds);
  std::printf("  error bulk=%.6e surface=%.6e combined=%.6e\n", err.bulk,
              err.surface, err.combined);

  if (!vtk_path.empty()) {
    bsvem::export_vtk(mesh, {{"u", sol.bulk}, {"v", sol.surface}}, vtk_path);
    std::printf("  wrote %s\n", vtk_path.c_str());
  }
}

void run_converge(const std::string& problem_name,
                  const std::string& levels_text,
                  const std::string& csv_path) {
  const bsvem::ManufacturedProblem problem =
      bsvem::problem_by_name(problem_name);
  const std::vector<int> levels = parse_levels(levels_text);
  const bsvem::ConvergenceReport report =
      bsvem::run_convergence(problem, levels);
  std::fputs(bsvem::to_csv(report).c_str(), stdout);
  if (!csv_path.empty()) {
    bsvem::write_csv(report, csv_path);
    std::printf("wrote %s\n", csv_path.c_str());
  }
}

void run_bench(const std::string& domain_name, int n) {
  const bsvem::LevelSetDomain domain = bsvem::LevelSetDomain::named(domain_name);
  const bsvem::PolyMesh mesh = bsvem::generate_cut_extrude(domain, n);
  const bsvem::BenchReport report = bsvem::bench_assembly(mesh);
  std::printf("bench: domain=%s n=%d\n", domain_name.c_str(), n);
  std::printf("  cells=%d cube_cells=%d distinct_builds=%d\n",
              report.total_cells, report.cube_cells, report.distinct_builds);
  std::printf("  cached=%.4gs uncached=%.4gs speedup=%.3g\n",
              report.cached_seconds, report.uncached_seconds, report.speedup);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bulk-surface virtual element solver"};
  app.require_subcommand(1);

  std::string mesh_domain = "sphere";
  int mesh_n = 10;
  std::string mesh_out;
  CLI::App* mesh_cmd =
      app.add_subcommand("mesh", "Generate a polyhedral mesh of an implicit domain");
  mesh_cmd->add_option("--domain", mesh_domain, "Domain name (sphere, cube)")
      ->capture_default_str();
  mesh_cmd->add_option("--n", mesh_n, "Grid subdivisions per axis")->required();
  mesh_cmd->add_option("--out", mesh_out, "Output mesh path")->required();

  std::string solve_mesh;
  std::string solve_problem = "sphere";
  double solve_tol = 1e-10;
  std::string solve_vtk;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Assemble and solve the coupled problem");
  solve_cmd->add_option("--mesh", solve_mesh, "Mesh file")->required();
  solve_cmd->add_option("--problem", solve_problem, "Problem name")
      ->capture_default_str();
  solve_cmd->add_option("--tol", solve_tol, "Relative residual tolerance")
      ->capture_default_str();
  solve_cmd->add_option("--vtk", solve_vtk, "Write fields to this VTK file");

  std::string conv_problem = "sphere";
  std::string conv_levels = "5,10,15,20";
  std::string conv_csv;
  CLI::App* conv_cmd = app.add_subcommand(
      "converge", "Run a mesh refinement study and report errors");
  conv_cmd->add_option("--problem", conv_problem, "Problem name")
      ->capture_default_str();
  conv_cmd->add_option("--levels", conv_levels, "Comma-separated grid levels")
      ->capture_default_str();
  conv_cmd->add_option("--csv", conv_csv, "Write the report to this file");

  std::string bench_domain = "sphere";
  int bench_n = 10;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Time assembly with and without the cube cache");
  bench_cmd->add_option("--domain", bench_domain, "Domain name")
      ->capture_default_str();
  bench_cmd->add_option("--n", bench_n, "Grid subdivisions per axis")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (mesh_cmd->parsed()) run_mesh(mesh_domain, mesh_n, mesh_out);
    if (solve_cmd->parsed()) run_solve(solve_mesh, solve_problem, solve_tol, solve_vtk);
    if (conv_cmd->parsed()) run_converge(conv_problem, conv_levels, conv_csv);
    if (bench_cmd->parsed()) run_bench(bench_domain, bench_n);
  } catch (const bsvem::SolverError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const bsvem::SingularProjectorError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const bsvem::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
