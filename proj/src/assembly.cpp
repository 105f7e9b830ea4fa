#include "bsvem/assembly.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "bsvem/exceptions.hpp"

namespace bsvem {

namespace {

bool cube_candidate(const PolyMesh& mesh, int c) {
  const std::vector<int>& refs = mesh.cells[static_cast<std::size_t>(c)];
  if (refs.size() != 6) return false;
  for (int ref : refs)
    if (mesh.faces[static_cast<std::size_t>(PolyMesh::face_of(ref))].size() != 4)
      return false;
  return true;
}

int local_index(const std::vector<int>& ascending_ids, int global) {
  const auto it = std::lower_bound(ascending_ids.begin(), ascending_ids.end(), global);
  return static_cast<int>(it - ascending_ids.begin());
}

template <typename Fn>
auto with_context(const std::string& ctx, Fn&& fn) {
  try {
    return fn();
  } catch (const SingularProjectorError& e) {
    throw SingularProjectorError(ctx + e.what());
  } catch (const DegenerateFaceError& e) {
    throw DegenerateFaceError(ctx + e.what());
  } catch (const DegenerateCellError& e) {
    throw DegenerateCellError(ctx + e.what());
  } catch (const OpenCellError& e) {
    throw OpenCellError(ctx + e.what());
  } catch (const Error& e) {
    throw Error(ctx + e.what());
  }
}

void scatter(const Eigen::MatrixXd& local, const std::vector<int>& ids,
             std::vector<Triplet>& triplets) {
  const int n = static_cast<int>(ids.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      triplets.push_back(Triplet{ids[static_cast<std::size_t>(i)],
                                 ids[static_cast<std::size_t>(j)], local(i, j)});
}

void scatter_permuted(const Eigen::MatrixXd& local, const std::array<int, 8>& perm,
                      const std::vector<int>& ids, std::vector<Triplet>& triplets) {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      triplets.push_back(Triplet{ids[static_cast<std::size_t>(i)],
                                 ids[static_cast<std::size_t>(j)],
                                 local(perm[static_cast<std::size_t>(i)],
                                       perm[static_cast<std::size_t>(j)])});
}

}  // namespace

GlobalMatrices assemble_global(const PolyMesh& mesh, CubeCache& cache,
                               const AssemblyOptions& options) {
  GlobalMatrices out;
  out.bulk_dofs = static_cast<int>(mesh.vertices.size());
  out.surface_dofs = mesh.num_boundary_nodes;
  const int builds_before = cache.build_count();

  std::vector<std::unique_ptr<FaceOperators>> face_ops(mesh.faces.size());
  auto get_face_ops = [&](int f) -> const FaceOperators& {
    auto& slot = face_ops[static_cast<std::size_t>(f)];
    if (!slot) {
      const std::vector<int>& loop = mesh.faces[static_cast<std::size_t>(f)];
      std::vector<Eigen::Vector3d> pts;
      pts.reserve(loop.size());
      for (int v : loop) pts.push_back(mesh.vertices[static_cast<std::size_t>(v)]);
      with_context("face " + std::to_string(f) + ": ", [&] {
        slot = std::make_unique<FaceOperators>(build_face_operators(pts));
      });
    }
    return *slot;
  };

  std::vector<Triplet> bulk_k;
  std::vector<Triplet> bulk_m;
  int direct_builds = 0;

  for (int c = 0; c < static_cast<int>(mesh.cells.size()); ++c) {
    const std::vector<int> ids = mesh.cell_vertex_ids(c);
    std::vector<Eigen::Vector3d> points;
    points.reserve(ids.size());
    for (int v : ids) points.push_back(mesh.vertices[static_cast<std::size_t>(v)]);

    double side = 0.0;
    std::array<int, 8> perm{};
    if (options.use_cube_cache && cube_candidate(mesh, c) &&
        detect_cube(points, side, perm)) {
      const CellOperators& ops = cache.get(side);
      scatter_permuted(ops.stiffness, perm, ids, bulk_k);
      scatter_permuted(ops.mass, perm, ids, bulk_m);
      out.domain_volume += ops.geom.volume;
      ++out.cube_cells;
      continue;
    }

    const std::vector<int>& refs = mesh.cells[static_cast<std::size_t>(c)];
    std::vector<CellFace> faces;
    faces.reserve(refs.size());
    for (int ref : refs) {
      const int f = PolyMesh::face_of(ref);
      const FaceOperators& ops = get_face_ops(f);
      const std::vector<int>& loop = mesh.faces[static_cast<std::size_t>(f)];
      std::vector<int> dofs(loop.size());
      for (std::size_t j = 0; j < loop.size(); ++j)
        dofs[j] = local_index(ids, loop[j]);
      faces.push_back(CellFace{&ops, std::move(dofs),
                               PolyMesh::is_reversed(ref) ? -1.0 : 1.0});
    }
    const CellOperators ops = with_context(
        "cell " + std::to_string(c) + ": ",
        [&] { return build_cell_operators(points, faces); });
    ++direct_builds;
    scatter(ops.stiffness, ids, bulk_k);
    scatter(ops.mass, ids, bulk_m);
    out.domain_volume += ops.geom.volume;
  }

  std::vector<Triplet> surf_k;
  std::vector<Triplet> surf_m;
  for (int f : mesh.boundary_faces) {
    const FaceOperators& ops = get_face_ops(f);
    const std::vector<int>& loop = mesh.faces[static_cast<std::size_t>(f)];
    for (int v : loop)
      if (v >= out.surface_dofs)
        throw InvalidArgumentError("boundary face " + std::to_string(f) +
                                   " touches an interior vertex; numbering is not boundary-first");
    scatter(ops.stiffness, loop, surf_k);
    scatter(ops.mass, loop, surf_m);
    out.surface_area += ops.geom.area;
  }

  out.cell_builds = direct_builds + (cache.build_count() - builds_before);
  out.bulk_stiffness = SparseCsr::from_triplets(out.bulk_dofs, out.bulk_dofs, bulk_k);
  out.bulk_mass = SparseCsr::from_triplets(out.bulk_dofs, out.bulk_dofs, bulk_m);
  out.surface_stiffness =
      SparseCsr::from_triplets(out.surface_dofs, out.surface_dofs, surf_k);
  out.surface_mass =
      SparseCsr::from_triplets(out.surface_dofs, out.surface_dofs, surf_m);
  return out;
}

}  // namespace bsvem
