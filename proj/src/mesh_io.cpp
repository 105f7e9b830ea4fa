#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "bsvem/exceptions.hpp"
#include "bsvem/mesh.hpp"

namespace bsvem {

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void append_int_array(std::string& out, const std::vector<int>& a) {
  out += '[';
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a[i]);
  }
  out += ']';
}

}  // namespace

void save_mesh(const PolyMesh& mesh, const std::string& path) {
  std::string out;
  out.reserve(mesh.vertices.size() * 70);
  out += "{\n\"vertices\": [\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    out += '[';
    append_double(out, mesh.vertices[i].x());
    out += ',';
    append_double(out, mesh.vertices[i].y());
    out += ',';
    append_double(out, mesh.vertices[i].z());
    out += i + 1 < mesh.vertices.size() ? "],\n" : "]\n";
  }
  out += "],\n\"faces\": [\n";
  for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
    append_int_array(out, mesh.faces[i]);
    out += i + 1 < mesh.faces.size() ? ",\n" : "\n";
  }
  out += "],\n\"cells\": [\n";
  for (std::size_t i = 0; i < mesh.cells.size(); ++i) {
    append_int_array(out, mesh.cells[i]);
    out += i + 1 < mesh.cells.size() ? ",\n" : "\n";
  }
  out += "],\n\"num_boundary_nodes\": " + std::to_string(mesh.num_boundary_nodes);
  out += ",\n\"boundary_faces\": ";
  append_int_array(out, mesh.boundary_faces);
  out += ",\n\"nominal_h\": ";
  append_double(out, mesh.nominal_h);
  out += "\n}\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open '" + path + "' for writing");
  f << out;
  if (!f) throw FormatError("failed writing '" + path + "'");
}

PolyMesh load_mesh(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid mesh JSON: " + std::string(e.what()));
  }

  PolyMesh mesh;
  try {
    for (const auto& v : j.at("vertices")) {
      if (!v.is_array() || v.size() != 3) throw FormatError("vertex is not a 3-array");
      mesh.vertices.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
    }
    for (const auto& loop : j.at("faces")) mesh.faces.push_back(loop.get<std::vector<int>>());
    for (const auto& refs : j.at("cells")) mesh.cells.push_back(refs.get<std::vector<int>>());
    mesh.num_boundary_nodes = j.at("num_boundary_nodes").get<int>();
    mesh.boundary_faces = j.at("boundary_faces").get<std::vector<int>>();
    mesh.nominal_h = j.value("nominal_h", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid mesh JSON: " + std::string(e.what()));
  }

  try {
    validate_mesh(mesh);
  } catch (const InvalidArgumentError& e) {
    // Structural inconsistencies in a file are format errors to the caller.
    throw FormatError(std::string("invalid mesh: ") + e.what());
  }
  return mesh;
}

}  // namespace bsvem
