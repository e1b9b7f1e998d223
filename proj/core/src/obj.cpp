#include "sightline/obj.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "sightline/error.hpp"

namespace sightline {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("obj line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& token, std::size_t line) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) fail(line, "bad number '" + token + "'");
  return value;
}

std::uint32_t parse_index(const std::string& token, std::size_t vertex_count, std::size_t line) {
  const auto slash = token.find('/');
  const std::string head = token.substr(0, slash);
  long long value = 0;
  const auto* end = head.data() + head.size();
  const auto [ptr, ec] = std::from_chars(head.data(), end, value);
  if (ec != std::errc{} || ptr != end) fail(line, "bad face index '" + token + "'");
  if (value < 1 || static_cast<std::size_t>(value) > vertex_count)
    fail(line, "face index " + head + " out of range (1.." + std::to_string(vertex_count) + ")");
  return static_cast<std::uint32_t>(value - 1);
}

}  // namespace

ObjImport read_obj(std::istream& in, Owner owner) {
  ObjImport result;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::string tag;
    if (!(line >> tag)) continue;
    if (tag == "v") {
      std::string xs, ys, zs;
      if (!(line >> xs >> ys >> zs)) fail(line_no, "vertex needs three coordinates");
      result.mesh.add_vertex(
          {parse_double(xs, line_no), parse_double(ys, line_no), parse_double(zs, line_no)});
    } else if (tag == "f") {
      std::vector<std::uint32_t> poly;
      std::string tok;
      while (line >> tok) poly.push_back(parse_index(tok, result.mesh.vertex_count(), line_no));
      if (poly.size() < 3) fail(line_no, "face needs at least three vertices");
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        const auto verts = result.mesh.vertices();
        if (triangle_area(verts[poly[0]], verts[poly[k]], verts[poly[k + 1]]) <=
            kMinTriangleArea) {
          ++result.dropped_degenerate;
          continue;
        }
        result.mesh.add_triangle(poly[0], poly[k], poly[k + 1], owner);
      }
    }
  }
  return result;
}

ObjImport read_obj_file(const std::filesystem::path& path, Owner owner) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file " + path.string());
  return read_obj(in, owner);
}

void write_obj(std::ostream& out, const TriMesh& mesh) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  for (const auto& v : mesh.vertices()) buf << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
  for (const auto& t : mesh.triangles())
    buf << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  out << buf.str();
}

}  // namespace sightline
