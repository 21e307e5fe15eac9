#include "quadric/inscribe.h"

#include "quadric/error.h"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace quadric {

namespace {

Eigen::Vector3d vec(const AffinePoint3& p) { return {p.x1, p.x2, p.x3}; }

// Orients each face so that its Newell normal points away from the centroid.
std::vector<std::vector<int>> outward_faces(const std::vector<AffinePoint3>& v,
                                            const std::vector<std::vector<int>>& faces) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : v) c += vec(p);
  c /= static_cast<double>(v.size());
  std::vector<std::vector<int>> out;
  for (auto f : faces) {
    Eigen::Vector3d nrm = Eigen::Vector3d::Zero(), fc = Eigen::Vector3d::Zero();
    for (size_t k = 0; k < f.size(); ++k) {
      nrm += vec(v[f[k]]).cross(vec(v[f[(k + 1) % f.size()]]));
      fc += vec(v[f[k]]);
    }
    fc /= static_cast<double>(f.size());
    if (nrm.dot(fc - c) < 0) std::reverse(f.begin(), f.end());
    out.push_back(std::move(f));
  }
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace

const char* quadric_name(Quadric q) {
  switch (q) {
  case Quadric::Sphere: return "sphere";
  case Quadric::Hyperboloid: return "hyperboloid";
  case Quadric::Cylinder: return "cylinder";
  }
  return "";
}

Quadric quadric_from_name(const std::string& name) {
  if (name == "sphere") return Quadric::Sphere;
  if (name == "hyperboloid") return Quadric::Hyperboloid;
  if (name == "cylinder") return Quadric::Cylinder;
  throw Error(ErrorKind::InvalidInput, "unknown quadric '" + name + "'");
}

double quadric_value(Quadric q, const AffinePoint3& x) {
  double r = x.x1 * x.x1 + x.x2 * x.x2;
  switch (q) {
  case Quadric::Sphere: return r + x.x3 * x.x3;
  case Quadric::Hyperboloid: return r - x.x3 * x.x3;
  case Quadric::Cylinder: return r;
  }
  return r;
}

bool InscribedMesh::operator==(const InscribedMesh& o) const {
  if (quadric != o.quadric || faces != o.faces || provenance != o.provenance ||
      vertices.size() != o.vertices.size())
    return false;
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].x1 != o.vertices[i].x1 || vertices[i].x2 != o.vertices[i].x2 ||
        vertices[i].x3 != o.vertices[i].x3)
      return false;
  return true;
}

InscribedMesh inscribe(const AdSPolyhedron& P, const EquatorGraph& g) {
  if (g.n() != P.size()) throw Error(ErrorKind::InvalidInput, "graph and polyhedron sizes differ");
  InscribedMesh m;
  m.quadric = Quadric::Hyperboloid;
  m.vertices = ads_embed(P);
  m.faces = outward_faces(m.vertices, g.plane().faces());
  // The chart of ads_embed puts the polyhedron on the solid side of the hyperboloid.
  m.provenance = "ads:n=" + std::to_string(P.size()) + ";side=solid";
  return m;
}

InscribedMesh inscribe(const HPPolyhedron& P, const EquatorGraph& g) {
  if (g.n() != P.polygon.size()) throw Error(ErrorKind::InvalidInput, "graph and polyhedron sizes differ");
  InscribedMesh m;
  m.quadric = Quadric::Cylinder;
  m.vertices = hp_embed(P);
  m.faces = outward_faces(m.vertices, g.plane().faces());
  m.provenance = "hp:n=" + std::to_string(P.polygon.size());
  return m;
}

InscribedMesh inscribe_sphere(const std::vector<std::complex<double>>& points) {
  InscribedMesh m;
  m.quadric = Quadric::Sphere;
  std::vector<Eigen::Vector3d> pts;
  for (const auto& z : points) {
    AffinePoint3 p = embed_affine(ProjPoint::from_value(GeneralizedComplex(z.real(), z.imag(), -1)));
    m.vertices.push_back(p);
    pts.push_back(vec(p));
  }
  Hull h = convex_hull(pts);
  for (const auto& f : h.faces) m.faces.push_back(f.vertices);
  m.provenance = "sphere:n=" + std::to_string(points.size());
  return m;
}

InscriptionReport verify_inscribed(const InscribedMesh& mesh, double quadric_tol) {
  InscriptionReport r;
  const auto& v = mesh.vertices;
  int n = static_cast<int>(v.size());
  for (const auto& p : v) r.quadric_residual = std::max(r.quadric_residual, std::abs(quadric_value(mesh.quadric, p) - 1.0));
  r.quadric_ok = r.quadric_residual <= quadric_tol;

  // Every vertex off a face lies strictly inside its plane (exact signs); the
  // face's own vertices are coplanar to rounding.
  r.convex = !mesh.faces.empty();
  r.convexity_margin = std::numeric_limits<double>::infinity();
  std::vector<char> used(n, 0);
  for (const auto& f : mesh.faces) {
    if (f.size() < 3) {
      r.convex = false;
      continue;
    }
    for (int i : f) used[i] = 1;
    Eigen::Vector3d a = vec(v[f[0]]), b = vec(v[f[1]]), c = vec(v[f[2]]);
    Eigen::Vector3d nrm = (b - a).cross(c - a);
    double scale = (b - a).norm() * (c - a).norm();
    for (int i = 0; i < n; ++i) {
      bool on_face = std::count(f.begin(), f.end(), i) > 0;
      double dist = nrm.dot(vec(v[i]) - a) / (scale > 0 ? scale : 1.0);
      if (on_face) {
        if (std::abs(dist) > 1e-9) r.convex = false;
        continue;
      }
      r.convexity_margin = std::min(r.convexity_margin, -dist);
      if (orient3d_exact(a, b, c, vec(v[i])) >= 0) r.convex = false;
    }
  }
  if (std::count(used.begin(), used.end(), 0)) r.convex = false;

  r.midpoint_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      AffinePoint3 m{(v[i].x1 + v[j].x1) / 2, (v[i].x2 + v[j].x2) / 2, (v[i].x3 + v[j].x3) / 2};
      r.midpoint_margin = std::min(r.midpoint_margin, 1.0 - quadric_value(mesh.quadric, m));
    }
  r.midpoints_ok = r.midpoint_margin > 0.0;
  return r;
}

int inscribe_thread_limit() {
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("QUADRIC_INSCRIBE_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) return std::min(hw, cap);
  }
  return hw;
}

std::vector<InscriptionReport> verify_all(const std::vector<InscribedMesh>& meshes, double quadric_tol) {
  std::vector<InscriptionReport> out(meshes.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < meshes.size(); i = next++) out[i] = verify_inscribed(meshes[i], quadric_tol);
  };
  int threads = std::min<int>(inscribe_thread_limit(), static_cast<int>(meshes.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

std::string export_obj(const InscribedMesh& mesh) {
  std::ostringstream os;
  os << "# quadric " << quadric_name(mesh.quadric) << "\n";
  if (!mesh.provenance.empty()) os << "# provenance " << mesh.provenance << "\n";
  for (const auto& p : mesh.vertices)
    os << "v " << format_double(p.x1) << " " << format_double(p.x2) << " " << format_double(p.x3) << "\n";
  for (const auto& f : mesh.faces) {
    os << "f";
    for (int i : f) os << " " << i + 1;
    os << "\n";
  }
  return os.str();
}

InscribedMesh import_obj(const std::string& text) {
  InscribedMesh m;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "#") {
      std::string key;
      ls >> key;
      std::string rest;
      std::getline(ls >> std::ws, rest);
      if (key == "quadric") m.quadric = quadric_from_name(rest);
      if (key == "provenance") m.provenance = rest;
    } else if (tag == "v") {
      std::string a, b, c;
      if (!(ls >> a >> b >> c))
        throw Error(ErrorKind::InvalidInput, "OBJ line " + std::to_string(lineno) + ": malformed vertex");
      m.vertices.push_back({std::strtod(a.c_str(), nullptr), std::strtod(b.c_str(), nullptr),
                            std::strtod(c.c_str(), nullptr)});
    } else if (tag == "f") {
      std::vector<int> f;
      std::string tok;
      while (ls >> tok) {
        int i = std::atoi(tok.c_str()); // "i/t/n" forms keep the leading index
        if (i < 1) throw Error(ErrorKind::InvalidInput, "OBJ line " + std::to_string(lineno) + ": bad index");
        f.push_back(i - 1);
      }
      m.faces.push_back(std::move(f));
    }
  }
  for (const auto& f : m.faces)
    for (int i : f)
      if (i >= static_cast<int>(m.vertices.size()))
        throw Error(ErrorKind::InvalidInput, "OBJ face refers to a missing vertex");
  return m;
}

std::string export_json(const InscribedMesh& mesh) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["quadric"] = quadric_name(mesh.quadric);
  j["provenance"] = mesh.provenance;
  j["vertices"] = nlohmann::json::array();
  for (const auto& p : mesh.vertices) j["vertices"].push_back({p.x1, p.x2, p.x3});
  j["faces"] = mesh.faces;
  return j.dump(2) + "\n";
}

InscribedMesh import_json(const std::string& text) {
  InscribedMesh m;
  try {
    auto j = nlohmann::json::parse(text);
    m.quadric = quadric_from_name(j.at("quadric").get<std::string>());
    m.provenance = j.value("provenance", "");
    for (const auto& v : j.at("vertices")) m.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()});
    m.faces = j.at("faces").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("mesh JSON: ") + e.what());
  }
  return m;
}

} // namespace quadric
