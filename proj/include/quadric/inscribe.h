#pragma once

// Explicit polyhedra inscribed in the sphere, the one-sheeted hyperboloid or
// the cylinder, their verification and OBJ / JSON export.

#include "quadric/ads.h"
#include "quadric/graph.h"
#include "quadric/hp.h"

#include <complex>
#include <string>
#include <vector>

namespace quadric {

enum class Quadric { Sphere, Hyperboloid, Cylinder };

const char* quadric_name(Quadric q);
Quadric quadric_from_name(const std::string& name);
// x1^2 + x2^2 + x3^2, x1^2 + x2^2 - x3^2 or x1^2 + x2^2; the solid is where it is below 1.
double quadric_value(Quadric q, const AffinePoint3& x);

struct InscribedMesh {
  Quadric quadric = Quadric::Sphere;
  std::vector<AffinePoint3> vertices;
  std::vector<std::vector<int>> faces; // counterclockwise seen from outside
  std::string provenance;

  bool operator==(const InscribedMesh& o) const;
};

// Faces are those of g, oriented outward.
InscribedMesh inscribe(const AdSPolyhedron& P, const EquatorGraph& g);
InscribedMesh inscribe(const HPPolyhedron& P, const EquatorGraph& g);
// Ideal points of hyperbolic space given on the Riemann sphere; faces from the hull.
InscribedMesh inscribe_sphere(const std::vector<std::complex<double>>& points);

struct InscriptionReport {
  double quadric_residual = 0.0; // max |q(v) - 1|
  bool convex = false;           // exact orientation tests
  double convexity_margin = 0.0; // smallest scaled distance of a vertex below a face plane
  double midpoint_margin = 0.0;  // smallest 1 - q(midpoint) over vertex pairs
  bool quadric_ok = false;
  bool midpoints_ok = false;
  bool ok() const { return quadric_ok && convex && midpoints_ok; }
};
InscriptionReport verify_inscribed(const InscribedMesh& mesh, double quadric_tol = 1e-10);
// Verifies meshes in parallel; QUADRIC_INSCRIBE_THREADS caps the thread count.
std::vector<InscriptionReport> verify_all(const std::vector<InscribedMesh>& meshes,
                                          double quadric_tol = 1e-10);
int inscribe_thread_limit();

std::string export_obj(const InscribedMesh& mesh);
std::string export_json(const InscribedMesh& mesh);
// Quadric and provenance travel as "# quadric" and "# provenance" comments in OBJ.
InscribedMesh import_obj(const std::string& text);
InscribedMesh import_json(const std::string& text);

} // namespace quadric
