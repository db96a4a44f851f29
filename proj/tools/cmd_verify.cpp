#include <cmath>
#include <iostream>

#include "cli_common.hpp"
#include "commands.hpp"
#include "grasslearn/manifold.hpp"

namespace grasslearn::cli {

namespace {

bool check(const std::string& name, bool ok) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
  return ok;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Two hand-checked reference pairs. The first is a single line against a
// rotated line in the plane at 60 degrees; the second is a pair of planes in
// R^3 sharing one direction, with known singular values and distances.
bool run_line_example() {
  Matrix x(2, 1), y(2, 1);
  x << 1.0, 0.0;
  y << 0.5, std::sqrt(3.0) / 2.0;
  const GrassmannPoint px = GrassmannPoint::from_orthonormal(x);
  const GrassmannPoint py = GrassmannPoint::from_orthonormal(y);
  const PrincipalAngles pa = principal_angles(px, py);
  const double third_pi = M_PI / 3.0;
  bool ok = pa.angles.size() == 1 && near(pa.angles[0], third_pi, 1e-12);
  ok = ok && near(distance(DistanceMetric::ArcLength, pa), third_pi, 1e-12);
  ok = ok && near(distance(DistanceMetric::Chordal, pa), 1.0, 1e-12);
  ok = ok && near(distance(DistanceMetric::Projection, pa),
                  std::sqrt(3.0) / 2.0, 1e-12);
  return check("line pair on G(2,1): angle pi/3, distances exact to 1e-12", ok);
}

bool run_plane_example() {
  const double r2 = std::sqrt(2.0);
  Matrix x(3, 2), y(3, 2);
  x << -r2 / 2.0, -r2 / 4.0, r2 / 2.0, -r2 / 4.0, 0.0, std::sqrt(3.0) / 2.0;
  y << 0.0, r2 / 2.0, 1.0, 0.0, 0.0, r2 / 2.0;
  const GrassmannPoint px = GrassmannPoint::from_orthonormal(x);
  const GrassmannPoint py = GrassmannPoint::from_orthonormal(y);
  const PrincipalAngles pa = principal_angles(px, py);
  const Vector cosines = pa.cosines();
  // Angles ascend, so the cosines descend: (1.0, 0.07945931).
  bool ok = cosines.size() == 2 && near(cosines[0], 1.0, 5e-6) &&
            near(cosines[1], 0.07945931, 5e-6);
  ok = ok && near(distance(DistanceMetric::ArcLength, pa), 1.491253, 5e-6);
  ok = ok && near(distance(DistanceMetric::FubiniStudy, pa), 1.491253, 5e-6);
  ok = ok && near(distance(DistanceMetric::Chordal, pa), 1.356864, 5e-6);
  ok = ok && near(distance(DistanceMetric::Projection, pa), 0.996838, 5e-6);
  ok = ok && near(distance(DistanceMetric::BinetCauchy, pa), 0.996838, 5e-6);
  return check("plane pair on G(3,2): singular values and distances to 5e-6", ok);
}

bool run_inequality_sweep() {
  const std::vector<std::pair<Index, Index>> shapes = {{5, 2}, {8, 3}, {10, 4}};
  Rng rng(20260818);
  int checked = 0;
  bool ok = true;
  for (const auto& [n, k] : shapes) {
    for (int trial = 0; trial < 1000; ++trial) {
      const GrassmannPoint a = random_point(n, k, rng);
      const GrassmannPoint b = random_point(n, k, rng);
      const PrincipalAngles pa = principal_angles(a, b);
      const double d_arc = distance(DistanceMetric::ArcLength, pa);
      const double d_chord = distance(DistanceMetric::Chordal, pa);
      const double d_proj = distance(DistanceMetric::Projection, pa);
      const double d_fs = distance(DistanceMetric::FubiniStudy, pa);
      ok = ok && d_arc >= d_chord - 1e-12 && d_chord >= d_proj - 1e-12 &&
           d_arc >= d_fs - 1e-12;
      ++checked;
    }
  }
  return check("distance inequalities on " + std::to_string(checked) +
                   " random pairs",
               ok);
}

void run_verify() {
  bool ok = run_line_example();
  ok = run_plane_example() && ok;
  ok = run_inequality_sweep() && ok;
  if (!ok) throw NumericalError("self-test failed");
  std::cout << "all self-tests passed\n";
}

}  // namespace

void register_verify(CLI::App& app) {
  CLI::App* cmd = app.add_subcommand(
      "verify", "Built-in self-test of the distance geometry");
  cmd->callback([] { run_verify(); });
}

}  // namespace grasslearn::cli
