#include "leoplace/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "leoplace/errors.hpp"

namespace leoplace::geom {
namespace {

constexpr double kPi = std::numbers::pi;

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

// Chord subtending 2*pi/count on a circle of radius r.
double chord(double r, int count) {
  return r * std::sqrt(2.0 * (1.0 - std::cos(2.0 * kPi / count)));
}

void require_planes(const ShellParams& shell) {
  if (shell.planes < 2) {
    throw NoSuchLink("inter-plane link needs at least two planes, got " +
                     std::to_string(shell.planes));
  }
}

}  // namespace

void PhysicalConstants::validate() const {
  if (!(earth_radius_km > 0.0) || !(mu_m3_s2 > 0.0) ||
      !(light_speed_km_s > 0.0)) {
    throw DomainError("physical constants must be strictly positive");
  }
}

void ShellParams::validate() const {
  if (planes < 1 || sats_per_plane < 1) {
    throw DomainError("shell needs at least one plane and one satellite");
  }
  if (!(altitude_km > 0.0)) throw DomainError("altitude must be positive");
  if (!(inclination_deg > 0.0 && inclination_deg < 180.0)) {
    throw DomainError("inclination must lie in (0, 180) degrees");
  }
}

const char* to_string(MetricKind kind) {
  return kind == MetricKind::kMax ? "max" : "mean";
}

void HopWeights::validate() const {
  if (!(inter_plane_km > 0.0) || !(intra_plane_km > 0.0)) {
    throw DomainError("hop weights must be strictly positive");
  }
}

double orbital_period_s(const ShellParams& shell,
                        const PhysicalConstants& consts) {
  const double a_m = shell.orbit_radius_km(consts) * 1000.0;
  return 2.0 * kPi * std::sqrt(a_m * a_m * a_m / consts.mu_m3_s2);
}

double orbital_speed_km_s(const ShellParams& shell,
                          const PhysicalConstants& consts) {
  return 2.0 * kPi * shell.orbit_radius_km(consts) /
         orbital_period_s(shell, consts);
}

double intra_plane_hop_km(const ShellParams& shell,
                          const PhysicalConstants& consts) {
  if (shell.sats_per_plane < 2) {
    throw NoSuchLink("intra-plane link needs at least two satellites per "
                     "plane, got " + std::to_string(shell.sats_per_plane));
  }
  return chord(shell.orbit_radius_km(consts), shell.sats_per_plane);
}

double inter_plane_hop_max_km(const ShellParams& shell,
                              const PhysicalConstants& consts) {
  require_planes(shell);
  return chord(shell.orbit_radius_km(consts), shell.planes);
}

double inter_plane_hop_at_km(const ShellParams& shell,
                             const PhysicalConstants& consts, double t_s) {
  const double max_km = inter_plane_hop_max_km(shell, consts);
  const double period = orbital_period_s(shell, consts);
  const double phase = 2.0 * kPi * std::fmod(t_s, period) / period;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  const double ci = std::cos(deg_to_rad(shell.inclination_deg));
  return max_km * std::sqrt(c * c + ci * ci * s * s);
}

double complete_elliptic_e(double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw DomainError("elliptic parameter must lie in [0, 1], got " +
                      std::to_string(m));
  }
  if (m == 1.0) return 1.0;

  // Arithmetic-geometric mean: E = K * (1 - sum 2^(n-1) c_n^2),
  // K = pi / (2 a_inf).
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c = std::sqrt(m);
  double weight = 0.5;
  double sum = weight * c * c;
  for (int iter = 0; iter < 64 && std::abs(c) > 1e-17; ++iter) {
    const double next_a = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = next_a;
    weight *= 2.0;
    sum += weight * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

double inter_plane_hop_mean_km(const ShellParams& shell,
                               const PhysicalConstants& consts) {
  const double max_km = inter_plane_hop_max_km(shell, consts);
  const double si = std::sin(deg_to_rad(shell.inclination_deg));
  // The phase factor averages to (2/pi) E(sin^2 i).
  return 2.0 / kPi * max_km * complete_elliptic_e(std::min(1.0, si * si));
}

HopWeights hop_weights(const ShellParams& shell, MetricKind metric,
                       const PhysicalConstants& consts) {
  HopWeights w;
  w.metric = metric;
  w.intra_plane_km = intra_plane_hop_km(shell, consts);
  w.inter_plane_km = metric == MetricKind::kMax
                         ? inter_plane_hop_max_km(shell, consts)
                         : inter_plane_hop_mean_km(shell, consts);
  return w;
}

double km_to_ms(double km, const PhysicalConstants& consts) {
  if (!(km >= 0.0)) throw DomainError("distance must be non-negative");
  return km / consts.light_speed_km_s * 1000.0;
}

double ms_to_km(double ms, const PhysicalConstants& consts) {
  if (!(ms >= 0.0)) throw DomainError("duration must be non-negative");
  return ms / 1000.0 * consts.light_speed_km_s;
}

}  // namespace leoplace::geom
