#pragma once

// Closed-form ISL geometry for one shell of circular orbits around a
// spherical Earth. Lengths are kilometers, times seconds, angles degrees at
// the API boundary.

namespace leoplace::geom {

struct PhysicalConstants {
  double earth_radius_km = 6371.0;
  double mu_m3_s2 = 3.986004418e14;  // standard gravitational parameter
  double light_speed_km_s = 299792.458;

  void validate() const;

  friend bool operator==(const PhysicalConstants&,
                         const PhysicalConstants&) = default;
};

struct ShellParams {
  int planes = 1;          // N
  int sats_per_plane = 1;  // M
  double altitude_km = 0.0;
  double inclination_deg = 0.0;

  void validate() const;
  double orbit_radius_km(const PhysicalConstants& c) const {
    return c.earth_radius_km + altitude_km;
  }
  int node_count() const { return planes * sats_per_plane; }

  friend bool operator==(const ShellParams&, const ShellParams&) = default;
};

enum class MetricKind { kMax, kMean };

const char* to_string(MetricKind kind);

// Horizontal (inter-plane) and vertical (intra-plane) hop lengths used by
// weighted placement.
struct HopWeights {
  double inter_plane_km = 0.0;
  double intra_plane_km = 0.0;
  MetricKind metric = MetricKind::kMax;

  void validate() const;

  friend bool operator==(const HopWeights&, const HopWeights&) = default;
};

double orbital_period_s(const ShellParams& shell,
                        const PhysicalConstants& consts = {});
double orbital_speed_km_s(const ShellParams& shell,
                          const PhysicalConstants& consts = {});

// Chord length between neighbours in the same plane. Throws NoSuchLink for
// M < 2.
double intra_plane_hop_km(const ShellParams& shell,
                          const PhysicalConstants& consts = {});

// Distance between same-slot satellites of adjacent planes, `t` seconds
// after they crossed the ascending node. Throws NoSuchLink for N < 2.
double inter_plane_hop_at_km(const ShellParams& shell,
                             const PhysicalConstants& consts, double t_s);

// Maximum of inter_plane_hop_at_km, reached at the equator.
double inter_plane_hop_max_km(const ShellParams& shell,
                              const PhysicalConstants& consts = {});

// Time average of inter_plane_hop_at_km over one orbital period.
double inter_plane_hop_mean_km(const ShellParams& shell,
                               const PhysicalConstants& consts = {});

// Complete elliptic integral of the second kind in parameter convention:
//   E(m) = integral over [0, pi/2] of sqrt(1 - m sin^2 theta).
// Throws DomainError unless 0 <= m <= 1.
double complete_elliptic_e(double m);

HopWeights hop_weights(const ShellParams& shell, MetricKind metric,
                       const PhysicalConstants& consts = {});

double km_to_ms(double km, const PhysicalConstants& consts = {});
double ms_to_km(double ms, const PhysicalConstants& consts = {});

}  // namespace leoplace::geom
