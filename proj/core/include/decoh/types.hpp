#pragma once

// Shared domain types. Natural units throughout: hbar = c = 1. Frequencies are
// in units of a reference frequency omega_0, times in units of 1/omega_0 and
// positions in units of the reference wavelength lambda_0 = 2*pi/omega_0.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace decoh {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
  friend constexpr bool operator==(Vec3 a, Vec3 b) = default;

  constexpr double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

inline double distance(Vec3 a, Vec3 b) { return (a - b).norm(); }

/// Light travel time (units of 1/omega_0) across a length given in lambda_0.
constexpr double light_time(double length) { return kTwoPi * length; }

/// sin(x)/x with a series branch near the origin.
double sinc(double x);

struct UnitSystem {
  explicit UnitSystem(double reference_frequency = 1.0);

  double reference_frequency() const { return omega0_; }
  /// lambda_0 = 2*pi/omega_0.
  double reference_wavelength() const { return kTwoPi / omega0_; }

 private:
  double omega0_;
};

struct DecayChannel {
  std::string label;
  double bohr_frequency = 1.0;   // omega_es
  double dipole_strength = 1.0;  // |d_s|^2
};

/// Partial spontaneous rate omega^3 |d|^2 / (6 pi).
double partial_rate(double bohr_frequency, double dipole_strength);

/// Excited atom with one or more decay channels e -> s. Validated on
/// construction; partial rates and wavelengths are precomputed.
class AtomModel {
 public:
  struct Channel {
    std::string label;
    double bohr_frequency;
    double dipole_strength;
    double partial_rate;  // Gamma_es
    double wavelength;    // lambda_es in units of lambda_0, i.e. 1/omega_es
  };

  explicit AtomModel(std::vector<DecayChannel> channels);

  std::span<const Channel> channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }
  const Channel& operator[](std::size_t s) const { return channels_[s]; }

  double min_frequency() const;
  double max_frequency() const;
  std::vector<DecayChannel> specs() const;

 private:
  std::vector<Channel> channels_;
};

AtomModel validate_atom(std::vector<DecayChannel> channels);
AtomModel two_level_atom(double bohr_frequency = 1.0, double dipole_strength = 1.0);

/// Center-of-mass trajectory: either a fixed point or samples on [0, T]
/// with linear interpolation between nodes.
class Path {
 public:
  static Path constant(Vec3 position);
  static Path sampled(std::vector<double> times, std::vector<Vec3> positions);

  Vec3 at(double t) const;
  bool is_constant() const { return std::holds_alternative<Vec3>(data_); }
  /// Last sample time; +inf for constant paths.
  double end_time() const;
  /// Smallest node spacing; +inf for constant paths.
  double min_spacing() const;
  /// All positions the path visits at nodes (one entry for constant paths).
  std::vector<Vec3> nodes() const;
  /// Node times ({0} for constant paths).
  std::vector<double> times() const;

 private:
  struct Samples {
    std::vector<double> times;
    std::vector<Vec3> positions;
  };
  explicit Path(std::variant<Vec3, Samples> data) : data_(std::move(data)) {}

  std::variant<Vec3, Samples> data_;
};

struct PathPair {
  PathPair(Path first, Path second, double duration);

  Path first;
  Path second;
  double duration;

  PathPair swapped() const { return PathPair(second, first, duration); }
  /// Largest distance between any two nodes of either path.
  double max_extent() const;
};

/// Two constant paths at +a/2 and -a/2 along `axis` (unit z by default).
PathPair double_well_pair(double separation, double duration, Vec3 axis = {0.0, 0.0, 1.0});

struct RateDiagnostics {
  double fit_residual_local = 0.0;
  double fit_residual_nonlocal = 0.0;
  std::vector<double> dt_schedule;
  double quadrature_error = 0.0;
  std::size_t quadrature_panels = 0;
  std::size_t grid_nodes = 0;
  double tau_cutoff = 0.0;
};

class RateReport {
 public:
  RateReport() = default;
  RateReport(double gamma_local, double gamma_nonlocal, RateDiagnostics diagnostics = {});

  double gamma_local() const { return gamma_local_; }
  double gamma_nonlocal() const { return gamma_nonlocal_; }
  double gamma_total() const { return gamma_total_; }
  const RateDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  double gamma_local_ = 0.0;
  double gamma_nonlocal_ = 0.0;
  double gamma_total_ = 0.0;
  RateDiagnostics diagnostics_;
};

}  // namespace decoh
