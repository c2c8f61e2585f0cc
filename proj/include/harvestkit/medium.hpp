#pragma once

#include <string>
#include <string_view>

namespace harvestkit {

/// Sign of the quartic term in w^2 = c^2 k^2 +/- eps^2 k^4. `linear` ignores eps.
enum class Branch { bogoliubov, subsonic, linear };

std::string_view to_string(Branch b);
Branch parse_branch(std::string_view name);

/// Medium in SI units: sound speed c [m/s], dispersion strength eps [m^2/s].
struct MediumParams {
  double sound_speed = 1.0;
  double dispersion_strength = 0.0;
  Branch branch = Branch::linear;

  void validate() const;
};

/// Angular frequency [1/s] of a mode with wavenumber k [1/m].
/// Throws DomainError when the subsonic branch turns imaginary.
double omega(double k, const MediumParams& m);

/// Wavenumber where the quartic and quadratic terms are equal, k_c = c/eps.
double crossover_scale(const MediumParams& m);

/// Coordinates of one harvesting configuration in units c = T = 1.
///   a = Omega T, b = dx/(cT), s = sigma/(cT), delta = eps/(c^2 T).
struct DimensionlessPoint {
  double a = 1.0;
  double b = 1.0;
  double s = 0.125;
  double delta = 0.0;
  Branch branch = Branch::linear;

  void validate() const;
};

/// omega T as a function of u = k cT.
double reduced_omega(double u, double delta, Branch branch);

/// u/(omega T), finite at u = 0.
double reduced_group_ratio(double u, double delta, Branch branch);

/// u_c = 1/delta; infinite for a nondispersive point.
double reduced_crossover(double delta, Branch branch);

/// SI description of a detector pair (identical detectors).
struct DetectorPairSI {
  double gap = 0.0;         ///< Omega [1/s]
  double pulse_width = 0.0; ///< T [s]
  double spot_size = 0.0;   ///< sigma [m]
  double separation = 0.0;  ///< dx [m]
};

DimensionlessPoint reduce(const DetectorPairSI& d, const MediumParams& m);

/// Inverse of reduce for a given medium and pulse width.
DetectorPairSI unreduce(const DimensionlessPoint& p, const MediumParams& m, double pulse_width);

/// Dimensionless delta -> SI eps for the given c and T.
double dispersion_from_delta(double delta, double sound_speed, double pulse_width);

struct BecPreset {
  std::string name;
  double healing_length = 0.0; ///< xi [m]
  double sound_speed = 0.0;    ///< c [m/s]
  double spot_size = 0.0;      ///< sigma [m]
  double pulse_width = 0.0;    ///< T [s]
  double extent = 0.0;         ///< l_BEC [m]

  /// eps = c xi / sqrt(2)
  double dispersion_strength() const;
  MediumParams medium() const;
};

BecPreset rubidium_preset();

/// Throws ConfigError for unknown names.
BecPreset find_preset(std::string_view name);

} // namespace harvestkit
