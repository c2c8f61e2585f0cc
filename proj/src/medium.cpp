#include "harvestkit/medium.hpp"

#include "harvestkit/errors.hpp"

#include <cmath>
#include <limits>

namespace harvestkit {

std::string_view to_string(Branch b) {
  switch (b) {
  case Branch::bogoliubov: return "bogoliubov";
  case Branch::subsonic: return "subsonic";
  case Branch::linear: return "linear";
  }
  return "linear";
}

Branch parse_branch(std::string_view name) {
  if (name == "bogoliubov" || name == "+") return Branch::bogoliubov;
  if (name == "subsonic" || name == "-") return Branch::subsonic;
  if (name == "linear") return Branch::linear;
  throw ConfigError("unknown dispersion branch '" + std::string(name) + "'");
}

void MediumParams::validate() const {
  if (!(sound_speed > 0.0) || !std::isfinite(sound_speed))
    throw DomainError("sound speed must be positive");
  if (!(dispersion_strength >= 0.0) || !std::isfinite(dispersion_strength))
    throw DomainError("dispersion strength must be non-negative");
}

namespace {

double quartic_sign(Branch b) {
  switch (b) {
  case Branch::bogoliubov: return 1.0;
  case Branch::subsonic: return -1.0;
  case Branch::linear: return 0.0;
  }
  return 0.0;
}

} // namespace

double omega(double k, const MediumParams& m) {
  if (!(k >= 0.0)) throw DomainError("wavenumber must be non-negative");
  const double ck = m.sound_speed * k;
  const double ek2 = m.dispersion_strength * k * k;
  const double w2 = ck * ck + quartic_sign(m.branch) * ek2 * ek2;
  if (w2 < 0.0)
    throw DomainError("subsonic dispersion is imaginary beyond the crossover scale");
  return std::sqrt(w2);
}

double crossover_scale(const MediumParams& m) {
  if (m.branch == Branch::linear || m.dispersion_strength == 0.0)
    throw DomainError("nondispersive medium has no crossover scale");
  return m.sound_speed / m.dispersion_strength;
}

void DimensionlessPoint::validate() const {
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("a = Omega T must be >= 0");
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("b = dx/(cT) must be >= 0");
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("s = sigma/(cT) must be > 0");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("delta must be >= 0");
}

double reduced_omega(double u, double delta, Branch branch) {
  const double du = delta * u;
  const double q = 1.0 + quartic_sign(branch) * du * du;
  if (q < 0.0)
    throw DomainError("subsonic dispersion is imaginary beyond the crossover scale");
  return u * std::sqrt(q);
}

double reduced_group_ratio(double u, double delta, Branch branch) {
  const double du = delta * u;
  const double q = 1.0 + quartic_sign(branch) * du * du;
  if (q <= 0.0)
    throw DomainError("subsonic dispersion is imaginary beyond the crossover scale");
  return 1.0 / std::sqrt(q);
}

double reduced_crossover(double delta, Branch branch) {
  if (branch == Branch::linear || delta == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / delta;
}

DimensionlessPoint reduce(const DetectorPairSI& d, const MediumParams& m) {
  m.validate();
  if (!(d.pulse_width > 0.0)) throw DomainError("pulse width must be positive");
  if (!(d.spot_size > 0.0)) throw DomainError("spot size must be positive");
  if (!(d.gap >= 0.0)) throw DomainError("gap must be non-negative");
  if (!(d.separation >= 0.0)) throw DomainError("separation must be non-negative");
  const double cT = m.sound_speed * d.pulse_width;
  DimensionlessPoint p;
  p.a = d.gap * d.pulse_width;
  p.b = d.separation / cT;
  p.s = d.spot_size / cT;
  p.delta = m.branch == Branch::linear ? 0.0 : m.dispersion_strength / (m.sound_speed * cT);
  p.branch = m.branch;
  return p;
}

DetectorPairSI unreduce(const DimensionlessPoint& p, const MediumParams& m, double pulse_width) {
  m.validate();
  if (!(pulse_width > 0.0)) throw DomainError("pulse width must be positive");
  const double cT = m.sound_speed * pulse_width;
  return DetectorPairSI{p.a / pulse_width, pulse_width, p.s * cT, p.b * cT};
}

double dispersion_from_delta(double delta, double sound_speed, double pulse_width) {
  return delta * sound_speed * sound_speed * pulse_width;
}

double BecPreset::dispersion_strength() const {
  return sound_speed * healing_length / std::sqrt(2.0);
}

MediumParams BecPreset::medium() const {
  return MediumParams{sound_speed, dispersion_strength(), Branch::bogoliubov};
}

BecPreset rubidium_preset() {
  return BecPreset{"rubidium", 6.31e-8, 8e-3, 3e-6, 3e-3, 1e-4};
}

BecPreset find_preset(std::string_view name) {
  if (name == "rubidium") return rubidium_preset();
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

} // namespace harvestkit
