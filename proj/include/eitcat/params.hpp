// Copyright 2026 The eitcat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "eitcat/error.hpp"
#include "eitcat/quadrature.hpp"

namespace eitcat {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Scalar physics constants of the five-level beam. SI units, rates in rad/s.
///
/// The coupling g and the density n only ever enter the probe equation as
/// the product g^2 n, so that product is stored directly. `density` is kept
/// separately for the collision shifts mu_bj * n.
struct PhysicalParams {
  double g2n = 1.0;            // g^2 n, rad^2/s^2
  double density = 0.0;        // n, 1/m^3
  double v0 = 1.0;             // beam velocity, m/s
  double c = 2.0;              // light speed, m/s
  Matrix2 mu{};                // Kerr coefficients mu_jk, rad/(m photon)
  double mu_b = 0.0;           // |b> self collisions, rad m^3/s
  std::array<double, 2> mu_bj{};  // |b>-|q_j> collisions, rad m^3/s
  double gamma = 0.0;          // excited-state decay, rad/s
  double length = 1.0;         // L, m
  std::array<double, 2> delta{};  // two-photon detunings, rad/s
  std::array<double, 2> dk{};     // k_p - k_s projected on z, 1/m
  double lambda_probe = 1e-6;  // m
  double delta_v = 0.0;        // velocity spread around v0, m/s

  /// g^2 n v0 / c: the Rabi frequency squared at which theta = pi/4.
  double mixing_scale() const { return g2n * v0 / c; }

  /// Collision-corrected two-photon detuning delta_j + mu_bj n.
  double detuning(int j) const { return delta[j] + mu_bj[j] * density; }

  void validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    bool ok = finite(g2n) && finite(density) && finite(v0) && finite(c) &&
              finite(mu_b) && finite(gamma) && finite(length) &&
              finite(lambda_probe) && finite(delta_v);
    for (int j = 0; j < 2; ++j) {
      ok = ok && finite(mu_bj[j]) && finite(delta[j]) && finite(dk[j]);
      for (int k = 0; k < 2; ++k) ok = ok && finite(mu[j][k]);
    }
    if (!ok) throw DomainError("physical parameters must be finite");
    if (!(g2n > 0.0)) throw DomainError("g2n must be positive");
    if (!(v0 > 0.0 && c > v0)) throw DomainError("need c > v0 > 0");
    if (!(length > 0.0)) throw DomainError("length must be positive");
    if (gamma < 0.0) throw DomainError("gamma must be non-negative");
    const double scale = std::max(std::abs(mu[0][1]), std::abs(mu[1][0]));
    if (std::abs(mu[0][1] - mu[1][0]) > 1e-12 * scale)
      throw DomainError("collision matrix must be symmetric (mu12 == mu21)");
  }
};

enum class ProfileShape { Constant, TanhRamp, DoubleRamp };

/// Control-field Rabi frequency Omega_0(z).
///
///   Constant    Omega = omega_in
///   TanhRamp    omega_in -> omega_out, midpoint `center`, width `width`
///   DoubleRamp  dip from omega_in down to omega_out at `center` and back,
///               omega_in + (omega_out - omega_in) sech^2((z - center)/width)
struct ControlProfile {
  ProfileShape shape = ProfileShape::Constant;
  double omega_in = 1.0;
  double omega_out = 1.0;
  double center = 0.0;
  double width = 1.0;

  static ControlProfile constant(double omega) {
    return {ProfileShape::Constant, omega, omega, 0.0, 1.0};
  }
  static ControlProfile tanh_ramp(double in, double out, double center,
                                  double width) {
    return {ProfileShape::TanhRamp, in, out, center, width};
  }
  static ControlProfile double_ramp(double in, double dip, double center,
                                    double width) {
    return {ProfileShape::DoubleRamp, in, dip, center, width};
  }

  double operator()(double z) const {
    switch (shape) {
      case ProfileShape::Constant:
        return omega_in;
      case ProfileShape::TanhRamp: {
        // Both weights computed directly so a ramp over many decades keeps
        // full relative precision near omega_out.
        const double x = 2.0 * (z - center) / width;
        const double up = 1.0 / (1.0 + std::exp(-x));
        const double down = 1.0 / (1.0 + std::exp(x));
        return omega_in * down + omega_out * up;
      }
      case ProfileShape::DoubleRamp: {
        const double s = 1.0 / std::cosh((z - center) / width);
        return omega_in * (1.0 - s * s) + omega_out * s * s;
      }
    }
    return omega_in;
  }

  /// d/dz ln Omega_0(z).
  double log_derivative(double z) const {
    switch (shape) {
      case ProfileShape::Constant:
        return 0.0;
      case ProfileShape::TanhRamp: {
        const double s = 1.0 / std::cosh((z - center) / width);
        return (omega_out - omega_in) * s * s / (2.0 * width) / (*this)(z);
      }
      case ProfileShape::DoubleRamp: {
        const double u = (z - center) / width;
        const double s = 1.0 / std::cosh(u);
        return -2.0 * (omega_out - omega_in) * s * s * std::tanh(u) / width /
               (*this)(z);
      }
    }
    return 0.0;
  }

  void validate() const {
    if (!(std::isfinite(omega_in) && std::isfinite(omega_out) &&
          std::isfinite(center) && std::isfinite(width)))
      throw DomainError("control profile fields must be finite");
    if (!(omega_in > 0.0)) throw DomainError("omega_in must be positive");
    if (!(omega_out > 0.0)) throw DomainError("omega_out must be positive");
    if (shape != ProfileShape::Constant && !(width > 0.0))
      throw DomainError("ramp width must be positive");
  }
};

enum class ChannelLabel { Fig2a, Fig2b, Fig2c_ch1, Fig2c_ch2 };
enum class Transfer { ToAtomLaser, StaysLight };

/// Control fields of one transfer channel. The label records which probe is
/// mapped onto an atom laser at z = L.
struct ChannelConfig {
  ControlProfile profile_1;
  ControlProfile profile_2;
  ChannelLabel label = ChannelLabel::Fig2a;

  const ControlProfile& profile(int j) const {
    return j == 0 ? profile_1 : profile_2;
  }

  Transfer transfer(int j) const {
    switch (label) {
      case ChannelLabel::Fig2a:
        return Transfer::ToAtomLaser;
      case ChannelLabel::Fig2b:
      case ChannelLabel::Fig2c_ch1:
        return j == 0 ? Transfer::ToAtomLaser : Transfer::StaysLight;
      case ChannelLabel::Fig2c_ch2:
        return j == 0 ? Transfer::StaysLight : Transfer::ToAtomLaser;
    }
    return Transfer::StaysLight;
  }
};

/// Channel of the given kind from a transfer ramp (control field dropping
/// towards zero) and a holding profile (control field that stays strong).
inline ChannelConfig make_channel(ChannelLabel label, const ControlProfile& ramp,
                                  const ControlProfile& hold) {
  switch (label) {
    case ChannelLabel::Fig2a: return {ramp, ramp, label};
    case ChannelLabel::Fig2b:
    case ChannelLabel::Fig2c_ch1: return {ramp, hold, label};
    case ChannelLabel::Fig2c_ch2: return {hold, ramp, label};
  }
  return {ramp, ramp, label};
}

inline std::string to_string(ChannelLabel label) {
  switch (label) {
    case ChannelLabel::Fig2a: return "fig2a";
    case ChannelLabel::Fig2b: return "fig2b";
    case ChannelLabel::Fig2c_ch1: return "fig2c_ch1";
    case ChannelLabel::Fig2c_ch2: return "fig2c_ch2";
  }
  return "?";
}

namespace detail {

inline void check_position(const PhysicalParams& p, double z) {
  if (!(z >= 0.0 && z <= p.length)) {
    std::ostringstream os;
    os << "position z = " << z << " outside [0, " << p.length << "]";
    throw DomainError(os.str());
  }
}

inline double rabi(const ControlProfile& profile, double z) {
  const double omega = profile(z);
  if (!(omega > 0.0)) {
    std::ostringstream os;
    os << "control Rabi frequency not positive at z = " << z;
    throw DomainError(os.str());
  }
  return omega;
}

// 1 / V_gr without range checks; used inside quadratures.
inline double inverse_group_velocity(const PhysicalParams& p, double omega) {
  const double r = p.g2n / (omega * omega);
  return (1.0 + r) / (p.c + r * p.v0);
}

}  // namespace detail

/// Mixing angle theta(z) with tan^2 theta = g^2 n v0 / (Omega_0^2 c).
inline double mixing_angle(const PhysicalParams& p,
                           const ControlProfile& profile, double z) {
  detail::check_position(p, z);
  const double omega = detail::rabi(profile, z);
  return std::atan(std::sqrt(p.mixing_scale()) / omega);
}

/// Probe group velocity, between v0 (Omega_0 -> 0) and c (Omega_0 -> inf).
inline double group_velocity(const PhysicalParams& p,
                             const ControlProfile& profile, double z) {
  detail::check_position(p, z);
  return 1.0 / detail::inverse_group_velocity(p, detail::rabi(profile, z));
}

/// Group delay accumulated between the entrance and z.
inline double transit_time(const PhysicalParams& p,
                           const ControlProfile& profile, double z,
                           const QuadratureOptions& opt = {}) {
  detail::check_position(p, z);
  if (profile.shape == ProfileShape::Constant)
    return z * detail::inverse_group_velocity(p, detail::rabi(profile, 0.0));
  return integrate(
             [&](double x) {
               return detail::inverse_group_velocity(p,
                                                     detail::rabi(profile, x));
             },
             0.0, z, opt)
      .value;
}

/// Per-mode transfer status at the exit.
struct ChannelCheck {
  std::array<double, 2> theta_out{};
  /// Fraction of the mode that ends up in the wrong output: cos^2 theta(L)
  /// for an atom-laser mode, sin^2 theta(L) for a mode that stays light.
  std::array<double, 2> deficit{};
  bool ok = true;
};

/// Atom-laser modes need theta(L) >= pi/2 - tol, light modes theta(L) <= tol.
inline ChannelCheck check_channel(const PhysicalParams& p,
                                  const ChannelConfig& ch, double tol = 1e-3) {
  ChannelCheck out;
  for (int j = 0; j < 2; ++j) {
    const double theta = mixing_angle(p, ch.profile(j), p.length);
    out.theta_out[j] = theta;
    if (ch.transfer(j) == Transfer::ToAtomLaser) {
      out.deficit[j] = std::pow(std::cos(theta), 2);
      out.ok = out.ok && theta >= std::numbers::pi / 2 - tol;
    } else {
      out.deficit[j] = std::pow(std::sin(theta), 2);
      out.ok = out.ok && theta <= tol;
    }
  }
  return out;
}

}  // namespace eitcat
