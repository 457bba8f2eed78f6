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

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include "eitcat/error.hpp"
#include "eitcat/params.hpp"
#include "eitcat/quadrature.hpp"

namespace eitcat {

/// Accumulated Kerr phase coefficients of one channel at z_eval.
///
/// integral[j][k] = int_0^z |cos theta_j(x) / cos theta_k(0)|^2
///                  (g^2 n)^2 / (Omega_k^2 (Omega_j^2 + g^2 n v0/c)) dx
/// phi[j][k]      = mu_jk * integral[j][k], the phase per photon of mode k
///                  picked up by mode j.
struct PhaseIntegrals {
  Matrix2 integral{};
  Matrix2 phi{};
  std::array<double, 2> amplitude_ratio{};  // cos theta_j(z) / cos theta_j(0)
  double z_eval = 0.0;

  /// Coefficient of n1 n2: the mean of the two directed cross terms. For
  /// identical control profiles the two terms coincide.
  double cross_phase() const { return 0.5 * (phi[0][1] + phi[1][0]); }
};

namespace detail {

inline double phase_integrand(const PhysicalParams& p, const ChannelConfig& ch,
                              int j, int k, double x) {
  const double x2 = p.mixing_scale();
  const double oj = rabi(ch.profile(j), x);
  const double ok = rabi(ch.profile(k), x);
  const double ok0 = rabi(ch.profile(k), 0.0);
  const double cos2_j = oj * oj / (oj * oj + x2);
  const double cos2_k0 = ok0 * ok0 / (ok0 * ok0 + x2);
  return cos2_j / cos2_k0 * p.g2n * p.g2n / (ok * ok * (oj * oj + x2));
}

}  // namespace detail

inline PhaseIntegrals phase_integrals(const PhysicalParams& p,
                                      const ChannelConfig& ch, double z,
                                      const QuadratureOptions& opt = {}) {
  detail::check_position(p, z);
  PhaseIntegrals out;
  out.z_eval = z;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      auto f = [&](double x) { return detail::phase_integrand(p, ch, j, k, x); };
      double value = 0.0;
      if (ch.profile(j).shape == ProfileShape::Constant &&
          ch.profile(k).shape == ProfileShape::Constant) {
        value = z * f(0.0);
      } else {
        // Integrands far below one would otherwise be resolved only to the
        // absolute tolerance; measure them in units of their sampled peak.
        double peak = 0.0;
        for (int i = 0; i <= 64; ++i) peak = std::max(peak, std::abs(f(z * i / 64.0)));
        const double unit = peak > 0.0 ? std::min(1.0, peak) : 1.0;
        try {
          value = unit * integrate([&](double x) { return f(x) / unit; }, 0.0, z, opt).value;
        } catch (const NumericError& e) {
          std::ostringstream os;
          os << "phase integral (" << j + 1 << "," << k + 1 << "): " << e.what();
          throw NumericError(os.str());
        }
      }
      out.integral[j][k] = value;
      out.phi[j][k] = p.mu[j][k] * value;
    }
    out.amplitude_ratio[j] = std::cos(mixing_angle(p, ch.profile(j), z)) /
                             std::cos(mixing_angle(p, ch.profile(j), 0.0));
  }
  return out;
}

enum class CalibrationKnob { ScaleMu12, ScaleLength };

struct Calibration {
  double scale = 1.0;
  double cross_phase = 0.0;  // cross phase re-evaluated at `scale`
  double residual = 0.0;     // |cross_phase - pi|
};

/// Parameters with the calibration knob multiplied by `scale`. ScaleMu12
/// scales both off-diagonal entries; ScaleLength stretches the medium while
/// the control profiles keep their absolute geometry.
inline PhysicalParams apply_calibration(PhysicalParams p, CalibrationKnob knob,
                                        double scale) {
  if (knob == CalibrationKnob::ScaleMu12) {
    p.mu[0][1] *= scale;
    p.mu[1][0] *= scale;
  } else {
    p.length *= scale;
  }
  return p;
}

inline double cross_phase_at_exit(const PhysicalParams& p,
                                  const ChannelConfig& ch,
                                  const QuadratureOptions& opt = {}) {
  return phase_integrals(p, ch, p.length, opt).cross_phase();
}

/// Finds the knob scale that makes the n1 n2 phase coefficient equal pi.
inline Calibration calibrate_to_pi(const PhysicalParams& p,
                                   const ChannelConfig& ch,
                                   CalibrationKnob knob,
                                   const QuadratureOptions& opt = {}) {
  constexpr double kLo = 1e-6;
  constexpr double kHi = 1e6;
  constexpr double kPhaseTol = 1e-8;
  const double pi = std::numbers::pi;

  auto phase = [&](double s) {
    return cross_phase_at_exit(apply_calibration(p, knob, s), ch, opt);
  };
  const double base = phase(1.0);
  if (!std::isfinite(base) || !(base > 0.0))
    throw CalibrationError("cross phase at unit scale must be finite and "
                           "positive, got " + std::to_string(base));

  Calibration out;
  if (knob == CalibrationKnob::ScaleMu12) {
    out.scale = pi / base;
    if (out.scale < kLo || out.scale > kHi)
      throw CalibrationError("mu12 scale " + std::to_string(out.scale) +
                             " outside [1e-6, 1e6]");
  } else if (base == pi) {
    out.scale = 1.0;
  } else {
    // Cross phase grows monotonically with the medium length.
    double lo = 1.0, hi = 1.0;
    double f_lo = base - pi, f_hi = base - pi;
    while (f_lo > 0.0) {
      hi = lo;
      f_hi = f_lo;
      lo /= 4.0;
      if (lo < kLo)
        throw CalibrationError("no length bracket for a pi cross phase in "
                               "[1e-6, 1e6]");
      f_lo = phase(lo) - pi;
    }
    while (f_hi < 0.0) {
      lo = hi;
      f_lo = f_hi;
      hi *= 4.0;
      if (hi > kHi)
        throw CalibrationError("no length bracket for a pi cross phase in "
                               "[1e-6, 1e6]");
      f_hi = phase(hi) - pi;
    }
    std::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        [&](double s) { return phase(s) - pi; }, lo, hi, f_lo, f_hi,
        boost::math::tools::eps_tolerance<double>(52), iters);
    const double a = bracket.first, b = bracket.second;
    out.scale = std::abs(phase(a) - pi) <= std::abs(phase(b) - pi) ? a : b;
  }
  out.cross_phase = phase(out.scale);
  out.residual = std::abs(out.cross_phase - pi);
  if (!(out.residual < kPhaseTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "calibration residual " << out.residual << " exceeds 1e-8 rad";
    throw CalibrationError(os.str());
  }
  return out;
}

/// Effective two-mode Kerr unitary of a channel,
///   U = exp[-i (phi_11 n1^2 + phi_22 n2^2 + phi_12 n1 n2)],
/// followed by the amplitude map of the output fields.
struct KerrGateSpec {
  double phi_11 = 0.0;
  double phi_22 = 0.0;
  double phi_12 = 0.0;
  Transfer transfer_1 = Transfer::ToAtomLaser;
  Transfer transfer_2 = Transfer::ToAtomLaser;
  double amp_1 = 1.0;
  double amp_2 = 1.0;

  Transfer transfer(int j) const { return j == 0 ? transfer_1 : transfer_2; }
  double amp(int j) const { return j == 0 ? amp_1 : amp_2; }
};

inline KerrGateSpec gate_spec(const PhysicalParams& p, const ChannelConfig& ch,
                              const PhaseIntegrals& at_exit) {
  if (std::abs(at_exit.z_eval - p.length) > 1e-12 * p.length)
    throw PreconditionError("gate_spec needs phase integrals evaluated at z = L");
  KerrGateSpec gate;
  gate.phi_11 = at_exit.phi[0][0];
  gate.phi_22 = at_exit.phi[1][1];
  gate.phi_12 = at_exit.cross_phase();
  gate.transfer_1 = ch.transfer(0);
  gate.transfer_2 = ch.transfer(1);
  for (int j = 0; j < 2; ++j) {
    const double theta_out = mixing_angle(p, ch.profile(j), p.length);
    const double amp =
        ch.transfer(j) == Transfer::ToAtomLaser
            ? std::sqrt(p.c / p.v0) * std::sin(theta_out)
            : std::cos(theta_out) /
                  std::cos(mixing_angle(p, ch.profile(j), 0.0));
    (j == 0 ? gate.amp_1 : gate.amp_2) = amp;
  }
  return gate;
}

inline KerrGateSpec gate_spec(const PhysicalParams& p, const ChannelConfig& ch,
                              const QuadratureOptions& opt = {}) {
  return gate_spec(p, ch, phase_integrals(p, ch, p.length, opt));
}

/// Value of mu_jj that turns the self phase of mode j into the nearest
/// non-zero multiple of 2 pi, which acts trivially on every number state.
inline double self_phase_matched_mu(const PhysicalParams& p,
                                    const ChannelConfig& ch, int j,
                                    const QuadratureOptions& opt = {}) {
  const PhaseIntegrals pi_l = phase_integrals(p, ch, p.length, opt);
  const double integral = pi_l.integral[j][j];
  if (!(integral > 0.0))
    throw CalibrationError("self-phase integral must be positive");
  const double two_pi = 2.0 * std::numbers::pi;
  const double turns = std::max(1.0, std::round(pi_l.phi[j][j] / two_pi));
  return turns * two_pi / integral;
}

}  // namespace eitcat
