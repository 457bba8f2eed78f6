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

// Parameter sets shared by the unit and acceptance suites.

#include <cmath>

#include "eitcat/params.hpp"
#include "eitcat/protocol.hpp"
#include "eitcat/scenario.hpp"

namespace eitcat::fixtures {

/// Dimensionless set with c / v0 = 2, so transferred amplitudes grow by
/// about sqrt(2) and every state stays small enough for a Fock oracle.
inline PhysicalParams toy_params() {
  PhysicalParams p;
  p.g2n = 1.0;
  p.v0 = 1.0;
  p.c = 2.0;
  p.length = 1.0;
  p.mu = {{{0.2, 0.1}, {0.1, 0.2}}};
  p.lambda_probe = 1e-6;
  return p;
}

/// Transfer ramp: theta rises from 1e-3 to pi/2 - 1e-4.
inline ControlProfile toy_ramp(const PhysicalParams& p) {
  const double s = std::sqrt(p.mixing_scale());
  return ControlProfile::tanh_ramp(1e3 * s, 1e-4 * s, 0.5 * p.length,
                                   p.length / 40.0);
}

/// Holding field: theta stays at 1e-4.
inline ControlProfile toy_hold(const PhysicalParams& p) {
  return ControlProfile::constant(1e4 * std::sqrt(p.mixing_scale()));
}

/// Slow-light numbers in SI units: a 1 m/s atomic beam, 1 mm medium.
inline PhysicalParams si_params() {
  PhysicalParams p;
  p.g2n = 1e16;
  p.density = 1e20;
  p.v0 = 1.0;
  p.c = 299792458.0;
  p.length = 1e-3;
  p.mu = {{{2e-13, 1e-13}, {1e-13, 2e-13}}};
  p.lambda_probe = 7.8e-7;
  return p;
}

inline ControlProfile si_ramp(const PhysicalParams& p) {
  return toy_ramp(p);
}

inline ControlProfile si_hold(const PhysicalParams& p) { return toy_hold(p); }

/// Mirrored Fig. 3 channels with the cross phase calibrated to pi and the
/// atom-laser self phases set to whole turns.
inline SwapSetup swap_setup(const PhysicalParams& base, const ControlProfile& ramp,
                            const ControlProfile& hold) {
  const auto ch1 = make_channel(ChannelLabel::Fig2c_ch1, ramp, hold);
  const auto ch2 = make_channel(ChannelLabel::Fig2c_ch2, ramp, hold);
  const auto p = prepare_params(base, ch1, CalibrationKnob::ScaleMu12, {ch1, ch2});
  return {ch1, ch2, gate_spec(p, ch1), gate_spec(p, ch2)};
}

inline SwapSetup toy_swap_setup() {
  const auto p = toy_params();
  return swap_setup(p, toy_ramp(p), toy_hold(p));
}

}  // namespace eitcat::fixtures
