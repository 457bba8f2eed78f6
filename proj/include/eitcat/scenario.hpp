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

#include <initializer_list>

#include "eitcat/channel.hpp"
#include "eitcat/params.hpp"

namespace eitcat {

/// Sets mu_jj of every atom-laser mode so its self phase is a whole number
/// of 2 pi turns. Channels are visited in order; a later channel overrides
/// an earlier one on the same mode.
inline PhysicalParams match_self_phases(
    PhysicalParams p, std::initializer_list<ChannelConfig> channels) {
  for (const auto& ch : channels)
    for (int j = 0; j < 2; ++j)
      if (ch.transfer(j) == Transfer::ToAtomLaser)
        p.mu[j][j] = self_phase_matched_mu(p, ch, j);
  return p;
}

/// Calibrates the cross phase of `reference` to pi, then matches the self
/// phases of all `channels`.
inline PhysicalParams prepare_params(const PhysicalParams& p,
                                     const ChannelConfig& reference,
                                     CalibrationKnob knob,
                                     std::initializer_list<ChannelConfig> channels,
                                     Calibration* calibration = nullptr) {
  const Calibration cal = calibrate_to_pi(p, reference, knob);
  if (calibration) *calibration = cal;
  return match_self_phases(apply_calibration(p, knob, cal.scale), channels);
}

}  // namespace eitcat
