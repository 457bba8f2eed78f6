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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eitcat/channel.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace eitcat;
using std::numbers::pi;

namespace {

// Integrand written out from the defining formula, independent of the
// library's helper.
double reference_integrand(const PhysicalParams& p, const ControlProfile& pj,
                           const ControlProfile& pk, double x) {
  const double big_x = p.g2n * p.v0 / p.c;
  const double theta_j = std::atan(std::sqrt(big_x) / pj(x));
  const double theta_k0 = std::atan(std::sqrt(big_x) / pk(0.0));
  const double ratio = std::pow(std::cos(theta_j) / std::cos(theta_k0), 2);
  return ratio * p.g2n * p.g2n / (pk(x) * pk(x) * (pj(x) * pj(x) + big_x));
}

ChannelConfig fig2a(const PhysicalParams& p) {
  return make_channel(ChannelLabel::Fig2a, fixtures::toy_ramp(p), fixtures::toy_hold(p));
}

ChannelConfig fig2b(const PhysicalParams& p) {
  return make_channel(ChannelLabel::Fig2b, fixtures::toy_ramp(p), fixtures::toy_hold(p));
}

}  // namespace

TEST(PhaseIntegrals, ZeroCollisionsGiveZeroPhase) {
  auto p = fixtures::toy_params();
  p.mu = {};
  const auto r = phase_integrals(p, fig2b(p), p.length);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      EXPECT_EQ(r.phi[j][k], 0.0);
      EXPECT_GT(r.integral[j][k], 0.0);
    }
}

TEST(PhaseIntegrals, ConstantProfilesMatchClosedForm) {
  const auto p = fixtures::toy_params();
  const ChannelConfig ch{ControlProfile::constant(0.8), ControlProfile::constant(1.7),
                         ChannelLabel::Fig2a};
  const double z = 0.37;
  const auto r = phase_integrals(p, ch, z);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      const double expected =
          p.mu[j][k] * z *
          reference_integrand(p, ch.profile(j), ch.profile(k), 0.0);
      EXPECT_NEAR(r.phi[j][k], expected, 1e-12 * expected) << j << k;
    }
}

TEST(PhaseIntegrals, RampMatchesDenseTrapezoid) {
  const auto p = fixtures::toy_params();
  for (const auto& ch : {fig2a(p), fig2b(p)}) {
    const auto r = phase_integrals(p, ch, p.length);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const double expected = oracle::trapezoid(
            [&](double x) {
              return reference_integrand(p, ch.profile(j), ch.profile(k), x);
            },
            0.0, p.length, 1'000'000);
        EXPECT_NEAR(r.integral[j][k], expected, 1e-8 * expected)
            << to_string(ch.label) << " " << j << k;
      }
  }
}

TEST(PhaseIntegrals, AmplitudeRatioWithinUnitInterval) {
  const auto p = fixtures::toy_params();
  const auto r = phase_integrals(p, fig2b(p), p.length);
  EXPECT_GT(r.amplitude_ratio[0], 0.0);
  EXPECT_LT(r.amplitude_ratio[0], 1e-3);
  EXPECT_NEAR(r.amplitude_ratio[1], 1.0, 1e-12);
}

TEST(PhaseIntegrals, LinearInCollisionStrength) {
  const auto p = fixtures::toy_params();
  auto q = p;
  for (auto& row : q.mu)
    for (auto& m : row) m *= 2.0;
  const auto a = phase_integrals(p, fig2b(p), p.length);
  const auto b = phase_integrals(q, fig2b(p), p.length);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) EXPECT_EQ(b.phi[j][k], 2.0 * a.phi[j][k]);
}

TEST(PhaseIntegrals, NonDecreasingAlongMedium) {
  const auto p = fixtures::toy_params();
  const auto ch = fig2b(p);
  Matrix2 prev{};
  for (int i = 0; i <= 40; ++i) {
    const auto r = phase_integrals(p, ch, p.length * i / 40.0);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        EXPECT_GE(r.phi[j][k], prev[j][k]);
        prev[j][k] = r.phi[j][k];
      }
  }
}

TEST(PhaseIntegrals, RejectsPositionOutsideMedium) {
  const auto p = fixtures::toy_params();
  EXPECT_THROW(phase_integrals(p, fig2a(p), 1.5 * p.length), DomainError);
}

TEST(Calibration, LinearKnobIsClosedForm) {
  const auto p = fixtures::toy_params();
  const auto ch = fig2b(p);
  const double base = cross_phase_at_exit(p, ch);
  const auto cal = calibrate_to_pi(p, ch, CalibrationKnob::ScaleMu12);
  EXPECT_NEAR(cal.scale, pi / base, 1e-12 * pi / base);
  EXPECT_LT(cal.residual, 1e-8);
}

TEST(Calibration, LengthKnobReevaluatesToPi) {
  const auto p = fixtures::toy_params();
  for (const auto& ch : {fig2a(p), fig2b(p)}) {
    const auto cal = calibrate_to_pi(p, ch, CalibrationKnob::ScaleLength);
    const auto q = apply_calibration(p, CalibrationKnob::ScaleLength, cal.scale);
    EXPECT_LT(std::abs(cross_phase_at_exit(q, ch) - pi), 1e-8);
    EXPECT_NEAR(q.length, p.length * cal.scale, 0.0);
  }
}

TEST(Calibration, FixedPointAndIdempotence) {
  const auto p = fixtures::toy_params();
  const auto ch = fig2b(p);
  for (auto knob : {CalibrationKnob::ScaleMu12, CalibrationKnob::ScaleLength}) {
    const auto once = calibrate_to_pi(p, ch, knob);
    const auto q = apply_calibration(p, knob, once.scale);
    const auto twice = calibrate_to_pi(q, ch, knob);
    EXPECT_NEAR(twice.scale, 1.0, 1e-6);
  }
}

TEST(Calibration, InfeasibleCasesAreReported) {
  auto p = fixtures::toy_params();
  p.mu[0][1] = p.mu[1][0] = 0.0;
  EXPECT_THROW(calibrate_to_pi(p, fig2b(p), CalibrationKnob::ScaleMu12),
               CalibrationError);
  p.mu[0][1] = p.mu[1][0] = 1e-12;
  EXPECT_THROW(calibrate_to_pi(p, fig2b(p), CalibrationKnob::ScaleMu12),
               CalibrationError);
  EXPECT_THROW(calibrate_to_pi(p, fig2b(p), CalibrationKnob::ScaleLength),
               CalibrationError);
}

TEST(GateSpec, MatchedCollisionsGiveCatGate) {
  auto p = fixtures::toy_params();
  const auto ch = fig2a(p);
  const auto cal = calibrate_to_pi(p, ch, CalibrationKnob::ScaleMu12);
  p = apply_calibration(p, CalibrationKnob::ScaleMu12, cal.scale);
  p.mu[0][0] = p.mu[1][1] = 2.0 * p.mu[0][1];
  const auto g = gate_spec(p, ch);
  EXPECT_NEAR(g.phi_12, pi, 1e-8);
  EXPECT_NEAR(g.phi_11, 2.0 * g.phi_12, 1e-10 * g.phi_11);
  EXPECT_NEAR(g.phi_22, 2.0 * g.phi_12, 1e-10 * g.phi_22);
  EXPECT_EQ(g.transfer_1, Transfer::ToAtomLaser);
  EXPECT_EQ(g.transfer_2, Transfer::ToAtomLaser);
  const double theta = mixing_angle(p, ch.profile_1, p.length);
  EXPECT_DOUBLE_EQ(g.amp_1, std::sqrt(p.c / p.v0) * std::sin(theta));
  EXPECT_DOUBLE_EQ(g.amp_2, g.amp_1);
}

TEST(GateSpec, NoCollisionsIsPureTransfer) {
  auto p = fixtures::toy_params();
  p.mu = {};
  const auto g = gate_spec(p, fig2b(p));
  EXPECT_EQ(g.phi_11, 0.0);
  EXPECT_EQ(g.phi_22, 0.0);
  EXPECT_EQ(g.phi_12, 0.0);
}

TEST(GateSpec, Fig2bTransferFlags) {
  const auto p = fixtures::toy_params();
  const auto ch = fig2b(p);
  const auto g = gate_spec(p, ch);
  EXPECT_EQ(g.transfer_1, Transfer::ToAtomLaser);
  EXPECT_EQ(g.transfer_2, Transfer::StaysLight);
  EXPECT_GT(g.amp_1, 0.0);
  const double t0 = mixing_angle(p, ch.profile_2, 0.0);
  const double tl = mixing_angle(p, ch.profile_2, p.length);
  EXPECT_DOUBLE_EQ(g.amp_2, std::cos(tl) / std::cos(t0));
}

TEST(GateSpec, NeedsExitIntegrals) {
  const auto p = fixtures::toy_params();
  const auto ch = fig2b(p);
  EXPECT_THROW(gate_spec(p, ch, phase_integrals(p, ch, 0.5 * p.length)),
               PreconditionError);
}

TEST(GateSpec, SelfPhaseMatching) {
  const auto p = fixtures::toy_params();
  const auto ch = fig2b(p);
  auto q = p;
  q.mu[0][0] = self_phase_matched_mu(p, ch, 0);
  const auto g = gate_spec(q, ch);
  const double turns = g.phi_11 / (2.0 * pi);
  EXPECT_NEAR(turns, std::round(turns), 1e-10);
  EXPECT_GE(std::round(turns), 1.0);
}
