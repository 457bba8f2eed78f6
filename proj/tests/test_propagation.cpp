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
#include <vector>

#include "eitcat/channel.hpp"
#include "eitcat/propagation.hpp"
#include "fixtures.hpp"

using namespace eitcat;

namespace {

std::size_t nearest(const std::vector<double>& v, double x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i] - x) < std::abs(v[best] - x)) best = i;
  return best;
}

PhysicalParams linear_params() {
  auto p = fixtures::toy_params();
  p.mu = {};
  return p;
}

const std::array<Pulse, 2> kGaussians{Pulse{PulseShape::Gaussian, 1.0, 0.0, 0.1},
                                      Pulse{PulseShape::Gaussian, 1.0, 0.0, 0.1}};

double ramp_amplitude_error(std::size_t nz) {
  const auto p = linear_params();
  const auto ramp = fixtures::toy_ramp(p);
  const auto ch = make_channel(ChannelLabel::Fig2a, ramp, fixtures::toy_hold(p));
  const auto g = integrate(p, ch, kGaussians, {nz, 64, -1.0, 1.0});
  const std::size_t ic = nearest(g.tau, 0.0);
  const double ratio = std::abs(g.at(0, nz, ic)) / std::abs(kGaussians[0](g.tau[ic]));
  const double exact = std::cos(mixing_angle(p, ramp, p.length)) /
                       std::cos(mixing_angle(p, ramp, 0.0));
  return std::abs(ratio / exact - 1.0);
}

}  // namespace

TEST(Propagation, ConstantControlIsPureDelay) {
  const auto p = linear_params();
  const ChannelConfig ch{ControlProfile::constant(0.5), ControlProfile::constant(2.0),
                         ChannelLabel::Fig2a};
  const std::size_t nz = 200;
  const auto g = integrate(p, ch, kGaussians, {});
  for (int j = 0; j < 2; ++j) {
    const double expected = p.length / group_velocity(p, ch.profile(j), 0.0);
    EXPECT_NEAR(g.delay[j][nz], expected, 0.01 * expected);
    EXPECT_NEAR(g.delay[j][nz], transit_time(p, ch.profile(j), p.length), 1e-12);
    for (std::size_t i = 0; i < g.tau.size(); ++i)
      EXPECT_NEAR(std::abs(g.at(j, nz, i) - kGaussians[j](g.tau[i])), 0.0, 1e-12);
  }
  EXPECT_GT(g.delay[0][nz], g.delay[1][nz]);
}

TEST(Propagation, RampDelayAndAmplitudeAtBaseline) {
  const auto p = linear_params();
  for (auto label : {ChannelLabel::Fig2a, ChannelLabel::Fig2b}) {
    const auto ch = make_channel(label, fixtures::toy_ramp(p), fixtures::toy_hold(p));
    const GridSpec spec;
    const auto g = integrate(p, ch, kGaussians, spec);
    const std::size_t ic = nearest(g.tau, 0.0);
    for (int j = 0; j < 2; ++j) {
      const double t = transit_time(p, ch.profile(j), p.length);
      EXPECT_NEAR(g.delay[j][spec.nz], t, 0.01 * t);
      const double exact = std::cos(mixing_angle(p, ch.profile(j), p.length)) /
                           std::cos(mixing_angle(p, ch.profile(j), 0.0));
      const double ratio = std::abs(g.at(j, spec.nz, ic)) / std::abs(kGaussians[j](g.tau[ic]));
      EXPECT_NEAR(ratio, exact, 0.01 * exact) << to_string(label) << " probe " << j;
    }
  }
}

TEST(Propagation, FourthOrderConvergence) {
  std::vector<double> err;
  for (std::size_t nz : {200, 400, 800, 1600}) err.push_back(ramp_amplitude_error(nz));
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double slope = std::log2(err[i] / err[i + 1]);
    EXPECT_GE(slope, 3.5) << "refinement " << i;
  }
}

TEST(Propagation, KerrPhaseMatchesQuadrature) {
  const auto p = fixtures::toy_params();
  const auto ch = make_channel(ChannelLabel::Fig2a, fixtures::toy_ramp(p), fixtures::toy_hold(p));
  const cplx e1 = 0.3, e2 = cplx(0.0, 0.2);
  const std::array<Pulse, 2> in{Pulse{PulseShape::FlatTop, e1, 0.0, 1.0, 0.05},
                                Pulse{PulseShape::FlatTop, e2, 0.0, 1.0, 0.05}};
  const auto phases = phase_integrals(p, ch, p.length);
  double previous = 1.0;
  for (std::size_t nz : {400, 1600}) {
    const auto g = integrate(p, ch, in, {nz, 65, -1.0, 1.0});
    const std::size_t ic = nearest(g.tau, 0.0);
    double worst = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double expected =
          phases.phi[j][0] * std::norm(e1) + phases.phi[j][1] * std::norm(e2);
      const double got = -std::arg(g.at(j, nz, ic) / in[j](g.tau[ic]));
      worst = std::max(worst, std::abs(got / expected - 1.0));
    }
    EXPECT_LT(worst, previous);
    previous = worst;
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(Propagation, CrossPhaseWithMismatchedDelays) {
  // Different group velocities: the partner envelope is read off-grid.
  const auto p = fixtures::toy_params();
  const ChannelConfig ch{ControlProfile::constant(0.5), ControlProfile::constant(2.0),
                         ChannelLabel::Fig2a};
  const cplx e1 = 0.3, e2 = 0.4;
  const std::array<Pulse, 2> in{Pulse{PulseShape::FlatTop, e1, 0.0, 2.0, 0.05},
                                Pulse{PulseShape::FlatTop, e2, 0.0, 2.0, 0.05}};
  const std::size_t nz = 400;
  const auto g = integrate(p, ch, in, {nz, 161, -2.0, 2.0});
  ASSERT_GT(std::abs(g.delay[0][nz] - g.delay[1][nz]), 0.2);
  const std::size_t ic = nearest(g.tau, 0.0);
  for (int j = 0; j < 2; ++j) {
    const double wj = ch.profile(j)(0.0);
    const double b = p.c + p.g2n * p.v0 / (wj * wj);
    double rate = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double wk = ch.profile(k)(0.0);
      rate += p.c * p.mu[j][k] * p.g2n * p.g2n / std::pow(wk, 4) * std::norm(k ? e2 : e1);
    }
    const double expected = rate / b * p.length;
    const double got = -std::arg(g.at(j, nz, ic) / in[j](g.tau[ic]));
    EXPECT_NEAR(got, expected, 1e-8 * expected) << "probe " << j;
    EXPECT_NEAR(std::abs(g.at(j, nz, ic)), std::abs(in[j](g.tau[ic])), 1e-12);
  }
}

TEST(Propagation, UnstableStepIsRefused) {
  const auto p = linear_params();
  const auto ch = make_channel(ChannelLabel::Fig2a, fixtures::toy_ramp(p), fixtures::toy_hold(p));
  double required = 0.0;
  try {
    integrate(p, ch, kGaussians, {25, 64, -1.0, 1.0});
    FAIL() << "expected StabilityError";
  } catch (const StabilityError& e) {
    required = e.required_step();
    EXPECT_NE(std::string(e.what()).find("need dz <="), std::string::npos);
  }
  ASSERT_GT(required, 0.0);
  const auto nz = static_cast<std::size_t>(std::ceil(p.length / required));
  EXPECT_NO_THROW(integrate(p, ch, kGaussians, {nz, 64, -1.0, 1.0}));
}

TEST(Propagation, BadGridIsRejected) {
  const auto p = linear_params();
  const auto ch = make_channel(ChannelLabel::Fig2a, fixtures::toy_ramp(p), fixtures::toy_hold(p));
  EXPECT_THROW(integrate(p, ch, kGaussians, {0, 64, -1.0, 1.0}), DomainError);
  EXPECT_THROW(integrate(p, ch, kGaussians, {10, 64, 1.0, -1.0}), DomainError);
}

namespace {

PhysicalParams validity_params() {
  auto p = fixtures::toy_params();
  p.density = 3.0;
  p.mu_bj = {2.0, 2.0};
  p.delta = {-6.0, -6.0};
  p.lambda_probe = 1e-3;
  return p;
}

ChannelConfig constant_channel() {
  return {ControlProfile::constant(0.5), ControlProfile::constant(0.5), ChannelLabel::Fig2a};
}

}  // namespace

TEST(Validity, ResonanceHasNoLoss) {
  const auto p = validity_params();
  const auto r = validity_check(p, constant_channel(), 1.0);
  for (int j = 0; j < 2; ++j) {
    EXPECT_EQ(r.eta[j], 0.0);
    EXPECT_EQ(r.eta_bound[j], 0.0);
    EXPECT_EQ(r.transmission[j], 1.0);
  }
  EXPECT_TRUE(r.loss_ok);
}

TEST(Validity, TransmissionBound) {
  auto p = validity_params();
  p.delta = {-6.0 + 0.01, -6.0 - 0.01};  // |delta + mu n| L / v0 = 0.01
  const auto ch = make_channel(ChannelLabel::Fig2a, fixtures::toy_ramp(p), fixtures::toy_hold(p));
  const auto r = validity_check(p, ch, 1.0);
  for (int j = 0; j < 2; ++j) {
    EXPECT_NEAR(r.eta_bound[j], 0.01, 1e-12);
    EXPECT_NEAR(r.transmission_bound[j], 0.9900498337491681, 1e-12);
    EXPECT_GE(r.transmission[j], r.transmission_bound[j]);
    EXPECT_GE(r.transmission[j], 0.99005);
    EXPECT_GE(r.eta[j], 0.0);
    EXPECT_LE(r.eta[j], r.eta_bound[j]);
  }
}

TEST(Validity, EtaBoundIsLinear) {
  auto p = validity_params();
  p.delta = {-5.0, -5.0};
  const auto base = validity_check(p, constant_channel(), 1.0).eta_bound[0];
  auto longer = p;
  longer.length *= 3.0;
  EXPECT_NEAR(validity_check(longer, constant_channel(), 1.0).eta_bound[0], 3.0 * base, 1e-12);
  auto detuned = p;
  detuned.delta = {-4.0, -4.0};
  EXPECT_NEAR(validity_check(detuned, constant_channel(), 1.0).eta_bound[0], 2.0 * base, 1e-12);
}

TEST(Validity, LossFlagFlipsAtThreshold) {
  auto p = validity_params();
  p.delta = {-6.0 + 0.1, -6.0};
  EXPECT_TRUE(validity_check(p, constant_channel(), 1.0).loss_ok);
  p.delta[0] = -6.0 + 0.1 * (1 + 1e-9);
  EXPECT_FALSE(validity_check(p, constant_channel(), 1.0).loss_ok);
}

TEST(Validity, DephasingFlagFlipsAtThreshold) {
  const auto p = validity_params();
  const auto ch = constant_channel();
  const double v = group_velocity(p, ch.profile_1, 0.0);
  const auto at10 = validity_check(p, ch, 10.0 * p.lambda_probe / v);
  EXPECT_NEAR(at10.dephasing_ratio, 10.0, 1e-9);
  EXPECT_FALSE(at10.dephasing_ok);
  EXPECT_TRUE(validity_check(p, ch, 100.0 * (1 + 1e-12) * p.lambda_probe / v).dephasing_ok);
  EXPECT_FALSE(validity_check(p, ch, 99.99 * p.lambda_probe / v).dephasing_ok);
}

TEST(Validity, DopplerFlagFlipsAtThreshold) {
  auto p = validity_params();
  p.dk = {2.0, 4.0};
  // Doppler limit min_j (1/|dk_j|)(1/L - mu_bj n / v0) = (1/4)(1 - 6) < 0.
  EXPECT_FALSE(validity_check(p, constant_channel(), 1.0).doppler_ok);
  p.mu_bj = {0.01, 0.01};
  const double limit = 0.25 * (1.0 - 0.03);
  const auto r = validity_check(p, constant_channel(), 1.0);
  EXPECT_NEAR(r.doppler_limit, limit, 1e-15);
  p.delta_v = 0.1 * limit * p.v0 * (1 - 1e-9);
  EXPECT_TRUE(validity_check(p, constant_channel(), 1.0).doppler_ok);
  p.delta_v = 0.1 * limit * p.v0 * (1 + 1e-9);
  EXPECT_FALSE(validity_check(p, constant_channel(), 1.0).doppler_ok);
}

TEST(Validity, AdiabaticFlagFlipsAtThreshold) {
  const auto p = validity_params();
  const ChannelConfig ch{ControlProfile::tanh_ramp(2.0, 1.0, 0.5, 0.5),
                         ControlProfile::constant(1.0), ChannelLabel::Fig2a};
  const double unit = validity_check(p, ch, 1.0).adiabatic_parameter;
  ASSERT_GT(unit, 0.0);
  EXPECT_TRUE(validity_check(p, ch, 0.999 / unit).adiabatic_ok);
  EXPECT_FALSE(validity_check(p, ch, 1.001 / unit).adiabatic_ok);
  EXPECT_TRUE(validity_check(p, constant_channel(), 1e6).adiabatic_ok);
}
