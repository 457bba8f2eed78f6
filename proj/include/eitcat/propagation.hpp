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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "eitcat/error.hpp"
#include "eitcat/params.hpp"
#include "eitcat/quadrature.hpp"

namespace eitcat {

using cplx = std::complex<double>;

enum class PulseShape { Gaussian, FlatTop };

/// Input envelope E_j(0, t).
///
/// Gaussian: peak * exp(-(t - center)^2 / (2 width^2)).
/// FlatTop: plateau of length `width` centred on `center`, tanh edges of
/// time constant `ramp`.
struct Pulse {
  PulseShape shape = PulseShape::Gaussian;
  cplx peak{1.0};
  double center = 0.0;
  double width = 1.0;
  double ramp = 0.1;

  cplx operator()(double t) const {
    if (shape == PulseShape::Gaussian) {
      const double u = (t - center) / width;
      return peak * std::exp(-0.5 * u * u);
    }
    const double lo = center - 0.5 * width, hi = center + 0.5 * width;
    return peak * 0.5 * (std::tanh((t - lo) / ramp) - std::tanh((t - hi) / ramp));
  }
};

/// nz steps along [0, L]; nt retarded-time samples on [tau_min, tau_max].
struct GridSpec {
  std::size_t nz = 200;
  std::size_t nt = 64;
  double tau_min = -1.0;
  double tau_max = 1.0;
};

/// Probe envelopes on a (z, tau) grid, tau being the retarded time of the
/// channel: the lab time of sample (iz, it) for probe j is
/// tau[it] + delay[j][iz].
struct EnvelopeGrid {
  std::vector<double> z;
  std::vector<double> tau;
  std::array<std::vector<double>, 2> delay;
  std::array<std::vector<cplx>, 2> e;
  double dz = 0.0;
  double dtau = 0.0;
  double step_ratio = 0.0;  // dz * max |d ln E / dz|, must stay below 2.5

  cplx at(int j, std::size_t iz, std::size_t it) const {
    return e[j][iz * tau.size() + it];
  }
};

namespace detail {

// Cubic Lagrange interpolation on a uniform grid; zero outside it.
inline cplx sample_uniform(const cplx* v, std::size_t n, double t0, double dt,
                           double t) {
  const double f = (t - t0) / dt;
  if (f < -0.5 || f > static_cast<double>(n) - 0.5) return 0.0;
  const double nearest = std::round(f);
  if (std::abs(f - nearest) < 1e-12) {
    const auto i = static_cast<std::size_t>(std::clamp(nearest, 0.0, double(n - 1)));
    return v[i];
  }
  auto i0 = static_cast<long>(std::floor(f)) - 1;
  i0 = std::clamp(i0, 0L, static_cast<long>(n) - 4);
  const double x = f - static_cast<double>(i0);
  cplx sum{0.0};
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (x - b) / static_cast<double>(a - b);
    sum += w * v[i0 + a];
  }
  return sum;
}

struct Coefficients {
  double inv_speed;  // dt/dz along the characteristic, 1/V_gr
  double gain;       // S / B, Raman reduction or enhancement per metre
  double inv_b;      // 1 / B
};

inline Coefficients coefficients(const PhysicalParams& p,
                                 const ControlProfile& profile, double z) {
  const double omega = profile(z);
  const double r = p.g2n / (omega * omega);
  const double b = p.c + r * p.v0;
  return {(1.0 + r) / b, r * p.v0 * profile.log_derivative(z) / b, 1.0 / b};
}

}  // namespace detail

/// Integrates the semiclassical probe equations
///
///   [(1 + g^2n/W_j^2) d/dt + (c + g^2n v0/W_j^2) d/dz] E_j
///     + i sum_k c mu_jk (g^2n)^2 / W_k^4 |E_k|^2 E_j
///     = (g^2n/W_j^2) v0 (d/dz ln W_j) E_j,          W_j = Omega_0j(z),
///
/// along characteristics. The transport speed depends on z only, so every
/// characteristic of probe j has the same delay D_j(z) and the retarded grid
/// is exact. Delays and envelopes advance together by classical RK4 in z; a
/// partner envelope at a shifted retarded time is read by cubic
/// interpolation. The Kerr coefficient carries the factor c that turns the
/// per-metre phase coefficient mu_jk into a rate.
inline EnvelopeGrid integrate(const PhysicalParams& p, const ChannelConfig& ch,
                              const std::array<Pulse, 2>& input,
                              const GridSpec& spec) {
  p.validate();
  ch.profile_1.validate();
  ch.profile_2.validate();
  if (spec.nz < 1 || spec.nt < 4 || !(spec.tau_max > spec.tau_min))
    throw DomainError("grid needs nz >= 1, nt >= 4 and tau_max > tau_min");

  const std::size_t nz = spec.nz, nt = spec.nt;
  const double h = p.length / static_cast<double>(nz);
  const double dtau = (spec.tau_max - spec.tau_min) / static_cast<double>(nt - 1);
  const double g4n2 = p.g2n * p.g2n;

  EnvelopeGrid grid;
  grid.dz = h;
  grid.dtau = dtau;
  grid.z.resize(nz + 1);
  grid.tau.resize(nt);
  for (std::size_t i = 0; i <= nz; ++i) grid.z[i] = h * static_cast<double>(i);
  grid.z[nz] = p.length;
  for (std::size_t i = 0; i < nt; ++i)
    grid.tau[i] = spec.tau_min + dtau * static_cast<double>(i);

  // Stability: RK4 needs h |lambda| inside its stability region. The Kerr
  // rate uses the input peak intensity carried along with the linear
  // amplitude law |E(z)|^2 = |E(0)|^2 cos^2 theta(z) / cos^2 theta(0).
  std::array<double, 2> peak2{};
  for (int j = 0; j < 2; ++j)
    for (double t : grid.tau) peak2[j] = std::max(peak2[j], std::norm(input[j](t)));
  const double x2 = p.mixing_scale();
  double lambda_max = 0.0;
  for (std::size_t i = 0; i <= 2 * nz; ++i) {
    const double z = 0.5 * h * static_cast<double>(i);
    for (int j = 0; j < 2; ++j) {
      const auto cj = detail::coefficients(p, ch.profile(j), z);
      double kerr = 0.0;
      for (int k = 0; k < 2; ++k) {
        const double wk = ch.profile(k)(z), wk0 = ch.profile(k)(0.0);
        const double intensity = peak2[k] * (wk * wk / (wk * wk + x2)) /
                                 (wk0 * wk0 / (wk0 * wk0 + x2));
        kerr += std::abs(p.c * p.mu[j][k]) * g4n2 / std::pow(wk, 4) * intensity;
      }
      lambda_max = std::max(lambda_max, std::abs(cj.gain) + kerr * cj.inv_b);
    }
  }
  grid.step_ratio = h * lambda_max;
  constexpr double kStabilityLimit = 2.5;
  if (grid.step_ratio > kStabilityLimit) {
    const double required = kStabilityLimit / lambda_max;
    std::ostringstream os;
    os.precision(6);
    os << "z step " << h << " violates the RK4 stability bound; need dz <= "
       << required << " (nz >= "
       << static_cast<std::size_t>(std::ceil(p.length / required)) << ")";
    throw StabilityError(os.str(), required);
  }

  struct State {
    std::array<double, 2> delay{};
    std::array<std::vector<cplx>, 2> e;
  };
  auto rhs = [&](double z, const State& y) {
    State dy;
    std::array<detail::Coefficients, 2> cf{
        detail::coefficients(p, ch.profile_1, z),
        detail::coefficients(p, ch.profile_2, z)};
    std::array<double, 2> kerr_coeff_k{};
    for (int k = 0; k < 2; ++k) kerr_coeff_k[k] = g4n2 / std::pow(ch.profile(k)(z), 4);
    for (int j = 0; j < 2; ++j) {
      dy.delay[j] = cf[j].inv_speed;
      dy.e[j].resize(nt);
      for (std::size_t i = 0; i < nt; ++i) {
        double rate = 0.0;
        for (int k = 0; k < 2; ++k) {
          if (p.mu[j][k] == 0.0) continue;
          const cplx partner =
              k == j || y.delay[j] == y.delay[k]
                  ? y.e[k][i]
                  : detail::sample_uniform(y.e[k].data(), nt, spec.tau_min, dtau,
                                           grid.tau[i] + y.delay[j] - y.delay[k]);
          rate += p.c * p.mu[j][k] * kerr_coeff_k[k] * std::norm(partner);
        }
        dy.e[j][i] = cplx(cf[j].gain, -rate * cf[j].inv_b) * y.e[j][i];
      }
    }
    return dy;
  };
  auto axpy = [&](const State& y, double a, const State& k) {
    State out = y;
    for (int j = 0; j < 2; ++j) {
      out.delay[j] += a * k.delay[j];
      for (std::size_t i = 0; i < nt; ++i) out.e[j][i] += a * k.e[j][i];
    }
    return out;
  };

  State y;
  for (int j = 0; j < 2; ++j) {
    y.e[j].resize(nt);
    for (std::size_t i = 0; i < nt; ++i) y.e[j][i] = input[j](grid.tau[i]);
    grid.e[j].resize((nz + 1) * nt);
    grid.delay[j].resize(nz + 1);
  }
  auto store = [&](std::size_t iz) {
    for (int j = 0; j < 2; ++j) {
      grid.delay[j][iz] = y.delay[j];
      std::copy(y.e[j].begin(), y.e[j].end(), grid.e[j].begin() + iz * nt);
    }
  };
  store(0);
  for (std::size_t iz = 0; iz < nz; ++iz) {
    const double z = grid.z[iz];
    const State k1 = rhs(z, y);
    const State k2 = rhs(z + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(z + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(z + h, axpy(y, h, k3));
    for (int j = 0; j < 2; ++j) {
      y.delay[j] += h / 6.0 * (k1.delay[j] + 2.0 * k2.delay[j] +
                               2.0 * k3.delay[j] + k4.delay[j]);
      for (std::size_t i = 0; i < nt; ++i) {
        y.e[j][i] += h / 6.0 * (k1.e[j][i] + 2.0 * k2.e[j][i] +
                                2.0 * k3.e[j][i] + k4.e[j][i]);
        if (!std::isfinite(y.e[j][i].real()) || !std::isfinite(y.e[j][i].imag())) {
          std::ostringstream os;
          os << "envelope blow-up at z = " << grid.z[iz + 1] << " (probe "
             << j + 1 << ")";
          throw NumericError(os.str());
        }
      }
    }
    store(iz + 1);
  }
  return grid;
}

struct ValidityThresholds {
  double loss = 0.1;             // eta bound must stay below this
  double doppler_fraction = 0.1; // dv/v0 <= fraction * Doppler limit
  double dephasing_ratio = 100.0;  // compressed length / wavelength
  double adiabatic = 1.0;        // max |d ln W/dz| V_gr T must stay below
};

struct ValidityReport {
  std::array<double, 2> eta{};
  std::array<double, 2> eta_bound{};     // |delta_j + mu_bj n| L / v0
  std::array<double, 2> transmission{};  // exp(-eta)
  std::array<double, 2> transmission_bound{};  // exp(-eta_bound)
  bool loss_ok = true;
  double doppler_ratio = 0.0;  // dv / v0
  double doppler_limit = std::numeric_limits<double>::infinity();
  double collision_ratio = std::numeric_limits<double>::infinity();  // min v0/(mu_bj n L)
  bool doppler_ok = true;
  double compressed_length = 0.0;  // min V_gr * pulse duration
  double dephasing_ratio = 0.0;    // compressed_length / lambda
  bool dephasing_ok = true;
  double adiabatic_parameter = 0.0;
  bool adiabatic_ok = true;

  bool ok() const { return loss_ok && doppler_ok && dephasing_ok && adiabatic_ok; }
};

/// Checks the approximations behind the analytic transfer: two-photon
/// detuning loss, residual Doppler shift, dephasing over the compressed
/// pulse, and slowness of the control profiles.
///
/// The loss exponent is estimated as |delta_j + mu_bj n| times the time the
/// matter part of the polariton spends in the medium,
/// eta_j = |delta_j + mu_bj n| int_0^L sin^2 theta_j / V_gr dz, which never
/// exceeds the bound |delta_j + mu_bj n| L / v0.
inline ValidityReport validity_check(const PhysicalParams& p,
                                     const ChannelConfig& ch,
                                     double pulse_duration,
                                     const ValidityThresholds& thr = {}) {
  ValidityReport r;
  constexpr std::size_t kSamples = 4000;
  const double x2 = p.mixing_scale();

  for (int j = 0; j < 2; ++j) {
    const double shift = std::abs(p.detuning(j));
    r.eta_bound[j] = shift * p.length / p.v0;
    if (shift == 0.0) {
      r.eta[j] = 0.0;
    } else {
      const auto& prof = ch.profile(j);
      const double dwell = integrate(
          [&](double z) {
            const double w = prof(z);
            const double sin2 = x2 / (w * w + x2);
            return sin2 * detail::inverse_group_velocity(p, w);
          },
          0.0, p.length).value;
      r.eta[j] = std::min(shift * dwell, r.eta_bound[j]);
    }
    r.transmission[j] = std::exp(-r.eta[j]);
    r.transmission_bound[j] = std::exp(-r.eta_bound[j]);
    r.loss_ok = r.loss_ok && r.eta_bound[j] <= thr.loss;
  }

  r.doppler_ratio = p.delta_v / p.v0;
  for (int j = 0; j < 2; ++j) {
    const double shift = p.mu_bj[j] * p.density;
    const double room = 1.0 / p.length - shift / p.v0;
    if (p.dk[j] != 0.0) r.doppler_limit = std::min(r.doppler_limit, room / std::abs(p.dk[j]));
    else if (room <= 0.0) r.doppler_limit = std::min(r.doppler_limit, 0.0);
    if (shift != 0.0)
      r.collision_ratio = std::min(r.collision_ratio, p.v0 / (std::abs(shift) * p.length));
  }
  r.doppler_ok = r.doppler_limit > 0.0 &&
                 r.doppler_ratio <= thr.doppler_fraction * r.doppler_limit &&
                 r.collision_ratio > 1.0;

  double min_speed = p.c;
  for (int j = 0; j < 2; ++j) {
    const auto& prof = ch.profile(j);
    auto visit = [&](double z) {
      const double w = prof(z);
      const double v = 1.0 / detail::inverse_group_velocity(p, w);
      min_speed = std::min(min_speed, v);
      r.adiabatic_parameter = std::max(
          r.adiabatic_parameter, std::abs(prof.log_derivative(z)) * v * pulse_duration);
    };
    for (std::size_t i = 0; i <= kSamples; ++i)
      visit(p.length * static_cast<double>(i) / kSamples);
    if (prof.shape == ProfileShape::DoubleRamp && prof.center > 0.0 &&
        prof.center < p.length)
      visit(prof.center);
  }
  r.compressed_length = min_speed * pulse_duration;
  r.dephasing_ratio = r.compressed_length / p.lambda_probe;
  r.dephasing_ok = r.dephasing_ratio >= thr.dephasing_ratio;
  r.adiabatic_ok = r.adiabatic_parameter < thr.adiabatic;
  return r;
}

}  // namespace eitcat
