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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <utility>

#include "eitcat/channel.hpp"
#include "eitcat/coherent.hpp"
#include "eitcat/error.hpp"
#include "eitcat/fock.hpp"
#include "eitcat/params.hpp"
#include "eitcat/states.hpp"

namespace eitcat {

enum class BellOutcome { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes{
    BellOutcome::PsiPlus, BellOutcome::PsiMinus, BellOutcome::PhiPlus,
    BellOutcome::PhiMinus};

inline std::string to_string(BellOutcome o) {
  switch (o) {
    case BellOutcome::PsiPlus: return "psi+";
    case BellOutcome::PsiMinus: return "psi-";
    case BellOutcome::PhiPlus: return "phi+";
    case BellOutcome::PhiMinus: return "phi-";
  }
  return "?";
}

/// Bell states of two light modes built from their cat bases:
///   psi+- = (|+>|-> +- |->|+>) / sqrt2,  phi+- = (|+>|+> +- |->|->) / sqrt2.
struct BellBasis {
  CatBasis first;
  CatBasis second;

  /// coefficients[s][t] of |s>|t>, index 0 = even (+), 1 = odd (-).
  static std::array<std::array<double, 2>, 2> coefficients(BellOutcome o) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (o) {
      case BellOutcome::PsiPlus: return {{{0.0, h}, {h, 0.0}}};
      case BellOutcome::PsiMinus: return {{{0.0, h}, {-h, 0.0}}};
      case BellOutcome::PhiPlus: return {{{h, 0.0}, {0.0, h}}};
      case BellOutcome::PhiMinus: return {{{h, 0.0}, {0.0, -h}}};
    }
    return {};
  }

  /// <bell| x, y> for coherent light amplitudes x (first), y (second).
  cplx overlap(BellOutcome o, cplx x, cplx y) const {
    const auto b = coefficients(o);
    constexpr Parity parity[2] = {Parity::Even, Parity::Odd};
    cplx sum{0.0};
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        if (b[s][t] != 0.0)
          sum += b[s][t] * first.overlap(parity[s], x) *
                 second.overlap(parity[t], y);
    return sum;
  }

  /// The Bell state as a two-mode coherent superposition.
  CoherentSuperposition state(BellOutcome o) const {
    const auto b = coefficients(o);
    constexpr Parity parity[2] = {Parity::Even, Parity::Odd};
    CoherentSuperposition out;
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        if (b[s][t] != 0.0) {
          const auto left = first.state(parity[s]);
          const auto right = second.state(parity[t]);
          for (const auto& l : left.terms())
            for (const auto& r : right.terms())
              out.add(b[s][t] * l.coeff * r.coeff, {l.amp[0], r.amp[0]});
        }
    return out;
  }
};

struct SwapOutcome {
  BellOutcome outcome = BellOutcome::PsiPlus;
  double probability = 0.0;
  CoherentSuperposition atom_state;  // modes (1A, 2A), normalized
  double entropy = 0.0;              // ebits
};

/// Ideal 50/50 splitter acting on a coherent amplitude.
inline std::pair<cplx, cplx> split(cplx amplitude) {
  const cplx half = amplitude / std::sqrt(2.0);
  return {half, half};
}

/// One transfer channel: coherent inputs |in1, in2> through the channel's
/// Kerr gate. The result keeps the probe ordering (mode 1, mode 2); the
/// gate's transfer flags say which of them left as an atom laser.
inline CoherentSuperposition run_channel(const ChannelConfig& config, cplx in1,
                                         cplx in2, const KerrGateSpec& gate) {
  for (int j = 0; j < 2; ++j) {
    if (gate.transfer(j) != config.transfer(j))
      throw PreconditionError("gate transfer flags do not match channel " +
                              to_string(config.label));
  }
  return apply_kerr_symbolic(gate, CoherentSuperposition::coherent({in1, in2}));
}

/// Bell measurement on the light modes of two Fig. 3 channels.
///
/// `ch1` carries (1A, 1L) and `ch2` carries (2L, 2A). The light modes are
/// measured in `basis`; the four outcomes come back with their
/// probabilities and the normalized state of the two atom lasers.
inline std::array<SwapOutcome, 4> swap(const CoherentSuperposition& ch1,
                                       const CoherentSuperposition& ch2,
                                       const BellBasis& basis,
                                       double span_tol = 1e-8) {
  auto check_span = [&](const CoherentSuperposition& s, std::size_t mode,
                        const CatBasis& cat, const char* name) {
    for (const cplx& a : s.distinct_amplitudes(mode)) {
      if (cat.span_deficit(a) > span_tol)
        throw BasisMismatchError(std::string(name) +
                                 " light mode leaves the cat-basis span");
    }
  };
  check_span(ch1, 1, basis.first, "channel 1");
  check_span(ch2, 0, basis.second, "channel 2");

  // Modes of the product: 0 = 1A, 1 = 1L, 2 = 2L, 3 = 2A.
  const Superposition<4> joint = tensor(ch1, ch2);
  const double total = joint.norm_squared();
  if (std::abs(total - 1.0) > 1e-8)
    throw PreconditionError("swap needs normalized channel states");

  std::array<SwapOutcome, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    const BellOutcome o = kBellOutcomes[i];
    const auto raw = contract(joint, std::array<std::size_t, 2>{1, 2},
                              [&](const std::array<cplx, 2>& light) {
                                return basis.overlap(o, light[0], light[1]);
                              });
    SwapOutcome& r = out[i];
    r.outcome = o;
    r.probability = raw.norm_squared();
    if (r.probability > 0.0) {
      r.atom_state = raw.normalize().pruned();
      r.entropy = entanglement_entropy(r.atom_state);
    }
  }
  return out;
}

/// Same, with the cat bases read off the light modes: the amplitude of the
/// first term fixes the sign convention of each |->.
inline std::array<SwapOutcome, 4> swap(const CoherentSuperposition& ch1,
                                       const CoherentSuperposition& ch2) {
  if (ch1.empty() || ch2.empty())
    throw PreconditionError("swap needs non-empty channel states");
  return swap(ch1, ch2,
              BellBasis{CatBasis{ch1.terms().front().amp[1]},
                        CatBasis{ch2.terms().front().amp[0]}});
}

/// Draws one outcome with the Born weights, using the caller's generator.
inline const SwapOutcome& sample_outcome(const std::array<SwapOutcome, 4>& all,
                                         std::mt19937_64& rng) {
  std::discrete_distribution<std::size_t> pick{
      all[0].probability, all[1].probability, all[2].probability,
      all[3].probability};
  return all[pick(rng)];
}

/// Gates of the two Fig. 3 channels.
struct SwapSetup {
  ChannelConfig channel_1;  // label Fig2c_ch1
  ChannelConfig channel_2;  // label Fig2c_ch2
  KerrGateSpec gate_1;
  KerrGateSpec gate_2;
};

struct SwapRun {
  CoherentSuperposition channel_1;  // (1A, 1L)
  CoherentSuperposition channel_2;  // (2L, 2A)
  std::array<SwapOutcome, 4> outcomes;
};

/// Split both probes, run the two channels, Bell-measure the light modes.
inline SwapRun run_swap(const SwapSetup& setup, cplx alpha, cplx beta) {
  if (setup.channel_1.label != ChannelLabel::Fig2c_ch1 ||
      setup.channel_2.label != ChannelLabel::Fig2c_ch2)
    throw PreconditionError("swap needs a fig2c_ch1 / fig2c_ch2 channel pair");
  const auto [a1, a2] = split(alpha);
  const auto [b1, b2] = split(beta);
  SwapRun run;
  run.channel_1 = run_channel(setup.channel_1, a1, b1, setup.gate_1);
  run.channel_2 = run_channel(setup.channel_2, a2, b2, setup.gate_2);
  const BellBasis basis{CatBasis{b1 * setup.gate_1.amp_2},
                        CatBasis{a2 * setup.gate_2.amp_1}};
  run.outcomes = swap(run.channel_1, run.channel_2, basis);
  return run;
}

struct FockSwapOutcome {
  BellOutcome outcome = BellOutcome::PsiPlus;
  double probability = 0.0;
  FockVector atom_state;  // (1A, 2A), normalized
  double entropy = 0.0;
};

/// The Fig. 3 protocol entirely in the number basis: split, prepare each
/// channel at its output amplitudes, apply the Kerr phases, project the
/// light modes on number-basis Bell states. Preparing at the output
/// amplitudes equals scaling after the gate for parity-class phases.
inline std::array<FockSwapOutcome, 4> run_swap_fock(const SwapSetup& setup,
                                                    cplx alpha, cplx beta,
                                                    std::size_t cutoff) {
  const auto [a1, a2] = split(alpha);
  const auto [b1, b2] = split(beta);
  const auto& g1 = setup.gate_1;
  const auto& g2 = setup.gate_2;
  const FockVector ch1 = apply_kerr(
      g1, to_fock(CoherentSuperposition::coherent({g1.amp_1 * a1, g1.amp_2 * b1}), cutoff));
  const FockVector ch2 = apply_kerr(
      g2, to_fock(CoherentSuperposition::coherent({g2.amp_1 * a2, g2.amp_2 * b2}), cutoff));

  auto cat = [&](cplx amp, double sign) {
    const auto plus = coherent_amplitudes(amp, cutoff);
    const auto minus = coherent_amplitudes(-amp, cutoff);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(cutoff));
    for (std::size_t n = 0; n < cutoff; ++n) v(n) = plus[n] + sign * minus[n];
    const double norm = v.norm();
    return norm > 0.0 ? Eigen::VectorXcd(v / norm) : v;
  };
  const std::array<Eigen::VectorXcd, 2> first{cat(g1.amp_2 * b1, 1.0), cat(g1.amp_2 * b1, -1.0)};
  const std::array<Eigen::VectorXcd, 2> second{cat(g2.amp_1 * a2, 1.0), cat(g2.amp_1 * a2, -1.0)};

  std::array<FockSwapOutcome, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto coeff = BellBasis::coefficients(kBellOutcomes[i]);
    Eigen::MatrixXcd bell = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        if (coeff[s][t] != 0.0) bell += coeff[s][t] * first[s] * second[t].transpose();
    FockSwapOutcome& r = out[i];
    r.outcome = kBellOutcomes[i];
    r.atom_state.cutoff = cutoff;
    r.atom_state.tail_mass = std::max(ch1.tail_mass, ch2.tail_mass);
    r.atom_state.amps = ch1.amps * bell.conjugate() * ch2.amps;
    r.probability = r.atom_state.norm_squared();
    if (r.probability > 0.0) {
      r.atom_state = r.atom_state.normalize();
      r.entropy = entanglement_entropy(r.atom_state);
    }
  }
  return out;
}

}  // namespace eitcat
