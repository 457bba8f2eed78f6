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
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "eitcat/channel.hpp"
#include "eitcat/coherent.hpp"
#include "eitcat/error.hpp"
#include "eitcat/fock.hpp"

namespace eitcat {

/// Kerr phases that are integer multiples of pi, reduced mod 2.
struct ParityPhases {
  bool flip_1 = false;  // phi_11 = odd * pi: (-1)^n1 maps |a> to |-a>
  bool flip_2 = false;
  bool cross = false;   // phi_12 = odd * pi: parity-controlled sign
};

/// Classifies a gate for the symbolic path; empty when some phase is not a
/// multiple of pi within `tol` radians.
inline std::optional<ParityPhases> parity_phases(const KerrGateSpec& gate,
                                                 double tol = 1e-6) {
  auto odd = [&](double phi) -> std::optional<bool> {
    const double k = std::round(phi / std::numbers::pi);
    if (std::abs(phi - k * std::numbers::pi) > tol) return std::nullopt;
    return std::fmod(std::abs(k), 2.0) == 1.0;
  };
  const auto a = odd(gate.phi_11), b = odd(gate.phi_22), x = odd(gate.phi_12);
  if (!a || !b || !x) return std::nullopt;
  return ParityPhases{*a, *b, *x};
}

/// Exact coherent-basis action of a parity-class Kerr gate followed by the
/// output amplitude map. Uses
///   exp(-i pi n1 n2)|a, b> = (|a,b> + |-a,b> + |a,-b> - |-a,-b>) / 2.
inline CoherentSuperposition apply_kerr_symbolic(const KerrGateSpec& gate,
                                                 const CoherentSuperposition& in,
                                                 double tol = 1e-6) {
  const auto cls = parity_phases(gate, tol);
  if (!cls) {
    std::ostringstream os;
    os.precision(17);
    os << "Kerr phases (" << gate.phi_11 << ", " << gate.phi_22 << ", "
       << gate.phi_12 << ") are not multiples of pi";
    throw PreconditionError(os.str());
  }
  CoherentSuperposition out;
  for (const auto& t : in.terms()) {
    cplx a = t.amp[0], b = t.amp[1];
    if (cls->flip_1) a = -a;
    if (cls->flip_2) b = -b;
    const cplx s1 = gate.amp_1, s2 = gate.amp_2;
    if (cls->cross) {
      out.add(0.5 * t.coeff, {s1 * a, s2 * b});
      out.add(0.5 * t.coeff, {-s1 * a, s2 * b});
      out.add(0.5 * t.coeff, {s1 * a, -s2 * b});
      out.add(-0.5 * t.coeff, {-s1 * a, -s2 * b});
    } else {
      out.add(t.coeff, {s1 * a, s2 * b});
    }
  }
  return out.pruned(1e-15);
}

/// Number-basis action of the gate phases. The amplitude map has no
/// number-basis counterpart and is not applied here.
inline FockVector apply_kerr(const KerrGateSpec& gate, const FockVector& in) {
  return apply_kerr_phases(in, gate.phi_11, gate.phi_22, gate.phi_12);
}

struct KerrOutput {
  std::variant<CoherentSuperposition, FockVector> state;
  std::string notice;  // set when the numeric fallback was taken

  bool symbolic() const { return state.index() == 0; }
};

/// Symbolic path when the gate is parity class, otherwise the Fock path on
/// the unscaled input with a notice.
inline KerrOutput apply_kerr(const KerrGateSpec& gate,
                             const CoherentSuperposition& in,
                             std::size_t fallback_cutoff = 0) {
  if (parity_phases(gate)) return {apply_kerr_symbolic(gate, in), {}};
  double biggest = 0.0;
  for (const auto& t : in.terms())
    biggest = std::max({biggest, std::abs(t.amp[0]), std::abs(t.amp[1])});
  const std::size_t cutoff =
      fallback_cutoff ? fallback_cutoff : suggested_cutoff(biggest);
  std::ostringstream os;
  os << "Kerr phases are not multiples of pi; numeric path used at cutoff "
     << cutoff << " (output amplitude factors not applied)";
  return {apply_kerr(gate, to_fock(in, cutoff)), os.str()};
}

namespace detail {

// Hermitian square root of a Gram matrix with eigenvalues below `floor`
// dropped (symmetric orthogonalization).
inline Eigen::MatrixXcd gram_sqrt(const std::vector<cplx>& amps,
                                  double floor = 1e-14) {
  const auto n = static_cast<Eigen::Index>(amps.size());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      gram(i, j) = coherent_overlap(amps[i], amps[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  Eigen::VectorXd root = eig.eigenvalues();
  for (Eigen::Index i = 0; i < n; ++i)
    root(i) = root(i) > floor ? std::sqrt(root(i)) : 0.0;
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
}

inline Eigen::Index index_of(const std::vector<cplx>& amps, cplx a) {
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (CoherentSuperposition::near(amps[i], a)) return static_cast<Eigen::Index>(i);
  return -1;
}

}  // namespace detail

/// Squared Schmidt coefficients across the mode-1 / mode-2 cut, descending.
///
/// Each mode's coherent components are orthonormalized through the square
/// root of their Gram matrix; the coefficient matrix in that basis is
/// B1 C B2^T.
inline std::vector<double> schmidt_weights(const CoherentSuperposition& state) {
  const auto u = state.distinct_amplitudes(0);
  const auto v = state.distinct_amplitudes(1);
  Eigen::MatrixXcd coeff =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(u.size()),
                             static_cast<Eigen::Index>(v.size()));
  for (const auto& t : state.terms())
    coeff(detail::index_of(u, t.amp[0]), detail::index_of(v, t.amp[1])) +=
        t.coeff;
  const Eigen::MatrixXcd m =
      detail::gram_sqrt(u) * coeff * detail::gram_sqrt(v).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m * m.adjoint(),
                                                      Eigen::EigenvaluesOnly);
  std::vector<double> out(eig.eigenvalues().data(),
                          eig.eigenvalues().data() + eig.eigenvalues().size());
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline double entanglement_entropy(const CoherentSuperposition& state,
                                   double tol = 1e-8) {
  if (std::abs(state.norm_squared() - 1.0) > tol)
    throw PreconditionError("entanglement entropy needs a normalized state");
  return entropy_bits(schmidt_weights(state));
}

template <std::size_t N>
struct Projection {
  double probability = 0.0;
  Superposition<N> state;  // normalized; empty when probability is 0
};

/// Projects one mode onto the even or odd cat state of `basis`.
template <std::size_t N>
Projection<N - 1> project(const Superposition<N>& state, std::size_t mode,
                          const CatBasis& basis, Parity parity,
                          double span_tol = 1e-8) {
  static_assert(N >= 2);
  if (std::abs(state.norm_squared() - 1.0) > 1e-8)
    throw PreconditionError("projection needs a normalized state");
  for (const cplx& a : state.distinct_amplitudes(mode)) {
    const double deficit = basis.span_deficit(a);
    if (deficit > span_tol) {
      std::ostringstream os;
      os << "mode " << mode << " component " << a << " lies outside span{|"
         << basis.amplitude << ">, |" << -basis.amplitude
         << ">} (deficit " << deficit << ")";
      throw BasisMismatchError(os.str());
    }
  }
  Projection<N - 1> out;
  const auto raw = contract(state, std::array<std::size_t, 1>{mode},
                            [&](const std::array<cplx, 1>& x) {
                              return basis.overlap(parity, x[0]);
                            });
  out.probability = raw.norm_squared();
  if (out.probability > 0.0) out.state = raw.normalize().pruned();
  return out;
}

}  // namespace eitcat
