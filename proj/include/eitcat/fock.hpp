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

#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <vector>

#include "eitcat/coherent.hpp"
#include "eitcat/error.hpp"

namespace eitcat {

/// Two-mode state on the truncated number grid {0..D-1}^2.
struct FockVector {
  std::size_t cutoff = 0;
  Eigen::MatrixXcd amps;   // amps(n, m) = <n, m|psi>
  double tail_mass = 0.0;  // probability lost beyond the cutoff

  double norm_squared() const { return amps.squaredNorm(); }

  FockVector normalize() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw PreconditionError("cannot normalize a null state");
    FockVector out = *this;
    out.amps /= std::sqrt(n2);
    return out;
  }

  cplx inner(const FockVector& other) const {
    if (other.cutoff != cutoff)
      throw PreconditionError("Fock vectors with different cutoffs");
    return amps.conjugate().cwiseProduct(other.amps).sum();
  }
};

/// Number-state amplitudes <n|a>, n < cutoff.
inline std::vector<cplx> coherent_amplitudes(cplx a, std::size_t cutoff) {
  std::vector<cplx> out(cutoff);
  if (cutoff == 0) return out;
  out[0] = std::exp(-0.5 * std::norm(a));
  for (std::size_t n = 1; n < cutoff; ++n)
    out[n] = out[n - 1] * a / std::sqrt(static_cast<double>(n));
  return out;
}

/// Cutoff heuristic |a|^2 + 8|a| + 12; to_fock re-checks the actual tail.
inline std::size_t suggested_cutoff(double max_abs_amplitude) {
  const double a = max_abs_amplitude;
  return static_cast<std::size_t>(std::ceil(a * a + 8.0 * a + 12.0));
}

inline FockVector to_fock(const CoherentSuperposition& state,
                          std::size_t cutoff, double tail_tol = 1e-12) {
  FockVector out;
  out.cutoff = cutoff;
  out.amps = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (const auto& t : state.terms()) {
    const auto c1 = coherent_amplitudes(t.amp[0], cutoff);
    const auto c2 = coherent_amplitudes(t.amp[1], cutoff);
    double kept1 = 0.0, kept2 = 0.0;
    for (std::size_t n = 0; n < cutoff; ++n) {
      kept1 += std::norm(c1[n]);
      kept2 += std::norm(c2[n]);
    }
    const double tail = std::max(0.0, 1.0 - kept1 * kept2);
    if (tail > tail_tol) {
      std::ostringstream os;
      os << "cutoff " << cutoff << " too small: term with amplitudes ("
         << t.amp[0] << ", " << t.amp[1] << ") loses " << tail
         << " probability; try " << suggested_cutoff(std::max(
                                        std::abs(t.amp[0]), std::abs(t.amp[1])));
      throw CutoffError(os.str());
    }
    out.tail_mass = std::max(out.tail_mass, tail);
    Eigen::Map<const Eigen::VectorXcd> v1(c1.data(), cutoff);
    Eigen::Map<const Eigen::VectorXcd> v2(c2.data(), cutoff);
    out.amps += t.coeff * v1 * v2.transpose();
  }
  return out;
}

/// Multiplies amps(n, m) by exp[-i (phi11 n^2 + phi22 m^2 + phi12 n m)].
inline FockVector apply_kerr_phases(const FockVector& state, double phi11,
                                    double phi22, double phi12) {
  FockVector out = state;
  for (std::size_t n = 0; n < state.cutoff; ++n) {
    for (std::size_t m = 0; m < state.cutoff; ++m) {
      const double dn = static_cast<double>(n), dm = static_cast<double>(m);
      const double phase = phi11 * dn * dn + phi22 * dm * dm + phi12 * dn * dm;
      out.amps(n, m) *= std::polar(1.0, -phase);
    }
  }
  return out;
}

/// |<a|b>|^2 of the normalized states.
inline double fidelity(const FockVector& a, const FockVector& b) {
  return std::norm(a.inner(b)) / (a.norm_squared() * b.norm_squared());
}

/// Von Neumann entropy (log2) of an eigenvalue list, ignoring round-off
/// negatives.
template <class Range>
double entropy_bits(const Range& eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues)
    if (l > 1e-300) s -= l * std::log2(l);
  return s;
}

/// Entanglement entropy across the mode-1 / mode-2 cut via the reduced
/// density matrix of mode 1.
inline double entanglement_entropy(const FockVector& state, double tol = 1e-8) {
  if (std::abs(state.norm_squared() - 1.0) > tol)
    throw PreconditionError("entanglement entropy needs a normalized state");
  const Eigen::MatrixXcd rho = state.amps * state.amps.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho,
                                                      Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& l = eig.eigenvalues();
  return entropy_bits(std::vector<double>(l.data(), l.data() + l.size()));
}

}  // namespace eitcat
