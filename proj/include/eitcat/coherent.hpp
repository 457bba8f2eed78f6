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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "eitcat/error.hpp"

namespace eitcat {

using cplx = std::complex<double>;

/// <a|b> for coherent states |a>, |b>.
inline cplx coherent_overlap(cplx a, cplx b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

template <std::size_t Modes>
struct Term {
  cplx coeff;
  std::array<cplx, Modes> amp;
};

/// Finite superposition sum_i coeff_i |amp_i(0)> x |amp_i(1)> x ... of
/// product coherent states. Terms whose amplitudes agree within
/// kAmplitudeTol are merged on insertion, so the list never holds duplicates.
template <std::size_t Modes>
class Superposition {
public:
  static constexpr std::size_t modes = Modes;
  static constexpr double kAmplitudeTol = 1e-12;

  Superposition() = default;
  Superposition(std::initializer_list<Term<Modes>> terms) {
    for (const auto& t : terms) add(t.coeff, t.amp);
  }

  static Superposition coherent(const std::array<cplx, Modes>& amp) {
    Superposition s;
    s.add(1.0, amp);
    return s;
  }

  void add(cplx coeff, const std::array<cplx, Modes>& amp) {
    for (auto& t : terms_) {
      if (same_amplitudes(t.amp, amp)) {
        t.coeff += coeff;
        return;
      }
    }
    terms_.push_back({coeff, amp});
  }

  const std::vector<Term<Modes>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// <this|other>.
  cplx inner(const Superposition& other) const {
    cplx sum{0.0};
    for (const auto& a : terms_) {
      for (const auto& b : other.terms_) {
        cplx ov = std::conj(a.coeff) * b.coeff;
        for (std::size_t m = 0; m < Modes; ++m)
          ov *= coherent_overlap(a.amp[m], b.amp[m]);
        sum += ov;
      }
    }
    return sum;
  }

  double norm_squared() const { return inner(*this).real(); }

  bool normalized(double tol = 1e-10) const {
    return std::abs(norm_squared() - 1.0) <= tol;
  }

  Superposition scaled(cplx factor) const {
    Superposition out = *this;
    for (auto& t : out.terms_) t.coeff *= factor;
    return out;
  }

  Superposition normalize() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw PreconditionError("cannot normalize a null state");
    return scaled(1.0 / std::sqrt(n2));
  }

  /// Drops terms whose |coeff| is below rel_tol times the largest one.
  Superposition pruned(double rel_tol = 1e-13) const {
    double biggest = 0.0;
    for (const auto& t : terms_) biggest = std::max(biggest, std::abs(t.coeff));
    Superposition out;
    for (const auto& t : terms_)
      if (std::abs(t.coeff) > rel_tol * biggest) out.terms_.push_back(t);
    return out;
  }

  /// Distinct coherent amplitudes occupied by one mode, in order of first
  /// appearance.
  std::vector<cplx> distinct_amplitudes(std::size_t mode) const {
    std::vector<cplx> out;
    for (const auto& t : terms_) {
      bool seen = false;
      for (const cplx& a : out) seen = seen || near(a, t.amp[mode]);
      if (!seen) out.push_back(t.amp[mode]);
    }
    return out;
  }

  static bool near(cplx a, cplx b) {
    return std::abs(a - b) <= kAmplitudeTol * std::max(1.0, std::abs(a));
  }

private:
  static bool same_amplitudes(const std::array<cplx, Modes>& a,
                              const std::array<cplx, Modes>& b) {
    for (std::size_t m = 0; m < Modes; ++m)
      if (!near(a[m], b[m])) return false;
    return true;
  }

  std::vector<Term<Modes>> terms_;
};

using CoherentSuperposition = Superposition<2>;

template <std::size_t A, std::size_t B>
Superposition<A + B> tensor(const Superposition<A>& left,
                            const Superposition<B>& right) {
  Superposition<A + B> out;
  for (const auto& l : left.terms()) {
    for (const auto& r : right.terms()) {
      std::array<cplx, A + B> amp;
      for (std::size_t i = 0; i < A; ++i) amp[i] = l.amp[i];
      for (std::size_t i = 0; i < B; ++i) amp[A + i] = r.amp[i];
      out.add(l.coeff * r.coeff, amp);
    }
  }
  return out;
}

/// Contracts the listed modes against a functional of their amplitudes:
/// each term c |x_kept> |x_removed> becomes c * weight(x_removed) |x_kept>.
template <std::size_t N, std::size_t K, class Weight>
Superposition<N - K> contract(const Superposition<N>& state,
                              const std::array<std::size_t, K>& removed,
                              Weight&& weight) {
  static_assert(K <= N);
  Superposition<N - K> out;
  for (const auto& t : state.terms()) {
    std::array<cplx, K> gone;
    std::array<cplx, N - K> kept;
    std::size_t next = 0;
    for (std::size_t m = 0; m < N; ++m) {
      bool is_removed = false;
      for (std::size_t r = 0; r < K; ++r) {
        if (removed[r] == m) {
          gone[r] = t.amp[m];
          is_removed = true;
        }
      }
      if (!is_removed) kept[next++] = t.amp[m];
    }
    out.add(t.coeff * weight(gone), kept);
  }
  return out;
}

enum class Parity { Even, Odd };

/// Even/odd cat states |+-> = (|a> +- |-a>) / sqrt(N+-) with
/// N+- = 2 +- 2 exp(-2|a|^2).
struct CatBasis {
  cplx amplitude{0.0};

  double plus_norm() const { return 2.0 + 2.0 * std::exp(-2.0 * std::norm(amplitude)); }
  double minus_norm() const { return -2.0 * std::expm1(-2.0 * std::norm(amplitude)); }
  double norm(Parity p) const {
    return p == Parity::Even ? plus_norm() : minus_norm();
  }

  /// <+-|b>. The odd state does not exist for a = 0; its overlap is then 0.
  cplx overlap(Parity p, cplx b) const {
    const double n = norm(p);
    if (n == 0.0) return 0.0;
    const double sign = p == Parity::Even ? 1.0 : -1.0;
    return (coherent_overlap(amplitude, b) +
            sign * coherent_overlap(-amplitude, b)) /
           std::sqrt(n);
  }

  Superposition<1> state(Parity p) const {
    const double n = norm(p);
    if (n == 0.0)
      throw PreconditionError("odd cat state undefined for zero amplitude");
    const double sign = p == Parity::Even ? 1.0 : -1.0;
    Superposition<1> s;
    s.add(1.0 / std::sqrt(n), {amplitude});
    s.add(sign / std::sqrt(n), {-amplitude});
    return s;
  }

  /// 1 - |<+|b>|^2 - |<-|b>|^2: weight of |b> outside span{|a>, |-a>}.
  double span_deficit(cplx b) const {
    return 1.0 - std::norm(overlap(Parity::Even, b)) -
           std::norm(overlap(Parity::Odd, b));
  }
};

}  // namespace eitcat
