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

#include <charconv>
#include <complex>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "eitcat/coherent.hpp"
#include "eitcat/error.hpp"
#include "eitcat/fock.hpp"

namespace eitcat::io {

/// Streams doubles with 17 significant digits so values round-trip.
inline void full_precision(std::ostream& os) { os.precision(17); }

/// Header line `# coherent-superposition modes=N terms=T`, a column line,
/// then one CSV row per term:
///   coeff_re,coeff_im,amp1_re,amp1_im,...,ampN_re,ampN_im
template <std::size_t N>
void write(std::ostream& os, const Superposition<N>& s) {
  full_precision(os);
  os << "# coherent-superposition modes=" << N << " terms=" << s.size() << '\n';
  os << "coeff_re,coeff_im";
  for (std::size_t m = 1; m <= N; ++m) os << ",amp" << m << "_re,amp" << m << "_im";
  os << '\n';
  for (const auto& t : s.terms()) {
    os << t.coeff.real() << ',' << t.coeff.imag();
    for (const cplx& a : t.amp) os << ',' << a.real() << ',' << a.imag();
    os << '\n';
  }
}

namespace detail {

inline std::size_t header_field(const std::string& header, const std::string& key) {
  const auto pos = header.find(key + "=");
  if (pos == std::string::npos)
    throw ConfigError("state header lacks '" + key + "': " + header);
  return std::stoul(header.substr(pos + key.size() + 1));
}

inline double parse_double(const std::string& cell) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw ConfigError("bad number '" + cell + "'");
  return v;
}

inline std::vector<double> csv_numbers(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_double(cell));
  return out;
}

}  // namespace detail

template <std::size_t N>
Superposition<N> read_superposition(std::istream& is) {
  std::string header, columns, line;
  std::getline(is, header);
  if (header.rfind("# coherent-superposition", 0) != 0)
    throw ConfigError("not a coherent-superposition record");
  if (detail::header_field(header, "modes") != N)
    throw ConfigError("mode count mismatch in " + header);
  const std::size_t terms = detail::header_field(header, "terms");
  std::getline(is, columns);
  Superposition<N> s;
  for (std::size_t i = 0; i < terms; ++i) {
    if (!std::getline(is, line)) throw ConfigError("truncated superposition record");
    const auto v = detail::csv_numbers(line);
    if (v.size() != 2 + 2 * N) throw ConfigError("bad term row: " + line);
    std::array<cplx, N> amp;
    for (std::size_t m = 0; m < N; ++m) amp[m] = {v[2 + 2 * m], v[3 + 2 * m]};
    s.add({v[0], v[1]}, amp);
  }
  return s;
}

/// Header `# fock-vector cutoff=D tail_mass=x`, then rows n,m,re,im for
/// all D*D amplitudes, row-major in n.
inline void write(std::ostream& os, const FockVector& f) {
  full_precision(os);
  os << "# fock-vector cutoff=" << f.cutoff << " tail_mass=" << f.tail_mass << '\n';
  os << "n,m,re,im\n";
  for (std::size_t n = 0; n < f.cutoff; ++n)
    for (std::size_t m = 0; m < f.cutoff; ++m)
      os << n << ',' << m << ',' << f.amps(n, m).real() << ','
         << f.amps(n, m).imag() << '\n';
}

inline FockVector read_fock(std::istream& is) {
  std::string header, columns, line;
  std::getline(is, header);
  if (header.rfind("# fock-vector", 0) != 0)
    throw ConfigError("not a fock-vector record");
  FockVector f;
  f.cutoff = detail::header_field(header, "cutoff");
  const auto tail = header.find("tail_mass=");
  if (tail == std::string::npos) throw ConfigError("fock header lacks tail_mass");
  f.tail_mass = detail::parse_double(header.substr(tail + 10));
  f.amps = Eigen::MatrixXcd::Zero(f.cutoff, f.cutoff);
  std::getline(is, columns);
  for (std::size_t i = 0; i < f.cutoff * f.cutoff; ++i) {
    if (!std::getline(is, line)) throw ConfigError("truncated fock record");
    const auto v = detail::csv_numbers(line);
    if (v.size() != 4) throw ConfigError("bad fock row: " + line);
    f.amps(static_cast<Eigen::Index>(v[0]), static_cast<Eigen::Index>(v[1])) = {v[2], v[3]};
  }
  return f;
}

}  // namespace eitcat::io
