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

#include <random>
#include <sstream>
#include <string>

#include "eitcat/config.hpp"
#include "eitcat/io.hpp"

using namespace eitcat;

namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in, "test.cfg");
}

std::string message_of(const std::string& text, void (*use)(const Config&)) {
  try {
    use(parse(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

const char* kMinimal =
    "# comment\n"
    "g2n = 1.0   # rad^2/s^2\n"
    "v0 = 1\n"
    "c = 2\n"
    "length = 1\n"
    "mu12 = 0.1\n";

}  // namespace

TEST(Config, ParsesMinimalParameters) {
  const auto cfg = parse(kMinimal);
  const auto p = load_params(cfg);
  EXPECT_EQ(p.g2n, 1.0);
  EXPECT_EQ(p.c, 2.0);
  EXPECT_EQ(p.mu[1][0], 0.1);
  EXPECT_EQ(p.mu[0][0], 0.0);
  EXPECT_TRUE(cfg.unused_keys().empty());
}

TEST(Config, ErrorsNameKeyAndLine) {
  const auto dup = message_of("g2n = 1\ng2n = 2\n", [](const Config&) {});
  EXPECT_NE(dup.find("test.cfg:2"), std::string::npos) << dup;
  EXPECT_NE(dup.find("g2n"), std::string::npos) << dup;

  const auto missing = message_of("g2n = 1\n", [](const Config& c) { load_params(c); });
  EXPECT_NE(missing.find("missing key 'v0'"), std::string::npos) << missing;

  const auto bad = message_of("g2n = 1\nv0 = fast\n", [](const Config& c) { load_params(c); });
  EXPECT_NE(bad.find("test.cfg:2"), std::string::npos) << bad;
  EXPECT_NE(bad.find("'v0'"), std::string::npos) << bad;

  const auto syntax = message_of("g2n 1\n", [](const Config&) {});
  EXPECT_NE(syntax.find("test.cfg:1"), std::string::npos) << syntax;

  const auto shape = message_of("ramp.shape = zigzag\nramp.omega_in = 1\n",
                                [](const Config& c) { load_profile(c, "ramp"); });
  EXPECT_NE(shape.find("ramp.shape"), std::string::npos) << shape;
}

TEST(Config, UnphysicalValuesAreConfigErrors) {
  EXPECT_THROW(load_params(parse("g2n = 1\nv0 = 3\nc = 2\nlength = 1\n")), ConfigError);
  EXPECT_THROW(load_params(parse(std::string(kMinimal) + "mu21 = 0.2\n")), ConfigError);
  EXPECT_THROW(load_profile(parse("h.omega_in = -1\n"), "h"), ConfigError);
  EXPECT_EQ(ConfigError("x").code(), 2);
}

TEST(Config, ProfilesAndAccessors) {
  const auto cfg = parse(
      "ramp.shape = tanh\nramp.omega_in = 10\nramp.omega_out = 0.1\n"
      "ramp.center = 0.5\nramp.width = 0.02\nn = 12\nyes = true\n");
  const auto r = load_profile(cfg, "ramp");
  EXPECT_EQ(r.shape, ProfileShape::TanhRamp);
  EXPECT_EQ(r.omega_out, 0.1);
  EXPECT_EQ(cfg.count("n", 0), 12u);
  EXPECT_TRUE(cfg.flag("yes", false));
  EXPECT_EQ(cfg.count("absent", 7), 7u);
  EXPECT_THROW(cfg.count("ramp.width", 0), ConfigError);
}

TEST(Config, HashTracksText) {
  EXPECT_EQ(parse(kMinimal).hash(), parse(kMinimal).hash());
  EXPECT_NE(parse(kMinimal).hash(), parse(std::string(kMinimal) + "\n").hash());
}

TEST(StateIo, SuperpositionRoundTripIsExact) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    CoherentSuperposition s;
    const int terms = 1 + trial % 5;
    for (int i = 0; i < terms; ++i)
      s.add({u(rng), u(rng)}, {cplx(u(rng), u(rng)), cplx(u(rng), u(rng))});
    std::stringstream buf;
    io::write(buf, s);
    const auto back = io::read_superposition<2>(buf);
    ASSERT_EQ(back.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      ASSERT_EQ(back.terms()[i].coeff, s.terms()[i].coeff);
      ASSERT_EQ(back.terms()[i].amp, s.terms()[i].amp);
    }
  }
}

TEST(StateIo, FockRoundTripIsExact) {
  const auto f = to_fock(CoherentSuperposition{{0.6, {1.0, cplx(0, 0.5)}},
                                               {0.8, {-1.0, 0.3}}},
                         24);
  std::stringstream buf;
  io::write(buf, f);
  const auto back = io::read_fock(buf);
  EXPECT_EQ(back.cutoff, f.cutoff);
  EXPECT_EQ(back.tail_mass, f.tail_mass);
  EXPECT_TRUE(back.amps == f.amps);
}

TEST(StateIo, MalformedRecordsAreRejected) {
  std::istringstream wrong("# fock-vector cutoff=2 tail_mass=0\nn,m,re,im\n0,0,1,0\n");
  EXPECT_THROW(io::read_fock(wrong), ConfigError);
  std::istringstream modes("# coherent-superposition modes=3 terms=0\n");
  EXPECT_THROW(io::read_superposition<2>(modes), ConfigError);
  std::istringstream junk("# coherent-superposition modes=1 terms=1\nc\n1,0,x,0\n");
  EXPECT_THROW(io::read_superposition<1>(junk), ConfigError);
}

TEST(Config, NumberLists) {
  const auto cfg = parse("grid = 0.5 1  2e0\nbad = 1 two\n");
  EXPECT_EQ(cfg.numbers("grid"), (std::vector<double>{0.5, 1.0, 2.0}));
  EXPECT_THROW(cfg.numbers("bad"), ConfigError);
}
