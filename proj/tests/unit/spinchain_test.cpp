// Copyright 2026 The qtransistor Authors
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

#include "qtransistor/spinchain.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qtransistor/error.hpp"
#include "qtransistor/unitary.hpp"

namespace qtransistor {
namespace {

std::size_t idx(std::string_view label) { return BasisLabel::parse(label).index(); }

TEST(BasisLabel, BitConvention) {
  EXPECT_EQ(idx("udd"), 4u);
  EXPECT_EQ(idx("ddu"), 1u);
  EXPECT_EQ(idx("dud"), 2u);
  EXPECT_EQ(idx("ddd"), 0u);
}

TEST(BasisLabel, IndexRoundTripAndMagnetization) {
  for (int n = 1; n <= 6; ++n) {
    for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
      const auto label = BasisLabel::from_index(k, n);
      const auto back = BasisLabel::from_spins(label.spins());
      EXPECT_EQ(back.index(), k);
      int ups = 0;
      for (Spin s : label.spins()) ups += s == Spin::up;
      EXPECT_EQ(label.magnetization(), ups - (n - ups));
    }
  }
  EXPECT_THROW(BasisLabel::from_index(8, 3), ParameterError);
  EXPECT_THROW(BasisLabel::parse("uxd"), ParameterError);
}

TEST(PauliAt, SingleSiteZ) {
  // sigma_z |u> = +|u>, sigma_z |d> = -|d>.
  const auto z = pauli_at(Pauli::z, 0, 1);
  EXPECT_EQ(z(idx("u"), idx("u")), Complex{1.0});
  EXPECT_EQ(z(idx("d"), idx("d")), Complex{-1.0});
  EXPECT_EQ(z(0, 1), Complex{});
}

TEST(PauliAt, TwoSiteZIsKronWithIdentity) {
  const auto z = pauli_at(Pauli::z, 0, 2);
  EXPECT_EQ(z(idx("uu"), idx("uu")), Complex{1.0});
  EXPECT_EQ(z(idx("ud"), idx("ud")), Complex{1.0});
  EXPECT_EQ(z(idx("du"), idx("du")), Complex{-1.0});
  EXPECT_EQ(z(idx("dd"), idx("dd")), Complex{-1.0});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) EXPECT_EQ(z(i, j), Complex{});
}

TEST(PauliAt, XFlipsTheGateSpin) {
  std::vector<Complex> all_down(8);
  all_down[idx("ddd")] = 1.0;
  const auto out = matvec(pauli_at(Pauli::x, 1, 3), all_down);
  for (std::size_t k = 0; k < 8; ++k)
    EXPECT_EQ(out[k], k == idx("dud") ? Complex{1.0} : Complex{}) << k;
}

TEST(PauliAt, YActsAsRaisingAndLowering) {
  const Complex i{0.0, 1.0};
  const auto y = pauli_at(Pauli::y, 0, 1);
  // sigma_y |u> = i |d>, sigma_y |d> = -i |u>
  EXPECT_EQ(y(idx("d"), idx("u")), i);
  EXPECT_EQ(y(idx("u"), idx("d")), -i);
}

TEST(PauliAt, HermitianUnitaryAndCommutingAcrossSites) {
  const Pauli all[] = {Pauli::x, Pauli::y, Pauli::z};
  for (Pauli a : all) {
    for (int s = 0; s < 3; ++s) {
      const auto p = pauli_at(a, s, 3);
      EXPECT_EQ(hermiticity_deviation(p), 0.0);
      EXPECT_EQ(max_abs_diff(p * p, ComplexMatrix::identity(8)), 0.0);
      for (Pauli b : all)
        for (int s2 = 0; s2 < 3; ++s2)
          if (s2 != s) EXPECT_EQ(max_abs(commutator(p, pauli_at(b, s2, 3))), 0.0);
    }
  }
  EXPECT_THROW(pauli_at(Pauli::x, 3, 3), ParameterError);
  EXPECT_THROW(pauli_at(Pauli::x, -1, 3), ParameterError);
}

TEST(PauliAt, TenSitesReachTheLargestTestedDimension) {
  const auto z = pauli_at(Pauli::z, 9, 10);
  EXPECT_EQ(z.rows(), 1024u);
  EXPECT_EQ(z(1, 1), Complex{1.0});
  EXPECT_EQ(z(0, 0), Complex{-1.0});
  EXPECT_THROW(pauli_at(Pauli::z, 0, 11), DimensionError);
}

TEST(Hamiltonian, ZeroParametersGiveZeroMatrix) {
  EXPECT_EQ(max_abs(hamiltonian(ChainParams::transistor(0.0, 0.0))), 0.0);
}

TEST(Hamiltonian, FlipFlopElementEqualsJ) {
  const auto h = hamiltonian(ChainParams::transistor(1.0, 0.0));
  EXPECT_NEAR(std::abs(h(idx("dud"), idx("udd")) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(idx("ddu"), idx("dud")) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(h(idx("ddu"), idx("udd")), Complex{});
}

TEST(Hamiltonian, MatchesBruteForceConstruction) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 25; ++trial) {
    ChainParams p;
    p.n_sites = 2 + trial % 4;
    p.gate_site = trial % p.n_sites;
    p.omega0 = u(rng);
    p.delta = u(rng);
    p.coupling_j = std::abs(u(rng));
    const auto expected = testing::brute_force_hamiltonian(p.n_sites, p.omega0, p.delta,
                                                           p.coupling_j, p.gate_site);
    EXPECT_LT(max_abs_diff(hamiltonian(p), expected), 1e-14);
  }
}

TEST(Hamiltonian, AllDownEnergy) {
  const double omega0 = 0.7, delta = 2.5, j = 1.3;
  const auto h = hamiltonian(ChainParams::transistor(j, delta, omega0));
  const std::size_t d = idx("ddd");
  EXPECT_NEAR(h(d, d).real(), -(3.0 * omega0 + delta), 1e-14);
  for (std::size_t k = 0; k < 8; ++k)
    if (k != d) EXPECT_EQ(h(k, d), Complex{});
}

TEST(Hamiltonian, RejectsInvalidParams) {
  ChainParams p;
  p.coupling_j = -1.0;
  EXPECT_THROW(hamiltonian(p), ParameterError);
  p = ChainParams{};
  p.gate_site = 3;
  EXPECT_THROW(hamiltonian(p), ParameterError);
  p = ChainParams{};
  p.n_sites = 1;
  EXPECT_THROW(hamiltonian(p), ParameterError);
}

TEST(Hamiltonian, TenSiteChainIsHermitianAndConservesMagnetization) {
  ChainParams p;
  p.n_sites = 10;
  p.gate_site = 5;
  p.omega0 = 0.3;
  p.delta = 1.1;
  p.coupling_j = 0.9;
  const auto h = hamiltonian(p);
  ASSERT_EQ(h.rows(), 1024u);
  EXPECT_EQ(hermiticity_deviation(h), 0.0);
  EXPECT_LT(max_abs(commutator(h, magnetization_operator(10))), 1e-10 * max_abs(h));
}

TEST(Magnetization, Spectrum) {
  const auto m1 = magnetization_operator(1);
  EXPECT_EQ(m1(idx("u"), idx("u")), Complex{1.0});
  EXPECT_EQ(m1(idx("d"), idx("d")), Complex{-1.0});
  const auto m3 = magnetization_operator(3);
  EXPECT_EQ(m3(idx("ddd"), idx("ddd")), Complex{-3.0});
  EXPECT_EQ(m3(idx("udd"), idx("udd")), Complex{-1.0});
  for (int n = 1; n <= 5; ++n) {
    const auto m = magnetization_operator(n);
    for (std::size_t k = 0; k < m.rows(); ++k) {
      const double v = m(k, k).real();
      EXPECT_EQ(std::fmod(v + n, 2.0), 0.0);
      EXPECT_LE(std::abs(v), n);
    }
  }
}

TEST(SymmetryProperty, HamiltonianCommutesWithMagnetization) {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  const auto m = magnetization_operator(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = ChainParams::transistor(std::abs(u(rng)) * 1e-3, u(rng), u(rng));
    const auto h = hamiltonian(p);
    EXPECT_EQ(hermiticity_deviation(h), 0.0);
    EXPECT_LT(max_abs(commutator(h, m)), 1e-10 * max_abs(h));
  }
}

TEST(SymmetryProperty, ProbabilitiesIndependentOfOmega0) {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double j = u(rng), delta = u(rng), t = 4.0 * u(rng);
    const Propagator ref(ChainParams::transistor(j, delta, 0.0));
    const Propagator shifted(ChainParams::transistor(j, delta, 10.0 * u(rng)));
    const PureState psi = source_state(0.6, Complex{0.0, 0.8});
    const auto a = ref.evolve(psi, t);
    const auto b = shifted.evolve(psi, t);
    for (std::size_t k = 0; k < 8; ++k)
      EXPECT_NEAR(std::norm(a.amplitude(k)), std::norm(b.amplitude(k)), 1e-9);
  }
}

TEST(ProductState, SourceEncodings) {
  const auto up = source_state(1.0, 0.0);
  EXPECT_EQ(up.amplitude(idx("udd")), Complex{1.0});
  const auto down = source_state(0.0, 1.0);
  EXPECT_EQ(down.amplitude(idx("ddd")), Complex{1.0});
  const double r = 1.0 / std::numbers::sqrt2;
  const auto plus = source_state(r, r);
  EXPECT_EQ(plus.amplitude(idx("udd")), plus.amplitude(idx("ddd")));
  EXPECT_NEAR(plus.norm(), 1.0, 1e-15);
  EXPECT_THROW(source_state(1.0, 1.0), InvalidStateError);
  const Spin spins[] = {Spin::down, Spin::up, Spin::down};
  EXPECT_EQ(product_state(spins).amplitude(idx("dud")), Complex{1.0});
  EXPECT_EQ(drain_state(1.0, 0.0).amplitude(idx("ddu")), Complex{1.0});
}

TEST(PureStateTest, RejectsBadVectors) {
  EXPECT_THROW(PureState(std::vector<Complex>{1.0, 0.0, 0.0}), InvalidStateError);
  EXPECT_THROW(PureState(std::vector<Complex>{1.0, 1.0}), InvalidStateError);
}

}  // namespace
}  // namespace qtransistor
