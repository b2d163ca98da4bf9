#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "multisle/error.hpp"
#include "multisle/explorer.hpp"

using namespace msle;

namespace {

/// Walk on the face graph until a coloured face is hit.
double walk_estimate(const HexDomain& d, const std::vector<HexColor>& coloring, std::size_t start, std::size_t walks,
                     Rng& rng) {
  std::size_t black = 0;
  for (std::size_t w = 0; w < walks; ++w) {
    std::size_t f = start;
    while (coloring[f] == HexColor::Undetermined) {
      for (;;) {
        const auto next = d.neighbors(f)[rng() % 6];
        if (next >= 0) {
          f = static_cast<std::size_t>(next);
          break;
        }
      }
    }
    black += coloring[f] == HexColor::Black;
  }
  return static_cast<double>(black) / static_cast<double>(walks);
}

double fraction(const std::map<PlanarPairing, std::size_t>& counts, const PlanarPairing& p, std::size_t n) {
  const auto it = counts.find(p);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
}

}  // namespace

TEST(HexDomain, Discs) {
  const auto two = HexDomain::disc(2, {0, 6});
  EXPECT_EQ(two.face_count(), 19u);
  EXPECT_EQ(two.loop().size(), 12u);
  EXPECT_EQ(two.n_pairs(), 1u);
  const auto five = HexDomain::disc(5, {0, 5, 15, 20});
  EXPECT_EQ(five.face_count(), 91u);
  EXPECT_EQ(five.n_pairs(), 2u);
  EXPECT_THROW(HexDomain::disc(5, {0, 5, 15}), InvalidArgument);
  EXPECT_THROW(HexDomain::disc(5, {0, 5, 5, 20}), InvalidArgument);
  EXPECT_THROW(HexDomain::disc(5, {5, 0, 15, 20}), InvalidArgument);
  EXPECT_THROW(HexDomain::disc(2, {0, 40}), InvalidArgument);
}

TEST(HexDomain, LoopValidation) {
  EXPECT_THROW(HexDomain({{0, 0}, {1, 0}, {3, 0}}, {0, 1}), InvalidArgument);
  // a triangle of three mutually adjacent faces encloses nothing
  EXPECT_THROW(HexDomain({{0, 0}, {1, 0}, {0, 1}}, {0, 1}), InvalidArgument);
  std::vector<Axial> ring;
  const auto d = HexDomain::disc(1, {0, 3});
  for (auto f : d.loop()) ring.push_back(d.faces()[f]);
  std::vector<Axial> reversed(ring.rbegin(), ring.rend());
  EXPECT_THROW(HexDomain(reversed, {0, 3}), InvalidArgument);
  EXPECT_NO_THROW(HexDomain(ring, {0, 3}));
}

TEST(HexDomain, NeighboursAndColouring) {
  const auto d = HexDomain::disc(3, {0, 4, 9, 13});
  for (std::size_t f = 0; f < d.face_count(); ++f) {
    const auto& nb = d.neighbors(f);
    for (int k = 0; k < 6; ++k) {
      if (nb[k] < 0) {
        EXPECT_TRUE(d.on_loop(f));
        continue;
      }
      EXPECT_EQ(d.neighbors(static_cast<std::size_t>(nb[k]))[(k + 3) % 6], static_cast<std::int32_t>(f));
    }
    if (!d.on_loop(f))
      for (int k = 0; k < 6; ++k) EXPECT_GE(nb[k], 0);
  }
  const auto c = d.initial_coloring();
  for (std::size_t i = 0; i < d.loop().size(); ++i) {
    const bool black = (i >= 0 && i < 4) || (i >= 9 && i < 13);
    EXPECT_EQ(c[d.loop()[i]], black ? HexColor::Black : HexColor::White);
  }
  for (std::size_t f = 0; f < d.face_count(); ++f)
    if (!d.on_loop(f)) EXPECT_EQ(c[f], HexColor::Undetermined);
}

TEST(HexDomain, RectangleShape) {
  const auto d = HexDomain::rectangle(29.4, 58.8);
  EXPECT_EQ(d.n_pairs(), 2u);
  EXPECT_NEAR(static_cast<double>(d.face_count()), 2000.0, 100.0);
  for (std::size_t f = 0; f < d.face_count(); ++f) {
    const auto c = d.center(f);
    EXPECT_GE(c[0], -1e-9);
    EXPECT_LE(c[0], 29.4 + 1e-9);
    EXPECT_GE(c[1], -1e-9);
    EXPECT_LE(c[1], 58.8 + 1e-9);
  }
  const auto corner = d.center(d.loop()[d.marks()[0]]);
  EXPECT_LT(std::hypot(corner[0], corner[1]), 2.0);
}

TEST(Hitting, OneStepFixtures) {
  const auto d = HexDomain::disc(1, {0, 4});
  const auto c = d.initial_coloring();
  std::size_t centre = 0;
  while (d.on_loop(centre)) ++centre;
  EXPECT_NEAR(black_hitting_probability(d, c, centre), 4.0 / 6.0, 1e-14);
  auto all_black = c;
  for (auto f : d.loop()) all_black[f] = HexColor::Black;
  EXPECT_NEAR(black_hitting_probability(d, all_black, centre), 1.0, 1e-14);
  EXPECT_THROW(black_hitting_probability(d, c, d.loop()[0]), InvalidArgument);
}

TEST(Hitting, MatchesWalkOnRandomPartialColourings) {
  const auto d = HexDomain::disc(4, {0, 6, 12, 18});
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = d.initial_coloring();
    std::vector<std::size_t> open;
    for (std::size_t f = 0; f < d.face_count(); ++f) {
      if (d.on_loop(f)) continue;
      const double u = uniform01(rng);
      if (u < 0.15) c[f] = HexColor::Black;
      else if (u < 0.3) c[f] = HexColor::White;
      else open.push_back(f);
    }
    ASSERT_FALSE(open.empty());
    const auto start = open[rng() % open.size()];
    const double p = black_hitting_probability(d, c, start);
    const std::size_t walks = 100000;
    const double est = walk_estimate(d, c, start, walks, rng);
    // 4 sigma keeps the family-wise false alarm rate over 20 trials near 0.1%
    EXPECT_NEAR(est, p, 4.0 * std::sqrt(std::max(p * (1 - p), 1e-6) / walks) + 1e-12) << "trial " << trial;
  }
}

TEST(Hitting, DegenerateWithoutColouredFaces) {
  const auto d = HexDomain::disc(2, {0, 6});
  std::vector<HexColor> blank(d.face_count(), HexColor::Undetermined);
  EXPECT_THROW(black_hitting_probability(d, blank, 0), Degenerate);
}

TEST(Explorer, SinglePairAlwaysPairs) {
  const auto d = HexDomain::disc(3, {2, 9});
  const auto counts = estimate_pairing_frequencies(d, 100, 4);
  ASSERT_EQ(counts.size(), 1u);
  EXPECT_EQ(counts.begin()->first.to_string(), "1-2");
  EXPECT_EQ(counts.begin()->second, 100u);
  EXPECT_TRUE(estimate_pairing_frequencies(d, 0, 4).empty());
}

TEST(Explorer, PrecolouredInteriorIsDeterministic) {
  const auto d = HexDomain::disc(2, {0, 3, 6, 9});
  for (auto colour : {HexColor::Black, HexColor::White}) {
    auto c = d.initial_coloring();
    for (std::size_t f = 0; f < d.face_count(); ++f)
      if (!d.on_loop(f)) c[f] = colour;
    Rng a(1), b(2);
    const auto ra = run_explorer(d, c, a);
    const auto rb = run_explorer(d, c, b);
    EXPECT_EQ(ra.random_steps, 0u);
    EXPECT_EQ(ra.pairing, colour == HexColor::Black ? pairing_alpha2() : pairing_alpha1());
    ASSERT_EQ(ra.interfaces.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(ra.interfaces[k].edges, rb.interfaces[k].edges);
    EXPECT_EQ(ra.coloring, c);
  }
}

TEST(Explorer, InterfacesSeparateColours) {
  const auto d = HexDomain::disc(5, {0, 5, 15, 20});
  Rng rng(9);
  for (int run = 0; run < 200; ++run) {
    const auto initial = d.initial_coloring();
    const auto r = run_explorer(d, rng);
    std::set<std::pair<std::size_t, std::size_t>> used;
    std::size_t coloured = 0, initially = 0;
    for (std::size_t f = 0; f < d.face_count(); ++f) {
      coloured += r.coloring[f] != HexColor::Undetermined;
      initially += initial[f] != HexColor::Undetermined;
      if (initial[f] != HexColor::Undetermined) EXPECT_EQ(r.coloring[f], initial[f]);
    }
    EXPECT_EQ(coloured - initially, r.random_steps);
    for (const auto& itf : r.interfaces) {
      EXPECT_EQ(itf.start_mark % 2, 0u);
      EXPECT_EQ(itf.end_mark % 2, 1u);
      for (const auto& [w, b] : itf.edges) {
        EXPECT_EQ(r.coloring[w], HexColor::White);
        EXPECT_EQ(r.coloring[b], HexColor::Black);
        EXPECT_TRUE(used.insert({w, b}).second);
      }
    }
    EXPECT_TRUE(is_planar(r.pairing.pairs()));
    for (const auto& [a, b] : r.pairing.pairs()) EXPECT_EQ((a + b) % 2, 1);
  }
}

TEST(Explorer, ReflectionSymmetricDomainIsBalanced) {
  const auto d = HexDomain::disc(5, {3, 8, 18, 28});
  const std::size_t n = 10000;
  const auto counts = estimate_pairing_frequencies(d, n, 12);
  EXPECT_NEAR(fraction(counts, pairing_alpha1(), n), 0.5, 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST(Explorer, HarmonicObservableIsMartingale) {
  const auto d = HexDomain::disc(5, {0, 5, 15, 20});
  const auto initial = d.initial_coloring();
  const auto probe = static_cast<std::size_t>(d.index({1, -3}));
  const double h0 = black_hitting_probability(d, initial, probe);
  const std::size_t runs = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t r = 0; r < runs; ++r) {
    Rng rng(derive_seed(77, r));
    const auto res = run_explorer(d, rng);
    const double h = res.coloring[probe] == HexColor::Undetermined
                         ? black_hitting_probability(d, res.coloring, probe)
                         : (res.coloring[probe] == HexColor::Black ? 1.0 : 0.0);
    sum += h;
    sum2 += h * h;
  }
  const double mean = sum / runs;
  const double se = std::sqrt((sum2 / runs - mean * mean) / (runs - 1));
  EXPECT_LT(std::abs(mean - h0), 3.0 * se);
}

TEST(Explorer, ScheduleAndSamplerInvariance) {
  const auto d = HexDomain::disc(5, {0, 5, 15, 20});
  const std::size_t n = 10000;
  const auto base = fraction(estimate_pairing_frequencies(d, n, 1), pairing_alpha1(), n);
  const auto seq =
      fraction(estimate_pairing_frequencies(d, n, 2, {Schedule::Sequential, HittingSampler::Dirichlet}), pairing_alpha1(), n);
  const auto walk =
      fraction(estimate_pairing_frequencies(d, n, 3, {Schedule::RoundRobin, HittingSampler::Walk}), pairing_alpha1(), n);
  const double se = std::sqrt(2.0 * base * (1 - base) / n);
  EXPECT_LT(std::abs(base - seq), 3.0 * se);
  EXPECT_LT(std::abs(base - walk), 3.0 * se);
}

TEST(Explorer, SeedDeterminismAndWorkers) {
  const auto d = HexDomain::disc(4, {0, 6, 12, 18});
  const auto a = sample_explorer_pairings(d, 50, 5, {}, 1);
  const auto b = sample_explorer_pairings(d, 50, 5, {}, 3);
  EXPECT_EQ(a, b);
  Rng r1(derive_seed(5, 7));
  EXPECT_EQ(run_explorer(d, r1).pairing, a[7]);
}

TEST(Explorer, OptionNames) {
  EXPECT_EQ(parse_schedule(to_string(Schedule::Sequential)), Schedule::Sequential);
  EXPECT_EQ(parse_sampler(to_string(HittingSampler::Walk)), HittingSampler::Walk);
  EXPECT_THROW(parse_schedule("random"), InvalidArgument);
  EXPECT_THROW(parse_sampler("bogus"), InvalidArgument);
}
