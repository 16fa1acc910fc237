#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "testspace/error.hpp"
#include "testspace/net.hpp"

using namespace testspace;

namespace {

std::set<std::vector<double>> as_set(const std::vector<Vector>& pts) {
  std::set<std::vector<double>> out;
  for (const auto& p : pts) out.insert(p.coords());
  return out;
}

double min_pair_distance(const NormedSpace& s, const std::vector<Vector>& pts) {
  double best = kInfinity;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::min(best, s.distance(pts[i], pts[j]));
    }
  }
  return best;
}

}  // namespace

TEST(Net, MaxNormPlaneKeepsIntegerLattice) {
  const NormedSpace s = NormedSpace::lp(kInfinity, 2);
  const Net net = build_net(s, 1.0, 2.0, 2);
  std::set<std::vector<double>> lattice;
  for (int x = -2; x <= 2; ++x) {
    for (int y = -2; y <= 2; ++y) lattice.insert({double(x), double(y)});
  }
  EXPECT_EQ(as_set(net.points), lattice);
  EXPECT_GE(min_pair_distance(s, net.points), 1.0);
}

TEST(Net, OriginFirstAndNonEmpty) {
  for (const char* d : {"lp:1:2", "lp:2:3", "lp:inf:3"}) {
    const Net net = build_net(parse_space_descriptor(d), 1.0, 1.01);
    ASSERT_FALSE(net.points.empty());
    EXPECT_EQ(net.points[0], Vector(net.space.dimension()));
  }
}

TEST(Net, RealLineLattice) {
  const Net net = build_net(NormedSpace::lp(2, 1), 1.0, 2.0);
  EXPECT_EQ(as_set(net.points), (std::set<std::vector<double>>{{-2}, {-1}, {0}, {1}, {2}}));
}

TEST(Net, SeparatedAndInsideBall) {
  for (const char* d : {"lp:1:2", "lp:2:2", "lp:inf:2", "lp:2:3"}) {
    const NormedSpace s = parse_space_descriptor(d);
    const Net net = build_net(s, 1.0, 3.0);
    EXPECT_GE(min_pair_distance(s, net.points), 1.0 * (1 - kThresholdSlack)) << d;
    for (const auto& p : net.points) EXPECT_LE(s.norm(p), 3.0 * (1 + kThresholdSlack)) << d;
    EXPECT_TRUE(is_greedy_maximal(net)) << d;
    EXPECT_GE(net.rho, net.delta);
  }
}

TEST(Net, ProbesCoveredWithinRho) {
  const Net net = build_net(NormedSpace::lp(2, 2), 1.0, 3.0, 4);
  Rng rng(21);
  const NetReport rep = verify_net(net, 10'000, rng);
  EXPECT_EQ(rep.probes, 10'000u);
  EXPECT_LE(rep.max_probe_gap, net.rho);
}

TEST(Net, ProbeGapWithinRhoAcrossSpaces) {
  Rng rng(22);
  for (const char* d : {"lp:1:2", "lp:inf:2", "lp:2:3", "lp:inf:3", "lp:1.5:2"}) {
    for (double r : {2.0, 3.0}) {
      const Net net = build_net(parse_space_descriptor(d), 1.0, r);
      EXPECT_LE(verify_net(net, 2000, rng).max_probe_gap, net.rho) << d << " r=" << r;
    }
  }
}

TEST(Net, MinSeparationOfMaxNormLattice) {
  const Net net = build_net(NormedSpace::lp(kInfinity, 2), 1.0, 2.0, 2);
  Rng rng(1);
  EXPECT_DOUBLE_EQ(verify_net(net, 10, rng).min_separation, 1.0);
}

TEST(Net, SinglePointNetProbeGap) {
  // The builder needs r > delta, so the net {0} of 0.5B is assembled directly.
  const Net net{NormedSpace::lp(2, 2), 1.0, 0.5, 4, {Vector(2)}, 0.5, 1.0};
  Rng rng(3);
  EXPECT_LE(verify_net(net, 1000, rng).max_probe_gap, 0.5);
}

TEST(Net, RequiresRadiusAboveDelta) {
  EXPECT_THROW(build_net(NormedSpace::lp(2, 2), 1.0, 0.5), ValidationError);
}

TEST(Net, Deterministic) {
  const NormedSpace s = NormedSpace::lp(1.5, 3);
  const Net a = build_net(s, 1.0, 2.5);
  const Net b = build_net(s, 1.0, 2.5);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.covering_certificate, b.covering_certificate);
}

TEST(Net, RejectsBadParameters) {
  const NormedSpace s = NormedSpace::lp(2, 2);
  EXPECT_THROW(build_net(s, 0.0, 2.0), ValidationError);
  EXPECT_THROW(build_net(s, 1.0, -1.0), ValidationError);
  EXPECT_THROW(build_net(s, 1.0, 2.0, 1), ValidationError);
}

TEST(NearestNet, OutsideBallMapsToOrigin) {
  const Net net = build_net(NormedSpace::lp(2, 2), 1.0, 2.0);
  EXPECT_EQ(nearest_net_point(net, Vector{5, 0}), Vector(2));
}

TEST(NearestNet, NetPointMapsToItself) {
  const Net net = build_net(NormedSpace::lp(2, 2), 1.0, 2.0);
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    EXPECT_EQ(nearest_net_index(net, net.points[i]), i);
  }
}

TEST(NearestNet, MaxNormLatticeExhaustive) {
  const NormedSpace s = NormedSpace::lp(kInfinity, 2);
  const Net net = build_net(s, 1.0, 2.0, 2);
  const Vector y{0.3, 0.4};
  std::size_t best = 0;
  for (std::size_t i = 1; i < net.points.size(); ++i) {
    if (s.distance(net.points[i], y) < s.distance(net.points[best], y)) best = i;
  }
  EXPECT_EQ(net.points[best], (Vector{0, 0}));
  EXPECT_EQ(nearest_net_point(net, y), (Vector{0, 0}));
}
