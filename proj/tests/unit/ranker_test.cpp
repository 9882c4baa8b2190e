/*
 * Copyright 2026 The DataSlicer Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dataslicer/error.hpp"
#include "dataslicer/matcher.hpp"
#include "dataslicer/ranker.hpp"
#include "test_support.hpp"

namespace dataslicer {
namespace {

using dstest::Arc;

NodeId id_of(const DataSpecification& s) { return NodeId::for_spec(canonicalize(s)); }

TEST(EdgeWeight, Law) {
  SliceEdge e{NodeId{"a"}, NodeId{"b"}, 0, 1, NavOp::add_select(Slot::kLayer, FieldExpr::simple("x"))};
  EXPECT_DOUBLE_EQ(edge_weight(e), 2.0);
  e.user_count = 4;
  EXPECT_DOUBLE_EQ(edge_weight(e), 1.25);
  e.expert_count = 1;
  EXPECT_DOUBLE_EQ(edge_weight(e), 1.0);
  e.user_count = 0;
  EXPECT_DOUBLE_EQ(edge_weight(e), 1.0);
}

TEST(ShortestPaths, Chain) {
  auto g = dstest::arc_graph(4, {{0, 1, 1.0}, {1, 2, 1.5}, {2, 3, 2.0}});
  auto d = shortest_paths(g, g.ordered_ids()[0]);
  EXPECT_DOUBLE_EQ(*d[g.ordered_ids()[3]], 4.5);
  auto back = shortest_paths(g, g.ordered_ids()[3]);
  EXPECT_FALSE(back[g.ordered_ids()[0]]);  // edges are directed
  EXPECT_DOUBLE_EQ(*back[g.ordered_ids()[3]], 0.0);
}

TEST(ShortestPaths, ExpertChain) {
  auto g = dstest::arc_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
  auto d = shortest_paths(g, g.ordered_ids()[0]);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(*d[g.ordered_ids()[i]], static_cast<double>(i));
}

TEST(ShortestPaths, IsolatedSource) {
  auto g = dstest::arc_graph(4, {{1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 2.0}});
  auto d = shortest_paths(g, g.ordered_ids()[0]);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_FALSE(d[g.ordered_ids()[i]]);
}

TEST(ShortestPathsProperty, SparseGraphsUpToTenNodes) {
  dstest::Rng rng(64);
  const double weights[] = {1.0, 1.25, 1.5, 2.0};
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 7 + rng() % 4;
    std::vector<Arc> arcs;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v && rng() % 5 == 0) arcs.push_back({u, v, weights[rng() % 4]});
      }
    }
    auto g = dstest::arc_graph(n, arcs);
    auto got = shortest_paths(g, g.ordered_ids()[0]);
    auto want = dstest::brute_force_distances(n, arcs, 0);
    for (std::size_t v = 0; v < n; ++v) {
      auto d = got[g.ordered_ids()[v]];
      ASSERT_EQ(d.has_value(), want[v].has_value());
      if (d) ASSERT_NEAR(*d, *want[v], 1e-9);
    }
  }
}

TEST(ShortestPaths, PrefersExpertDetour) {
  // 0->2 directly by a single user costs 2, via 1 on expert edges costs 2 too; a
  // second user on the direct arc makes it cheaper.
  auto g = dstest::arc_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.5}});
  EXPECT_DOUBLE_EQ(*shortest_paths(g, g.ordered_ids()[0])[g.ordered_ids()[2]], 1.5);
}

TEST(ShortestPaths, UnknownSource) {
  auto g = dstest::arc_graph(2, {});
  try {
    shortest_paths(g, NodeId{"zz"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownNode);
  }
}

TEST(ShortestPathsProperty, AgreesWithSimplePathEnumeration) {
  dstest::Rng rng(61);
  const double weights[] = {1.0, 1.25, 1.5, 2.0};
  for (int i = 0; i < 2000; ++i) {
    std::size_t n = 1 + rng() % 6;
    std::vector<Arc> arcs;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v && rng() % 3 == 0) arcs.push_back({u, v, weights[rng() % 4]});
      }
    }
    auto g = dstest::arc_graph(n, arcs);
    std::size_t s = rng() % n;
    auto got = shortest_paths(g, g.ordered_ids()[s]);
    auto want = dstest::brute_force_distances(n, arcs, s);
    for (std::size_t v = 0; v < n; ++v) {
      auto d = got[g.ordered_ids()[v]];
      ASSERT_EQ(d.has_value(), want[v].has_value());
      if (d) ASSERT_NEAR(*d, *want[v], 1e-9);
    }
  }
}

TEST(ShortestPathsProperty, MultiSourceIsPointwiseMinimum) {
  dstest::Rng rng(62);
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 2 + rng() % 7;
    std::vector<Arc> arcs;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v && rng() % 3 == 0) arcs.push_back({u, v, 1.0 + static_cast<double>(rng() % 4) / 4});
      }
    }
    auto g = dstest::arc_graph(n, arcs);
    std::vector<NodeId> sources = {g.ordered_ids()[0], g.ordered_ids()[n - 1]};
    auto multi = shortest_paths(g, sources);
    auto a = shortest_paths(g, sources[0]);
    auto b = shortest_paths(g, sources[1]);
    for (const auto& id : g.ordered_ids()) {
      std::optional<double> want = a[id];
      if (b[id] && (!want || *b[id] < *want)) want = b[id];
      ASSERT_EQ(multi[id], want);
    }
  }
}

TEST(Rank, Fig3) {
  auto g = build_graph({dstest::fig3_sequence()}, "task1");
  auto f = dstest::fig3_specs();
  auto matched = match_data_slices(g, canonicalize(dstest::fig1b_spec(true))).ids();
  auto r = rank_data_slices(g, matched, 2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].id, id_of(f.d23));
  EXPECT_EQ(*r[0].path_distance, 0.0);
  EXPECT_EQ(r[1].id, id_of(f.d9));
  EXPECT_EQ(*r[1].path_distance, 1.0);
  EXPECT_FALSE(r[0].via_fill || r[1].via_fill);

  auto filled = rank_data_slices(g, matched, 3);
  ASSERT_EQ(filled.size(), 3u);
  EXPECT_EQ(filled[2].id, id_of(f.d14));
  EXPECT_TRUE(filled[2].via_fill);
  EXPECT_DOUBLE_EQ(*filled[2].path_distance, 2.0);
  EXPECT_TRUE(rank_data_slices(g, matched, 0).empty());
}

TEST(Rank, ThresholdIsStrict) {
  auto g = dstest::arc_graph(3, {{0, 1, 1.0}, {0, 2, 1.0}}, {0, 3000, 3001});
  auto r = rank_data_slices(g, {g.ordered_ids()[0]}, 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].display_index, 2u);
}

TEST(Rank, VotesCount) {
  auto g = dstest::arc_graph(3, {{0, 1, 1.0}, {0, 2, 2.0}}, {0, 3500, 2000});
  g = upvote(g, g.ordered_ids()[2]);
  auto r = rank_data_slices(g, {g.ordered_ids()[0]}, 2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].display_index, 1u);
  EXPECT_EQ(r[1].display_index, 2u);
  EXPECT_DOUBLE_EQ(r[1].effective_interestingness, 5000.0);
}

TEST(Rank, FillReportsUnreachableAsNull) {
  auto g = dstest::arc_graph(3, {}, {5000, 100, 4000});
  auto r = rank_data_slices(g, {g.ordered_ids()[1]}, 3);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].display_index, 0u);
  EXPECT_TRUE(r[0].via_fill);
  EXPECT_FALSE(r[0].path_distance);
  EXPECT_EQ(r[1].display_index, 2u);
  EXPECT_EQ(r[2].display_index, 1u);
  EXPECT_DOUBLE_EQ(*r[2].path_distance, 0.0);
}

TEST(Rank, IsolatedMatchFillsByInterestingness) {
  // node 0 is matched and isolated; 1..3 are interesting but unreachable
  auto g = dstest::arc_graph(4, {{1, 2, 1.0}}, {0, 4000, 9000, 6000});
  auto r = rank_data_slices(g, {g.ordered_ids()[0]}, 2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].display_index, 2u);
  EXPECT_EQ(r[1].display_index, 3u);
  EXPECT_TRUE(r[0].via_fill && r[1].via_fill);
}

TEST(Rank, SingleUpvoteMeetsButDoesNotPassThreshold) {
  auto g = dstest::arc_graph(2, {{0, 1, 1.0}}, {0, 0});
  auto target = g.ordered_ids()[1];
  g = upvote(g, target);
  EXPECT_DOUBLE_EQ(g.node(target).effective_interestingness(3000), 3000.0);
  auto r = rank_data_slices(g, {g.ordered_ids()[0]}, 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].via_fill);
  g = upvote(g, target);
  r = rank_data_slices(g, {g.ordered_ids()[0]}, 1);
  EXPECT_EQ(r[0].id, target);
  EXPECT_FALSE(r[0].via_fill);
}

TEST(Rank, SelfRecommendation) {
  auto g = dstest::arc_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {5000, 0, 0});
  auto r = rank_data_slices(g, {g.ordered_ids()[0]}, 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].display_index, 0u);
  EXPECT_EQ(*r[0].path_distance, 0.0);
}

TEST(Rank, Errors) {
  auto g = dstest::arc_graph(2, {});
  EXPECT_THROW(rank_data_slices(g, {}, 2), Error);
  EXPECT_THROW(rank_data_slices(g, {NodeId{"nope"}}, 2), Error);
}

TEST(RankProperty, ThresholdAndFill) {
  dstest::Rng rng(63);
  for (int i = 0; i < 500; ++i) {
    std::size_t n = 1 + rng() % 9;
    std::vector<Arc> arcs;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v && rng() % 4 == 0) arcs.push_back({u, v, 1.0 + static_cast<double>(rng() % 3) / 2});
      }
    }
    std::vector<std::int64_t> dwell;
    for (std::size_t k = 0; k < n; ++k) dwell.push_back(static_cast<std::int64_t>(rng() % 7) * 1000);
    auto g = dstest::arc_graph(n, arcs, dwell);
    double T = 3000;
    std::size_t M = rng() % 5;
    std::vector<NodeId> matched = {g.ordered_ids()[rng() % n]};
    auto dist = shortest_paths(g, matched);
    auto r = rank_data_slices(g, matched, M, T);

    std::size_t eligible = 0;
    for (const auto& id : g.ordered_ids()) eligible += (dist[id] && g.node(id).effective_interestingness(T) > T);
    ASSERT_EQ(r.size(), std::min(M, n));
    std::set<NodeId> seen;
    bool filling = false;
    for (std::size_t k = 0; k < r.size(); ++k) {
      ASSERT_TRUE(seen.insert(r[k].id).second);
      ASSERT_EQ(r[k].path_distance, dist[r[k].id]);
      if (r[k].via_fill) {
        filling = true;
      } else {
        ASSERT_FALSE(filling);
        ASSERT_GT(r[k].effective_interestingness, T);
        ASSERT_TRUE(r[k].path_distance);
        if (k > 0) ASSERT_LE(*r[k - 1].path_distance, *r[k].path_distance);
      }
    }
    std::size_t primary = static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](const auto& x) { return !x.via_fill; }));
    ASSERT_EQ(primary, std::min(M, eligible));
  }
}

}  // namespace
}  // namespace dataslicer
