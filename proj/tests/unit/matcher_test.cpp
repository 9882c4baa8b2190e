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

#include "dataslicer/error.hpp"
#include "dataslicer/matcher.hpp"
#include "test_support.hpp"

namespace dataslicer {
namespace {

using dstest::Fs;

NodeId id_of(const DataSpecification& s) { return NodeId::for_spec(canonicalize(s)); }

DataSliceGraph fig3_graph() { return build_graph({dstest::fig3_sequence()}, "task1"); }

// Independent: pool selected fields and count per-component edit scripts by BFS.
std::size_t oracle_distance(const AbstractSpec& a, const AbstractSpec& b) {
  auto pool = [](const AbstractSpec& s) {
    std::vector<FieldExpr> out = s.layers;
    if (s.x) out.push_back(*s.x);
    if (s.y) out.push_back(*s.y);
    return out;
  };
  return dstest::bfs_edit_distance(pool(a), pool(b)) +
         dstest::bfs_edit_distance(a.filter_descriptors, b.filter_descriptors) +
         dstest::bfs_edit_distance(a.grouping, b.grouping);
}

TEST(FieldSetDistance, SymmetricDifference) {
  EXPECT_EQ(field_set_distance(Fs({"a", "b"}), Fs({"b", "c"})), 2u);
  EXPECT_EQ(field_set_distance({}, Fs({"a", "AVG(a)"})), 2u);
  EXPECT_EQ(field_set_distance(Fs({"a"}), Fs({"a"})), 0u);
}

TEST(FieldSetDistance, OneRemoval) {
  EXPECT_EQ(field_set_distance(Fs({"AVG(mag)", "SUM(nr)"}), Fs({"AVG(mag)"})), 1u);
  EXPECT_EQ(field_set_distance({}, {}), 0u);
}

TEST(FieldSetDistanceProperty, MatchesBfsEditScript) {
  dstest::Rng rng(53);
  auto attrs = dstest::attribute_pool(6);
  for (int i = 0; i < 300; ++i) {
    std::vector<FieldExpr> a, b;
    for (int k = 0, n = static_cast<int>(rng() % 9); k < n; ++k) {
      auto f = dstest::random_field(rng, attrs);
      if (std::find(a.begin(), a.end(), f) == a.end()) a.push_back(f);
    }
    for (int k = 0, n = static_cast<int>(rng() % 9); k < n; ++k) {
      auto f = dstest::random_field(rng, attrs);
      if (std::find(b.begin(), b.end(), f) == b.end()) b.push_back(f);
    }
    ASSERT_EQ(field_set_distance(a, b), dstest::bfs_edit_distance(a, b));
  }
}

TEST(Match, MapQueryFindsD8AndD23) {
  auto g = fig3_graph();
  auto f = dstest::fig3_specs();
  auto r = match_data_slices(g, canonicalize(dstest::fig1b_spec(true)));
  EXPECT_EQ(r.min_distance, 5u);
  std::vector<NodeId> want = {id_of(f.d8), id_of(f.d23)};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(r.ids(), want);
  for (const auto& n : r.nodes) EXPECT_EQ(n.distance, 5u);
}

TEST(Match, ExactNodeIsAtZero) {
  auto g = fig3_graph();
  auto f = dstest::fig3_specs();
  auto r = match_data_slices(g, canonicalize(f.d24));
  EXPECT_EQ(r.min_distance, 0u);
  ASSERT_EQ(r.nodes.size(), 1u);
  EXPECT_EQ(r.nodes[0].id, id_of(f.d24));
}

TEST(Match, AxisSwapIsInvisible) {
  auto g = fig3_graph();
  auto spec = dstest::fig1b_spec(true);
  auto swapped = spec;
  std::swap(swapped.x, swapped.y);
  EXPECT_EQ(match_data_slices(g, canonicalize(spec)), match_data_slices(g, canonicalize(swapped)));
}

TEST(Match, CapAndErrors) {
  auto g = fig3_graph();
  auto r = match_data_slices(g, AbstractSpec{}, 1);
  EXPECT_LE(r.nodes.size(), 1u);
  try {
    match_data_slices(g, AbstractSpec{}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  try {
    match_data_slices(DataSliceGraph("t"), AbstractSpec{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGraph);
  }
}

TEST(Match, CustomDistance) {
  auto g = fig3_graph();
  auto r = match_data_slices(g, AbstractSpec{}, 10, [](const AbstractSpec&, const AbstractSpec&) { return 7u; });
  EXPECT_EQ(r.min_distance, 7u);
  EXPECT_EQ(r.nodes.size(), 6u);
}

TEST(MatchProperty, AgreesWithBruteForceScan) {
  dstest::Rng rng(51);
  auto attrs = dstest::attribute_pool(4);
  for (int i = 0; i < 100; ++i) {
    std::vector<SessionSequence> seqs;
    for (int k = 0; k < 3; ++k) {
      seqs.push_back(dstest::random_sequence(rng, "s" + std::to_string(k), Role::kRegular, "t", 2 + rng() % 5, attrs));
    }
    auto g = build_graph(seqs, "t");
    auto q = dstest::random_abstract(rng, attrs);
    std::size_t M = 1 + rng() % 4;
    std::size_t best = SIZE_MAX;
    for (const auto& [id, n] : g.nodes()) best = std::min(best, oracle_distance(q, n.spec));
    std::vector<std::size_t> want;
    for (const auto& id : g.ordered_ids()) {
      if (oracle_distance(q, g.node(id).spec) == best && want.size() < M) want.push_back(g.node(id).display_index);
    }
    auto r = match_data_slices(g, q, M);
    ASSERT_EQ(r.min_distance, best);
    std::vector<std::size_t> got;
    for (const auto& n : r.nodes) got.push_back(n.display_index);
    ASSERT_EQ(got, want);
  }
}

TEST(SliceDistanceProperty, MetricAxioms) {
  dstest::Rng rng(52);
  auto attrs = dstest::attribute_pool(5);
  for (int i = 0; i < 1000; ++i) {
    auto a = dstest::random_abstract(rng, attrs);
    auto b = dstest::random_abstract(rng, attrs);
    auto c = dstest::random_abstract(rng, attrs);
    ASSERT_EQ(slice_distance(a, b), oracle_distance(a, b));
    ASSERT_EQ(slice_distance(a, a), 0u);
    ASSERT_EQ(slice_distance(a, b), slice_distance(b, a));
    ASSERT_LE(slice_distance(a, c), slice_distance(a, b) + slice_distance(b, c));
  }
}

}  // namespace
}  // namespace dataslicer
