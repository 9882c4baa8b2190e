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

#include "dataslicer/error.hpp"
#include "dataslicer/field.hpp"
#include "test_support.hpp"

namespace dataslicer {
namespace {

using dstest::F;

TEST(FieldExpr, RendersCanonically) {
  EXPECT_EQ(FieldExpr::simple("magnitude").canonical(), "magnitude");
  EXPECT_EQ(FieldExpr::aggregated(Aggregate::kAvg, FieldExpr::simple("magnitude")).canonical(), "AVG(magnitude)");
  EXPECT_EQ(FieldExpr::aggregated(Aggregate::kSum, FieldExpr::simple("number of records")).canonical(),
            "SUM(number of records)");
  auto c = FieldExpr::complex(FieldOp::kCross, FieldExpr::simple("a"),
                              FieldExpr::complex(FieldOp::kNest, FieldExpr::simple("b"), FieldExpr::simple("c")));
  EXPECT_EQ(c.canonical(), "(a*(b/c))");
  EXPECT_EQ(FieldExpr::simple("a+b").canonical(), "\"a+b\"");
}

TEST(FieldExpr, ParseToleratesSpellingVariants) {
  EXPECT_EQ(F("avg ( magnitude )"), F("AVG(magnitude)"));
  EXPECT_EQ(F("( a × b )"), F("(a*b)"));
  EXPECT_EQ(F("SUM(number of records)").inner().name(), "number of records");
  EXPECT_EQ(F("\"a+b\"").name(), "a+b");
}

TEST(FieldExpr, ParseRejectsMalformed) {
  for (const char* bad : {"", "AVG(", "(a+b", "a b)", "COUNT(x)x", "(a?b)", "AVG()"}) {
    try {
      F(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kFormatError) << bad;
    }
  }
}

TEST(FieldExpr, KindsAndAttributes) {
  auto f = F("(AVG(depth)+place)");
  EXPECT_EQ(f.kind(), FieldKind::kComplex);
  EXPECT_TRUE(f.contains_aggregate());
  EXPECT_EQ(f.attributes(), (std::vector<std::string>{"depth", "place"}));
  EXPECT_FALSE(F("place").contains_aggregate());
  EXPECT_EQ(F("MIN(depth)").aggregate(), Aggregate::kMin);
}

TEST(FieldExpr, EqualityFollowsRendering) {
  EXPECT_EQ(F("AVG(mag)"), FieldExpr::aggregated(Aggregate::kAvg, FieldExpr::simple("mag")));
  EXPECT_NE(F("AVG(mag)"), F("SUM(mag)"));
  EXPECT_NE(F("AVG(mag)"), F("mag"));
  EXPECT_LT(F("AVG(mag)"), F("mag"));
}

TEST(FieldExprProperty, RenderParseRoundTrip) {
  dstest::Rng rng(11);
  std::vector<std::string> attrs = {"a", "number of records", "x(y)", " padded ", "q\"uote", "lat"};
  for (int i = 0; i < 2000; ++i) {
    FieldExpr f = dstest::random_field(rng, attrs, 0.5);
    if (i % 3 == 0) f = FieldExpr::complex(FieldOp::kConcat, f, dstest::random_field(rng, attrs));
    FieldExpr back = FieldExpr::parse(f.canonical());
    ASSERT_EQ(back.canonical(), f.canonical());
    ASSERT_EQ(back.kind(), f.kind());
  }
}

}  // namespace
}  // namespace dataslicer
