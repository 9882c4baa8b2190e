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

#include "dataslicer/field.hpp"

#include <cctype>
#include <optional>

#include "dataslicer/error.hpp"

namespace dataslicer {

struct FieldExpr::Node {
  FieldKind kind;
  std::string name;
  Aggregate agg = Aggregate::kSum;
  FieldOp op = FieldOp::kConcat;
  std::vector<FieldExpr> children;
  std::string rendering;
  bool has_aggregate = false;
};

std::string_view aggregate_name(Aggregate agg) {
  switch (agg) {
    case Aggregate::kSum: return "SUM";
    case Aggregate::kMin: return "MIN";
    case Aggregate::kMax: return "MAX";
    case Aggregate::kAvg: return "AVG";
  }
  return "SUM";
}

std::string_view field_op_symbol(FieldOp op) {
  switch (op) {
    case FieldOp::kConcat: return "+";
    case FieldOp::kCross: return "*";
    case FieldOp::kNest: return "/";
  }
  return "+";
}

namespace {

constexpr std::string_view kTimesSign = "\xC3\x97";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_reserved(char c) {
  return c == '(' || c == ')' || c == '+' || c == '*' || c == '/' || c == '"';
}

bool needs_quoting(std::string_view name) {
  if (name.empty() || is_space(name.front()) || is_space(name.back())) return true;
  if (name.find(kTimesSign) != std::string_view::npos) return true;
  for (char c : name) {
    if (is_reserved(c)) return true;
  }
  return false;
}

std::string render_name(const std::string& name) {
  if (!needs_quoting(name)) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::optional<Aggregate> aggregate_from_keyword(std::string_view word) {
  std::string upper(word);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "SUM") return Aggregate::kSum;
  if (upper == "MIN") return Aggregate::kMin;
  if (upper == "MAX") return Aggregate::kMax;
  if (upper == "AVG") return Aggregate::kAvg;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FieldExpr parse_all() {
    FieldExpr expr = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return expr;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kFormatError, "invalid field expression '" + std::string(text_) + "': " + why,
                "offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  bool at_times_sign() const { return text_.substr(pos_, kTimesSign.size()) == kTimesSign; }

  FieldExpr parse_expr() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a field");
    if (text_[pos_] == '(') {
      ++pos_;
      FieldExpr left = parse_expr();
      skip_space();
      FieldOp op;
      if (pos_ < text_.size() && text_[pos_] == '+') {
        op = FieldOp::kConcat;
        ++pos_;
      } else if (pos_ < text_.size() && text_[pos_] == '*') {
        op = FieldOp::kCross;
        ++pos_;
      } else if (at_times_sign()) {
        op = FieldOp::kCross;
        pos_ += kTimesSign.size();
      } else if (pos_ < text_.size() && text_[pos_] == '/') {
        op = FieldOp::kNest;
        ++pos_;
      } else {
        fail("expected '+', '*' or '/'");
      }
      FieldExpr right = parse_expr();
      expect(')');
      return FieldExpr::complex(op, std::move(left), std::move(right));
    }
    if (text_[pos_] == '"') return FieldExpr::simple(parse_quoted());

    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_reserved(text_[pos_]) && !at_times_sign()) ++pos_;
    std::string_view word = text_.substr(start, pos_ - start);
    while (!word.empty() && is_space(word.back())) word.remove_suffix(1);
    if (word.empty()) fail("empty attribute name");
    if (pos_ < text_.size() && text_[pos_] == '(') {
      auto agg = aggregate_from_keyword(word);
      if (!agg) fail("unknown aggregate '" + std::string(word) + "'");
      ++pos_;
      FieldExpr inner = parse_expr();
      expect(')');
      return FieldExpr::aggregated(*agg, std::move(inner));
    }
    return FieldExpr::simple(std::string(word));
  }

  std::string parse_quoted() {
    ++pos_;
    std::string name;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated quoted name");
      char c = text_[pos_++];
      if (c == '"') {
        if (pos_ < text_.size() && text_[pos_] == '"') {
          name += '"';
          ++pos_;
          continue;
        }
        break;
      }
      name += c;
    }
    if (name.empty()) fail("empty attribute name");
    return name;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldExpr FieldExpr::simple(std::string name) {
  if (name.empty()) throw Error(ErrorCode::kInvalidArgument, "attribute name must not be empty");
  auto node = std::make_shared<Node>();
  node->kind = FieldKind::kSimple;
  node->rendering = render_name(name);
  node->name = std::move(name);
  return FieldExpr(std::move(node));
}

FieldExpr FieldExpr::aggregated(Aggregate agg, FieldExpr inner) {
  auto node = std::make_shared<Node>();
  node->kind = FieldKind::kAggregated;
  node->agg = agg;
  node->rendering = std::string(aggregate_name(agg)) + "(" + inner.canonical() + ")";
  node->has_aggregate = true;
  node->children.push_back(std::move(inner));
  return FieldExpr(std::move(node));
}

FieldExpr FieldExpr::complex(FieldOp op, FieldExpr left, FieldExpr right) {
  auto node = std::make_shared<Node>();
  node->kind = FieldKind::kComplex;
  node->op = op;
  node->rendering = "(" + left.canonical() + std::string(field_op_symbol(op)) + right.canonical() + ")";
  node->has_aggregate = left.contains_aggregate() || right.contains_aggregate();
  node->children.push_back(std::move(left));
  node->children.push_back(std::move(right));
  return FieldExpr(std::move(node));
}

FieldExpr FieldExpr::parse(std::string_view text) { return Parser(text).parse_all(); }

FieldKind FieldExpr::kind() const noexcept { return node_->kind; }

const std::string& FieldExpr::name() const {
  if (node_->kind != FieldKind::kSimple) throw Error(ErrorCode::kInvalidArgument, "not a simple field: " + canonical());
  return node_->name;
}

Aggregate FieldExpr::aggregate() const {
  if (node_->kind != FieldKind::kAggregated) {
    throw Error(ErrorCode::kInvalidArgument, "not an aggregated field: " + canonical());
  }
  return node_->agg;
}

FieldOp FieldExpr::op() const {
  if (node_->kind != FieldKind::kComplex) throw Error(ErrorCode::kInvalidArgument, "not a complex field: " + canonical());
  return node_->op;
}

const FieldExpr& FieldExpr::inner() const {
  if (node_->kind != FieldKind::kAggregated) {
    throw Error(ErrorCode::kInvalidArgument, "not an aggregated field: " + canonical());
  }
  return node_->children[0];
}

const FieldExpr& FieldExpr::left() const {
  if (node_->kind != FieldKind::kComplex) throw Error(ErrorCode::kInvalidArgument, "not a complex field: " + canonical());
  return node_->children[0];
}

const FieldExpr& FieldExpr::right() const {
  if (node_->kind != FieldKind::kComplex) throw Error(ErrorCode::kInvalidArgument, "not a complex field: " + canonical());
  return node_->children[1];
}

const std::string& FieldExpr::canonical() const noexcept { return node_->rendering; }

bool FieldExpr::contains_aggregate() const noexcept { return node_->has_aggregate; }

std::vector<std::string> FieldExpr::attributes() const {
  std::vector<std::string> out;
  if (node_->kind == FieldKind::kSimple) {
    out.push_back(node_->name);
    return out;
  }
  for (const auto& child : node_->children) {
    auto sub = child.attributes();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

}  // namespace dataslicer
