#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "intcx/all_targets.hpp"
#include "intcx/single_target.hpp"
#include "intcx/types.hpp"

namespace intcx {

using BigInt = boost::multiprecision::cpp_int;

/// An expression over {1, +, *}. Immutable; subtrees are shared.
class ExpressionTree {
 public:
  enum class Kind { one, sum, product };

  static ExpressionTree one();
  static ExpressionTree sum(ExpressionTree left, ExpressionTree right);
  static ExpressionTree product(ExpressionTree left, ExpressionTree right);

  Kind kind() const;
  /// Children; only valid for sums and products.
  ExpressionTree left() const;
  ExpressionTree right() const;

  const BigInt& value() const;
  u64 ones() const;

 private:
  struct Node;
  explicit ExpressionTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Builds the witness from recorded table choices. Throws Error when the
/// table has no choices or n is out of range.
ExpressionTree reconstruct(const ComplexityTable& table, u64 n);

/// Rederives choices from a finished single-target run. Multiplication wins
/// ties, then the smallest factor or addend.
ExpressionTree reconstruct(SingleTargetRun& run, u128 n);

/// ASCII form: "1", "+", "*". Product operands are parenthesized unless they
/// are a single 1; sums are never parenthesized at top level.
std::string render(const ExpressionTree& tree);

struct VerifyResult {
  BigInt value;
  u64 ones = 0;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses an expression over 1, +, * (or the middle dot), parentheses and
/// whitespace, and evaluates it exactly.
VerifyResult verify(std::string_view text);

/// Parses into a tree; same grammar as verify.
ExpressionTree parse_expression(std::string_view text);

}  // namespace intcx
