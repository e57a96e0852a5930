#include "intcx/witness.hpp"

#include "intcx/core.hpp"
#include "intcx/factorization.hpp"

namespace intcx {

struct ExpressionTree::Node {
  Kind kind = Kind::one;
  BigInt value = 1;
  u64 ones = 1;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

ExpressionTree ExpressionTree::one() {
  static const auto leaf = std::make_shared<const Node>();
  return ExpressionTree(leaf);
}

ExpressionTree ExpressionTree::sum(ExpressionTree left, ExpressionTree right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::sum;
  node->value = left.value() + right.value();
  node->ones = left.ones() + right.ones();
  node->left = std::move(left.node_);
  node->right = std::move(right.node_);
  return ExpressionTree(std::move(node));
}

ExpressionTree ExpressionTree::product(ExpressionTree left, ExpressionTree right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::product;
  node->value = left.value() * right.value();
  node->ones = left.ones() + right.ones();
  node->left = std::move(left.node_);
  node->right = std::move(right.node_);
  return ExpressionTree(std::move(node));
}

ExpressionTree::Kind ExpressionTree::kind() const { return node_->kind; }
const BigInt& ExpressionTree::value() const { return node_->value; }
u64 ExpressionTree::ones() const { return node_->ones; }

ExpressionTree ExpressionTree::left() const {
  if (!node_->left) throw Error("a single 1 has no children");
  return ExpressionTree(node_->left);
}

ExpressionTree ExpressionTree::right() const {
  if (!node_->right) throw Error("a single 1 has no children");
  return ExpressionTree(node_->right);
}

namespace {

ExpressionTree from_table(const ComplexityTable& table, u64 k) {
  const Choice& c = table.choice(k);
  switch (c.kind) {
    case Choice::Kind::one:
      return ExpressionTree::one();
    case Choice::Kind::mul:
      return ExpressionTree::product(from_table(table, c.operand), from_table(table, k / c.operand));
    case Choice::Kind::add:
      return ExpressionTree::sum(from_table(table, k - c.operand), from_table(table, c.operand));
    case Choice::Kind::none:
      break;
  }
  throw InvariantViolation("no recorded choice for " + std::to_string(k));
}

class RunWitness {
 public:
  explicit RunWitness(SingleTargetRun& run) : run_(run) {}

  ExpressionTree tree(u128 v) {
    if (v == 1) return ExpressionTree::one();
    const unsigned fv = run_.f(v);
    if (run_.fprime(v) == fv) return product_tree(v, fv);
    for (u128 b = 1; b < v; ++b) {
      if (unsigned{lower_bound(b)} + lower_bound(v - b) > fv) continue;
      const unsigned fb = run_.f(b);
      if (fb + unsigned{lower_bound(v - b)} > fv) continue;
      const unsigned rest = run_.fprime(v - b);
      if (fb + rest == fv) return ExpressionTree::sum(product_tree(v - b, rest), tree(b));
    }
    throw InvariantViolation("no split of " + to_string(v) + " attains " + std::to_string(fv));
  }

 private:
  // A tree for v whose top operation is a product, using fp = f'(v) ones.
  ExpressionTree product_tree(u128 v, unsigned fp) {
    if (v == 1) return ExpressionTree::one();
    for (u128 j : divisors(factorize(v))) {
      if (j == 1) continue;
      if (j > v / j) break;
      if (unsigned{run_.f(j)} + run_.f(v / j) == fp) return ExpressionTree::product(tree(j), tree(v / j));
    }
    throw InvariantViolation("no factor pair of " + to_string(v) + " attains " + std::to_string(fp));
  }

  SingleTargetRun& run_;
};

void render_into(const ExpressionTree& t, std::string& out) {
  switch (t.kind()) {
    case ExpressionTree::Kind::one:
      out += '1';
      return;
    case ExpressionTree::Kind::sum:
      render_into(t.left(), out);
      out += '+';
      render_into(t.right(), out);
      return;
    case ExpressionTree::Kind::product:
      for (int side = 0; side < 2; ++side) {
        const ExpressionTree operand = side == 0 ? t.left() : t.right();
        if (side == 1) out += '*';
        if (operand.kind() == ExpressionTree::Kind::one) {
          out += '1';
        } else {
          out += '(';
          render_into(operand, out);
          out += ')';
        }
      }
      return;
  }
}

constexpr int kMaxNesting = 10000;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExpressionTree parse() {
    ExpressionTree t = expr(0);
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) ++pos_;
  }

  bool take_times() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      return true;
    }
    if (text_.substr(pos_, 2) == "\xC2\xB7") {
      pos_ += 2;
      return true;
    }
    return false;
  }

  bool take(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExpressionTree expr(int depth) {
    ExpressionTree t = term(depth);
    while (take('+')) t = ExpressionTree::sum(std::move(t), term(depth));
    return t;
  }

  ExpressionTree term(int depth) {
    ExpressionTree t = factor(depth);
    while (take_times()) t = ExpressionTree::product(std::move(t), factor(depth));
    return t;
  }

  ExpressionTree factor(int depth) {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '1') {
      ++pos_;
      return ExpressionTree::one();
    }
    if (text_[pos_] == '(') {
      if (depth >= kMaxNesting) fail("parentheses nested too deeply");
      ++pos_;
      ExpressionTree t = expr(depth + 1);
      if (!take(')')) fail("expected ')'");
      return t;
    }
    fail("expected '1' or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error("position " + std::to_string(position) + ": " + what), position_(position) {}

ExpressionTree reconstruct(const ComplexityTable& table, u64 n) {
  if (!table.has_choices()) throw Error("table has no recorded choices; rebuild it with choice recording on");
  if (n == 0 || n > table.size()) throw Error("witness target outside the table");
  return from_table(table, n);
}

ExpressionTree reconstruct(SingleTargetRun& run, u128 n) {
  if (n == 0) throw Error("0 has no witness");
  return RunWitness(run).tree(n);
}

std::string render(const ExpressionTree& tree) {
  std::string out;
  render_into(tree, out);
  return out;
}

ExpressionTree parse_expression(std::string_view text) { return Parser(text).parse(); }

VerifyResult verify(std::string_view text) {
  const ExpressionTree t = parse_expression(text);
  return {t.value(), t.ones()};
}

}  // namespace intcx
