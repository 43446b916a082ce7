/*
 * Copyright 2026 The bcmax Authors
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
 */

#ifndef BCMAX_EXPRESSION_HPP
#define BCMAX_EXPRESSION_HPP

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "bcmax/errors.hpp"

namespace bcmax {

// Arithmetic expressions in the single variable n, for user-written
// threshold and scale sequences (e.g. "1 - 1/n", "ln(n)/n",
// "ln(n)^2/n").  The grammar is fixed and closed:
//
//   expr    := term  (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' factor)?          -- right associative
//   primary := number | 'n' | 'ln' '(' expr ')' | '(' expr ')'
//
// No names other than n/ln, no assignment, no calls: nothing a scenario
// file can do beyond arithmetic.

class Expression {
 public:
  /// Parses or throws config_error with a character-offset location.
  static Expression parse(const std::string& text) {
    Parser p(text);
    Expression e;
    e.text_ = text;
    e.root_ = p.parse_expr();
    p.expect_end();
    return e;
  }

  double eval(long n) const { return root_->eval(static_cast<double>(n)); }
  const std::string& text() const { return text_; }

 private:
  struct Node {
    virtual ~Node() = default;
    virtual double eval(double n) const = 0;
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct Const final : Node {
    double v;
    explicit Const(double v) : v(v) {}
    double eval(double) const override { return v; }
  };
  struct Var final : Node {
    double eval(double n) const override { return n; }
  };
  struct Unary final : Node {
    NodePtr a;
    explicit Unary(NodePtr a) : a(std::move(a)) {}
    double eval(double n) const override { return -a->eval(n); }
  };
  struct Ln final : Node {
    NodePtr a;
    explicit Ln(NodePtr a) : a(std::move(a)) {}
    double eval(double n) const override { return std::log(a->eval(n)); }
  };
  struct Binary final : Node {
    char op;
    NodePtr a, b;
    Binary(char op, NodePtr a, NodePtr b)
        : op(op), a(std::move(a)), b(std::move(b)) {}
    double eval(double n) const override {
      const double x = a->eval(n);
      const double y = b->eval(n);
      switch (op) {
        case '+': return x + y;
        case '-': return x - y;
        case '*': return x * y;
        case '/': return x / y;
        case '^': return std::pow(x, y);
      }
      return 0.0;
    }
  };

  class Parser {
   public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr parse_expr() {
      NodePtr lhs = parse_term();
      for (;;) {
        skip_ws();
        if (peek() == '+' || peek() == '-') {
          const char op = take();
          lhs = std::make_shared<Binary>(op, lhs, parse_term());
        } else {
          return lhs;
        }
      }
    }

    void expect_end() {
      skip_ws();
      if (pos_ != s_.size()) {
        fail("unexpected trailing input");
      }
    }

   private:
    NodePtr parse_term() {
      NodePtr lhs = parse_factor();
      for (;;) {
        skip_ws();
        if (peek() == '*' || peek() == '/') {
          const char op = take();
          lhs = std::make_shared<Binary>(op, lhs, parse_factor());
        } else {
          return lhs;
        }
      }
    }

    NodePtr parse_factor() {
      skip_ws();
      if (peek() == '-') {
        take();
        return std::make_shared<Unary>(parse_factor());
      }
      return parse_power();
    }

    NodePtr parse_power() {
      NodePtr base = parse_primary();
      skip_ws();
      if (peek() == '^') {
        take();
        return std::make_shared<Binary>('^', base, parse_factor());
      }
      return base;
    }

    NodePtr parse_primary() {
      skip_ws();
      const char c = peek();
      if (c == '(') {
        take();
        NodePtr inner = parse_expr();
        skip_ws();
        if (peek() != ')') fail("expected ')'");
        take();
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        return parse_number();
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        const std::size_t start = pos_;
        std::string word;
        while (pos_ < s_.size() &&
               std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
          word.push_back(s_[pos_++]);
        }
        if (word == "n") return std::make_shared<Var>();
        if (word == "ln") {
          skip_ws();
          if (peek() != '(') fail("ln requires parentheses: ln(...)");
          take();
          NodePtr inner = parse_expr();
          skip_ws();
          if (peek() != ')') fail("expected ')' closing ln(");
          take();
          return std::make_shared<Ln>(inner);
        }
        pos_ = start;
        fail("unknown name '" + word + "' (grammar allows numbers, n, ln)");
      }
      fail(c == '\0' ? "unexpected end of expression"
                     : std::string("unexpected character '") + c + "'");
      return nullptr;  // unreachable
    }

    NodePtr parse_number() {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '.')) {
        ++pos_;
      }
      // optional exponent part: 1e-3
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t p = pos_ + 1;
        if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
        if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
          ++p;
          while (p < s_.size() &&
                 std::isdigit(static_cast<unsigned char>(s_[p]))) {
            ++p;
          }
          pos_ = p;
        }
      }
      const std::string lit = s_.substr(start, pos_ - start);
      try {
        std::size_t used = 0;
        const double v = std::stod(lit, &used);
        if (used != lit.size()) throw std::invalid_argument(lit);
        return std::make_shared<Const>(v);
      } catch (const std::exception&) {
        pos_ = start;
        fail("bad numeric literal '" + lit + "'");
      }
      return nullptr;  // unreachable
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char take() { return s_[pos_++]; }
    void skip_ws() {
      while (pos_ < s_.size() &&
             std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      }
    }
    [[noreturn]] void fail(const std::string& msg) const {
      throw config_error(msg, "expression offset " + std::to_string(pos_));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
  };

  NodePtr root_;
  std::string text_;
};

}  // namespace bcmax

#endif  // BCMAX_EXPRESSION_HPP
