#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lpmult/harmonic_core.hpp"

namespace lpmult::cli {

struct ExprNode;

// Scalar torus symbol parsed from text. Variables k1..kn, the vector k
// (only as abs(k), the Euclidean norm), constants i and pi, operators
// + - * / ^ and functions abs sqrt log exp sin cos sign.
class TorusExpression {
 public:
  TorusExpression(const std::string& text, int dimension);
  Complex operator()(const std::vector<int>& k) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  int dimension_;
  std::shared_ptr<const ExprNode> root_;
};

}  // namespace lpmult::cli
