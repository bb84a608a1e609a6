#pragma once

#include <memory>
#include <string>

namespace swanson {

struct expr_node;

// Closed-form expressions in one variable x for custom profiles and
// generators. Fixed grammar, no general CAS:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?          right-associative exponent
//   atom   := number | 'x' | fn '(' expr ')' | '(' expr ')'
//   fn     := cosh | sinh | tanh | exp | ln | sqrt
//
// Parsed once into an immutable tree; evaluation and symbolic
// differentiation are pure, so instances are safe to share across threads.
class expression {
public:
    static expression parse(const std::string& text);

    double operator()(double x) const;

    // Symbolic d/dx with light constant folding; repeated application gives
    // the second and third derivatives needed by profiles and generators.
    expression derivative() const;

    std::string to_string() const;

private:
    explicit expression(std::shared_ptr<const expr_node> root) : root_(std::move(root)) {}
    std::shared_ptr<const expr_node> root_;
};

} // namespace swanson
