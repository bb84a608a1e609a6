#include "swanson/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

#include "swanson/errors.hpp"

namespace swanson {

enum class node_kind { number, var, add, sub, mul, div, pow, neg, call };

enum class fn_id { cosh_fn, sinh_fn, tanh_fn, exp_fn, ln_fn, sqrt_fn };

struct expr_node {
    node_kind kind;
    double value = 0.0;                    // number
    fn_id fn = fn_id::cosh_fn;             // call
    std::shared_ptr<const expr_node> lhs;  // unary operand / call argument
    std::shared_ptr<const expr_node> rhs;
};

namespace {

using node_ptr = std::shared_ptr<const expr_node>;

node_ptr make_number(double v) {
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::number;
    n->value = v;
    return n;
}

node_ptr make_var() {
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::var;
    return n;
}

node_ptr make_call(fn_id fn, node_ptr arg) {
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::call;
    n->fn = fn;
    n->lhs = std::move(arg);
    return n;
}

bool is_number(const node_ptr& n, double v) {
    return n->kind == node_kind::number && n->value == v;
}

node_ptr make_binary(node_kind kind, node_ptr l, node_ptr r) {
    // Constant folding keeps repeated differentiation from ballooning.
    if (l->kind == node_kind::number && r->kind == node_kind::number) {
        switch (kind) {
            case node_kind::add: return make_number(l->value + r->value);
            case node_kind::sub: return make_number(l->value - r->value);
            case node_kind::mul: return make_number(l->value * r->value);
            case node_kind::div: return make_number(l->value / r->value);
            case node_kind::pow: return make_number(std::pow(l->value, r->value));
            default: break;
        }
    }
    switch (kind) {
        case node_kind::add:
            if (is_number(l, 0.0)) return r;
            if (is_number(r, 0.0)) return l;
            break;
        case node_kind::sub:
            if (is_number(r, 0.0)) return l;
            break;
        case node_kind::mul:
            if (is_number(l, 0.0) || is_number(r, 0.0)) return make_number(0.0);
            if (is_number(l, 1.0)) return r;
            if (is_number(r, 1.0)) return l;
            break;
        case node_kind::div:
            if (is_number(l, 0.0)) return make_number(0.0);
            if (is_number(r, 1.0)) return l;
            break;
        case node_kind::pow:
            if (is_number(r, 1.0)) return l;
            if (is_number(r, 0.0)) return make_number(1.0);
            break;
        default:
            break;
    }
    auto n = std::make_shared<expr_node>();
    n->kind = kind;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

node_ptr make_neg(node_ptr operand) {
    if (operand->kind == node_kind::number) return make_number(-operand->value);
    if (operand->kind == node_kind::neg) return operand->lhs;
    auto n = std::make_shared<expr_node>();
    n->kind = node_kind::neg;
    n->lhs = std::move(operand);
    return n;
}

class parser {
public:
    explicit parser(const std::string& text) : text_(text) {}

    node_ptr run() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw parse_error("unexpected '" + std::string(1, text_[pos_]) +
                              "' at offset " + std::to_string(pos_) + " in expression");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    node_ptr parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            if (eat('+')) lhs = make_binary(node_kind::add, lhs, parse_term());
            else if (eat('-')) lhs = make_binary(node_kind::sub, lhs, parse_term());
            else return lhs;
        }
    }

    node_ptr parse_term() {
        auto lhs = parse_factor();
        for (;;) {
            if (eat('*')) lhs = make_binary(node_kind::mul, lhs, parse_factor());
            else if (eat('/')) lhs = make_binary(node_kind::div, lhs, parse_factor());
            else return lhs;
        }
    }

    node_ptr parse_factor() {
        if (eat('-')) return make_neg(parse_factor());
        return parse_power();
    }

    node_ptr parse_power() {
        auto base = parse_atom();
        if (eat('^')) return make_binary(node_kind::pow, base, parse_factor());
        return base;
    }

    node_ptr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of expression");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            if (!eat(')')) throw parse_error("missing ')' in expression");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        throw parse_error("unexpected '" + std::string(1, c) + "' at offset " +
                          std::to_string(pos_) + " in expression");
    }

    node_ptr parse_number() {
        const char* start = text_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start) throw parse_error("malformed number in expression");
        pos_ += static_cast<std::size_t>(end - start);
        return make_number(v);
    }

    node_ptr parse_name() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (name == "x") return make_var();
        fn_id fn;
        if (name == "cosh") fn = fn_id::cosh_fn;
        else if (name == "sinh") fn = fn_id::sinh_fn;
        else if (name == "tanh") fn = fn_id::tanh_fn;
        else if (name == "exp") fn = fn_id::exp_fn;
        else if (name == "ln") fn = fn_id::ln_fn;
        else if (name == "sqrt") fn = fn_id::sqrt_fn;
        else throw parse_error("unknown name '" + name + "' in expression");
        if (!eat('(')) throw parse_error("expected '(' after '" + name + "'");
        auto arg = parse_expr();
        if (!eat(')')) throw parse_error("missing ')' after argument of '" + name + "'");
        return make_call(fn, arg);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

double eval_node(const expr_node& n, double x) {
    switch (n.kind) {
        case node_kind::number: return n.value;
        case node_kind::var: return x;
        case node_kind::add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
        case node_kind::sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
        case node_kind::mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
        case node_kind::div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
        case node_kind::pow: return std::pow(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
        case node_kind::neg: return -eval_node(*n.lhs, x);
        case node_kind::call: {
            double a = eval_node(*n.lhs, x);
            switch (n.fn) {
                case fn_id::cosh_fn: return std::cosh(a);
                case fn_id::sinh_fn: return std::sinh(a);
                case fn_id::tanh_fn: return std::tanh(a);
                case fn_id::exp_fn: return std::exp(a);
                case fn_id::ln_fn: return std::log(a);
                case fn_id::sqrt_fn: return std::sqrt(a);
            }
        }
    }
    return 0.0;
}

node_ptr diff_node(const node_ptr& n) {
    switch (n->kind) {
        case node_kind::number: return make_number(0.0);
        case node_kind::var: return make_number(1.0);
        case node_kind::add: return make_binary(node_kind::add, diff_node(n->lhs), diff_node(n->rhs));
        case node_kind::sub: return make_binary(node_kind::sub, diff_node(n->lhs), diff_node(n->rhs));
        case node_kind::mul:
            return make_binary(node_kind::add,
                               make_binary(node_kind::mul, diff_node(n->lhs), n->rhs),
                               make_binary(node_kind::mul, n->lhs, diff_node(n->rhs)));
        case node_kind::div:
            // (u/v)' = u'/v - u v'/v^2
            return make_binary(node_kind::sub,
                               make_binary(node_kind::div, diff_node(n->lhs), n->rhs),
                               make_binary(node_kind::div,
                                           make_binary(node_kind::mul, n->lhs, diff_node(n->rhs)),
                                           make_binary(node_kind::mul, n->rhs, n->rhs)));
        case node_kind::pow: {
            const auto& u = n->lhs;
            const auto& v = n->rhs;
            if (v->kind == node_kind::number) {
                // (u^c)' = c u^(c-1) u'
                return make_binary(node_kind::mul,
                                   make_binary(node_kind::mul, make_number(v->value),
                                               make_binary(node_kind::pow, u, make_number(v->value - 1.0))),
                                   diff_node(u));
            }
            // u^v = exp(v ln u): (u^v)' = u^v (v' ln u + v u'/u)
            auto term1 = make_binary(node_kind::mul, diff_node(v), make_call(fn_id::ln_fn, u));
            auto term2 = make_binary(node_kind::div, make_binary(node_kind::mul, v, diff_node(u)), u);
            return make_binary(node_kind::mul, n, make_binary(node_kind::add, term1, term2));
        }
        case node_kind::neg: return make_neg(diff_node(n->lhs));
        case node_kind::call: {
            auto du = diff_node(n->lhs);
            node_ptr outer;
            switch (n->fn) {
                case fn_id::cosh_fn: outer = make_call(fn_id::sinh_fn, n->lhs); break;
                case fn_id::sinh_fn: outer = make_call(fn_id::cosh_fn, n->lhs); break;
                case fn_id::tanh_fn: {
                    // tanh' = 1 - tanh^2
                    auto t = make_call(fn_id::tanh_fn, n->lhs);
                    outer = make_binary(node_kind::sub, make_number(1.0),
                                        make_binary(node_kind::mul, t, t));
                    break;
                }
                case fn_id::exp_fn: outer = n; break;
                case fn_id::ln_fn: outer = make_binary(node_kind::div, make_number(1.0), n->lhs); break;
                case fn_id::sqrt_fn:
                    outer = make_binary(node_kind::div, make_number(0.5), n);
                    break;
            }
            return make_binary(node_kind::mul, outer, du);
        }
    }
    return make_number(0.0);
}

void print_node(const expr_node& n, std::string& out) {
    switch (n.kind) {
        case node_kind::number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", n.value);
            out += buf;
            return;
        }
        case node_kind::var: out += 'x'; return;
        case node_kind::neg:
            out += "(-";
            print_node(*n.lhs, out);
            out += ')';
            return;
        case node_kind::call: {
            static const char* names[] = {"cosh", "sinh", "tanh", "exp", "ln", "sqrt"};
            out += names[static_cast<int>(n.fn)];
            out += '(';
            print_node(*n.lhs, out);
            out += ')';
            return;
        }
        default: {
            char op = '?';
            switch (n.kind) {
                case node_kind::add: op = '+'; break;
                case node_kind::sub: op = '-'; break;
                case node_kind::mul: op = '*'; break;
                case node_kind::div: op = '/'; break;
                case node_kind::pow: op = '^'; break;
                default: break;
            }
            out += '(';
            print_node(*n.lhs, out);
            out += op;
            print_node(*n.rhs, out);
            out += ')';
            return;
        }
    }
}

} // namespace

expression expression::parse(const std::string& text) {
    return expression(parser(text).run());
}

double expression::operator()(double x) const { return eval_node(*root_, x); }

expression expression::derivative() const { return expression(diff_node(root_)); }

std::string expression::to_string() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

} // namespace swanson
