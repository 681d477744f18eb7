#pragma once

/**
 * @file expression.hpp
 * @brief Integrand mini-language f(x, y) with syntactic polynomial-degree detection.
 *
 *     expr    := term (('+' | '-') term)*
 *     term    := unary (('*' | '/') unary)*
 *     unary   := ('+' | '-') unary | power
 *     power   := primary ('^' unary)?
 *     primary := number | 'x' | 'y' | 'pi' | func '(' expr ')' | '(' expr ')'
 *     func    := sqrt | exp | log | sin | cos | abs
 *
 * `^` is right-associative and binds tighter than unary minus (-x^2 == -(x^2)).
 */

#include "errors.hpp"
#include "greens.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace greenquad {

class Expression {
public:
    static Expression parse(std::string_view text);

    double operator()(double x, double y) const { return root_->eval(x, y); }

    /// Total degree when the tree is a polynomial in x and y, else nullopt.
    std::optional<int> polynomial_degree() const { return root_->degree(); }

    Integrand to_integrand() const {
        auto root = root_;
        return {[root](double x, double y) { return root->eval(x, y); }, polynomial_degree()};
    }

private:
    struct Node {
        enum class Kind { Number, X, Y, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
        double value = 0.0;
        std::string func;
        std::shared_ptr<const Node> lhs, rhs;

        double eval(double x, double y) const {
            switch (kind) {
            case Kind::Number: return value;
            case Kind::X: return x;
            case Kind::Y: return y;
            case Kind::Neg: return -lhs->eval(x, y);
            case Kind::Add: return lhs->eval(x, y) + rhs->eval(x, y);
            case Kind::Sub: return lhs->eval(x, y) - rhs->eval(x, y);
            case Kind::Mul: return lhs->eval(x, y) * rhs->eval(x, y);
            case Kind::Div: return lhs->eval(x, y) / rhs->eval(x, y);
            case Kind::Pow: {
                const double e = rhs->eval(x, y);
                const double b = lhs->eval(x, y);
                if (integer_exponent()) return integer_power(b, static_cast<long>(e));
                return std::pow(b, e);
            }
            case Kind::Call: {
                const double a = lhs->eval(x, y);
                if (func == "sqrt") return std::sqrt(a);
                if (func == "exp") return std::exp(a);
                if (func == "log") return std::log(a);
                if (func == "sin") return std::sin(a);
                if (func == "cos") return std::cos(a);
                return std::abs(a);
            }
            }
            return 0.0;
        }

        bool is_constant() const {
            switch (kind) {
            case Kind::Number: return true;
            case Kind::X:
            case Kind::Y: return false;
            case Kind::Neg:
            case Kind::Call: return lhs->is_constant();
            default: return lhs->is_constant() && rhs->is_constant();
            }
        }

        bool integer_exponent() const {
            return kind == Kind::Pow && rhs->kind == Kind::Number && rhs->value >= 0 &&
                   rhs->value == std::floor(rhs->value) && rhs->value <= 1e6;
        }

        std::optional<int> degree() const {
            switch (kind) {
            case Kind::Number: return 0;
            case Kind::X:
            case Kind::Y: return 1;
            case Kind::Neg: return lhs->degree();
            case Kind::Add:
            case Kind::Sub:
            case Kind::Mul: {
                const auto a = lhs->degree(), b = rhs->degree();
                if (!a || !b) return std::nullopt;
                return kind == Kind::Mul ? *a + *b : std::max(*a, *b);
            }
            case Kind::Div: {
                // Division by a numeric constant keeps the polynomial; anything else does not.
                const auto a = lhs->degree();
                if (!a || !rhs->is_constant() || !rhs->degree()) return std::nullopt;
                return a;
            }
            case Kind::Pow: {
                const auto a = lhs->degree();
                if (!a || !integer_exponent()) return std::nullopt;
                return *a * static_cast<int>(rhs->value);
            }
            case Kind::Call: return lhs->is_constant() ? std::optional<int>(0) : std::nullopt;
            }
            return std::nullopt;
        }

        static double integer_power(double b, long e) {
            double result = 1.0;
            while (e > 0) {
                if (e & 1) result *= b;
                b *= b;
                e >>= 1;
            }
            return result;
        }
    };
    using NodePtr = std::shared_ptr<const Node>;

    class Parser {
    public:
        explicit Parser(std::string_view text) : text_(text) {}

        NodePtr parse_all() {
            auto node = expr();
            skip_space();
            if (pos_ != text_.size()) throw SyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
            return node;
        }

    private:
        static std::shared_ptr<Node> make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
            auto n = std::make_shared<Node>();
            n->kind = kind;
            n->lhs = std::move(lhs);
            n->rhs = std::move(rhs);
            return n;
        }

        void skip_space() {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }

        bool accept(char c) {
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == c) {
                ++pos_;
                return true;
            }
            return false;
        }

        NodePtr expr() {
            auto lhs = term();
            for (;;) {
                if (accept('+')) lhs = make(Node::Kind::Add, lhs, term());
                else if (accept('-')) lhs = make(Node::Kind::Sub, lhs, term());
                else return lhs;
            }
        }

        NodePtr term() {
            auto lhs = unary();
            for (;;) {
                if (accept('*')) lhs = make(Node::Kind::Mul, lhs, unary());
                else if (accept('/')) lhs = make(Node::Kind::Div, lhs, unary());
                else return lhs;
            }
        }

        NodePtr unary() {
            if (accept('-')) return make(Node::Kind::Neg, unary());
            if (accept('+')) return unary();
            return power();
        }

        NodePtr power() {
            auto base = primary();
            if (accept('^')) return make(Node::Kind::Pow, base, unary());
            return base;
        }

        NodePtr primary() {
            skip_space();
            if (pos_ >= text_.size()) throw SyntaxError("unexpected end of expression", pos_);
            const char c = text_[pos_];
            if (c == '(') {
                ++pos_;
                auto inner = expr();
                if (!accept(')')) throw SyntaxError("expected ')'", pos_);
                return inner;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
            throw SyntaxError("unexpected '" + std::string(1, c) + "'", pos_);
        }

        NodePtr number() {
            const std::size_t start = pos_;
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
            if (ec != std::errc()) throw SyntaxError("malformed number", start);
            pos_ = static_cast<std::size_t>(ptr - text_.data());
            auto n = make(Node::Kind::Number);
            n->value = value;
            return n;
        }

        NodePtr identifier() {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            if (name == "x") return make(Node::Kind::X);
            if (name == "y") return make(Node::Kind::Y);
            if (name == "pi") {
                auto n = make(Node::Kind::Number);
                n->value = std::numbers::pi;
                return n;
            }
            static constexpr std::string_view functions[] = {"sqrt", "exp", "log", "sin", "cos", "abs"};
            for (auto f : functions) {
                if (name != f) continue;
                if (!accept('(')) throw SyntaxError("expected '(' after " + name, pos_);
                auto arg = expr();
                if (!accept(')')) throw SyntaxError("expected ')'", pos_);
                auto n = make(Node::Kind::Call, arg);
                n->func = name;
                return n;
            }
            throw SyntaxError("unknown identifier '" + name + "'", start);
        }

        std::string_view text_;
        std::size_t pos_ = 0;
    };

    explicit Expression(NodePtr root) : root_(std::move(root)) {}

    NodePtr root_;
};

inline Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse_all()); }

inline Integrand parse_expression(std::string_view text) { return Expression::parse(text).to_integrand(); }

} // namespace greenquad
