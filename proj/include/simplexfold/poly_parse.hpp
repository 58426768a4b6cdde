#pragma once

// Small infix parser for exact polynomials: "x*(1-y)*(3-4*x)^2 + 1/2".
// Grammar: sum := term (('+'|'-') term)*;
// term := unary (('*' unary) | ('/' number) | power)*, adjacency multiplies;
// unary := ('-'|'+') unary | power; power := atom ('^' int)?;
// atom := number ('/' number)? | name | '(' sum ')'.
// Besides the given names, x1..xn always address the variables by index.

#include "simplexfold/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexfold {

class PolyParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    ExactPoly parse() {
        ExactPoly p = sum();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw PolyParseError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool starts_atom() {
        skip();
        if (pos_ >= s_.size())
            return false;
        const char c = s_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
    }

    ExactPoly sum() {
        ExactPoly acc = term();
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    ExactPoly term() {
        ExactPoly acc = unary();
        for (;;) {
            if (eat('*')) {
                acc = acc * unary();
            } else if (eat('/')) {
                skip();
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    fail("only division by a number is supported");
                const Integer den = integer();
                if (den == 0)
                    fail("zero denominator");
                acc = acc * Rational(Integer(1), den);
            } else if (starts_atom()) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    ExactPoly power() {
        ExactPoly base = atom();
        if (eat('^')) {
            skip();
            const auto start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }

    ExactPoly unary() {
        if (eat('-'))
            return -unary();
        if (eat('+'))
            return unary();
        return power();
    }

    Integer integer() {
        skip();
        const auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected integer");
        return Integer(s_.substr(start, pos_ - start));
    }

    ExactPoly atom() {
        skip();
        if (eat('(')) {
            ExactPoly inner = sum();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            Integer num = integer();
            Integer den(1);
            skip();
            // a '/' directly followed by a digit is a rational literal
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                den = integer();
                if (den == 0)
                    fail("zero denominator");
            }
            return ExactPoly::constant(vars_.size(), Rational(num, den));
        }
        const auto start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            fail("expected number, variable or '('");
        const std::string name = s_.substr(start, pos_ - start);
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name)
                return ExactPoly::variable(vars_.size(), i);
        if (name.size() > 1 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            const auto idx = std::stoul(name.substr(1));
            if (idx >= 1 && idx <= vars_.size())
                return ExactPoly::variable(vars_.size(), idx - 1);
        }
        fail("unknown variable '" + name + "'");
    }

    std::string s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Default variable names: x (n=1), x y (n=2), x y z (n=3), else x1..xn.
inline std::vector<std::string> default_var_names(std::size_t n) {
    if (n == 1)
        return {"x"};
    if (n == 2)
        return {"x", "y"};
    if (n == 3)
        return {"x", "y", "z"};
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i)
        v.push_back("x" + std::to_string(i));
    return v;
}

inline ExactPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
    return detail::PolyParser(text, vars).parse();
}

inline ExactPoly parse_polynomial(const std::string& text, std::size_t n) {
    return parse_polynomial(text, default_var_names(n));
}

} // namespace simplexfold
