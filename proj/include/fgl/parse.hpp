#pragma once

// Reader for polynomial text in the canonical output syntax, plus
// parentheses: "-1/8*a1*(a1^2 - 8/15*a2)*(a1^2 - 8/3*a2)".

#include <cctype>
#include <string>
#include <string_view>

#include "fgl/mpoly.hpp"

namespace fgl {

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, VarTablePtr vars, Ring ring) : text_(text), vars_(std::move(vars)), ring_(ring) {}

    Poly parse()
    {
        Poly f = expression();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw DomainError("cannot parse polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                          ": " + what);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expression()
    {
        Poly f(vars_, ring_);
        bool first = true;
        for (;;) {
            bool neg = false;
            if (accept('-'))
                neg = true;
            else if (!first && !accept('+'))
                break;
            else if (first)
                accept('+');
            Poly t = product();
            f += neg ? -t : t;
            first = false;
            skip_space();
            if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-'))
                break;
        }
        return f;
    }

    Poly product()
    {
        Poly f = power();
        for (;;) {
            if (accept('*')) {
                f = f * power();
            } else if (accept('/')) {
                Poly d = power();
                if (!d.is_constant() || d.is_zero())
                    fail("division by a non-constant or zero");
                f /= d.constant_term();
            } else {
                break;
            }
        }
        return f;
    }

    Poly power()
    {
        Poly base = atom();
        if (accept('^')) {
            skip_space();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
        }
        return base;
    }

    Poly atom()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly f = expression();
            if (!accept(')'))
                fail("expected ')'");
            return f;
        }
        if (c == '-') {
            ++pos_;
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return Poly::constant(vars_, Rational(Integer(std::string(text_.substr(start, pos_ - start)))), ring_);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            if (!vars_->find(name))
                fail("unknown variable " + name);
            return Poly::variable(vars_, name, ring_);
        }
        fail("unexpected character");
    }

    std::string_view text_;
    VarTablePtr vars_;
    Ring ring_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Poly parse_poly(std::string_view text, VarTablePtr vars, Ring ring = Ring::rationals())
{
    return detail::PolyParser(text, std::move(vars), ring).parse();
}

} // namespace fgl
