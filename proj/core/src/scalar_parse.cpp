#include "linfty/scalar_parse.hpp"

#include "linfty/errors.hpp"

#include <algorithm>
#include <cctype>

namespace linfty {

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<std::string> scan_param_names(std::string_view text) {
    std::vector<std::string> names;
    std::size_t i = 0;
    while (i < text.size()) {
        if (name_start(text[i])) {
            std::size_t j = i;
            while (j < text.size() && name_char(text[j])) ++j;
            std::string n(text.substr(i, j - i));
            if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            while (i < text.size() && name_char(text[i])) ++i;
        } else {
            ++i;
        }
    }
    std::sort(names.begin(), names.end(), natural_less);
    return names;
}

RatFun parse_ratfun(std::string_view text, const std::optional<ParamList>& declared) {
    ParamList params = declared ? *declared : make_params(scan_param_names(text));
    ScalarParser p(text, 0, params);
    RatFun r = p.parse_expr();
    if (!p.at_end()) throw ParseError("unexpected character '" + std::string(1, p.peek()) + "'", p.pos());
    return r;
}

ScalarParser::ScalarParser(std::string_view text, std::size_t offset, ParamList params)
    : text_(text), pos_(0), offset_(offset), params_(std::move(params)) {}

void ScalarParser::skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool ScalarParser::at_end() {
    skip_ws();
    return pos_ >= text_.size();
}

char ScalarParser::peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
}

void ScalarParser::fail(const std::string& msg) const { throw ParseError(msg, offset_ + pos_); }

RatFun ScalarParser::parse_expr() {
    RatFun acc = parse_term();
    for (;;) {
        char c = peek();
        if (c == '+') {
            ++pos_;
            acc += parse_term();
        } else if (c == '-') {
            ++pos_;
            acc -= parse_term();
        } else {
            return acc;
        }
    }
}

RatFun ScalarParser::parse_term() {
    RatFun acc = parse_unary();
    for (;;) {
        char c = peek();
        if (c == '*') {
            ++pos_;
            acc *= parse_unary();
        } else if (c == '/') {
            ++pos_;
            std::size_t at = pos_;
            RatFun d = parse_unary();
            if (d.is_zero()) throw ParseError("division by zero", offset_ + at);
            acc /= d;
        } else {
            return acc;
        }
    }
}

RatFun ScalarParser::parse_unary() {
    char c = peek();
    if (c == '-') {
        ++pos_;
        return -parse_unary();
    }
    if (c == '+') {
        ++pos_;
        return parse_unary();
    }
    return parse_power();
}

RatFun ScalarParser::parse_power() {
    RatFun base = parse_primary();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    bool neg = false;
    bool paren = false;
    if (pos_ < text_.size() && text_[pos_] == '(') {
        paren = true;
        ++pos_;
        skip_ws();
    }
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
        neg = text_[pos_] == '-';
        ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (paren) {
        if (peek() != ')') fail("expected ')'");
        ++pos_;
    }
    if (neg && base.is_zero()) fail("negative power of zero");
    return base.pow(neg ? -e : e);
}

RatFun ScalarParser::parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
        ++pos_;
        RatFun r = parse_expr();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        mpz_class z(std::string(text_.substr(start, pos_ - start)), 10);
        return RatFun(ParamPoly(params_, Rational(z)));
    }
    if (name_start(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (std::find(params_->begin(), params_->end(), name) == params_->end()) {
            throw ParseError("unknown parameter '" + name + "'", offset_ + start);
        }
        return RatFun::variable(params_, name);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
}

}  // namespace linfty
