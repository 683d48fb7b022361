#pragma once

#include "linfty/ratfun.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace linfty {

// Grammar: integers, a/b, names [A-Za-z][A-Za-z0-9_]*, + - * / ^ and
// parentheses. Exponents after ^ are (optionally signed) integers.
// Without a declared list the parameters are the names that occur, in
// natural order; with one, unknown names are rejected.
RatFun parse_ratfun(std::string_view text, const std::optional<ParamList>& declared = std::nullopt);

// Parameter names occurring in the text, deduplicated, natural order.
std::vector<std::string> scan_param_names(std::string_view text);

class ScalarParser {
public:
    ScalarParser(std::string_view text, std::size_t offset, ParamList params);
    RatFun parse_expr();
    std::size_t pos() const { return pos_; }
    bool at_end();
    char peek();

private:
    RatFun parse_term();
    RatFun parse_unary();
    RatFun parse_power();
    RatFun parse_primary();
    void skip_ws();
    [[noreturn]] void fail(const std::string& msg) const;

    std::string_view text_;
    std::size_t pos_;
    std::size_t offset_;
    ParamList params_;
};

}  // namespace linfty
