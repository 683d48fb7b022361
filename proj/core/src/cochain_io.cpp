#include "linfty/cochain_io.hpp"

#include "linfty/errors.hpp"
#include "linfty/scalar_parse.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace linfty {

namespace {

bool is_tag_at(std::string_view t, std::size_t i) {
    if (i + 2 > t.size()) return false;
    if (t.substr(i, 2) != "ps" && t.substr(i, 2) != "ph") return false;
    std::size_t j = i + 2;
    while (j < t.size() && std::isspace(static_cast<unsigned char>(t[j]))) ++j;
    return j < t.size() && t[j] == '[';
}

class CochainParser {
public:
    CochainParser(std::string_view text, const GradedSpace& sp, ParamList params)
        : text_(text), sp_(sp), params_(std::move(params)) {}

    Coderivation run() {
        Coderivation d(sp_);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '0') {
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ >= text_.size()) return d;
            pos_ = save;
        }
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                sign = text_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                if (pos_ >= text_.size()) break;
                throw ParseError("expected '+' or '-'", pos_);
            }
            skip_ws();
            if (pos_ >= text_.size()) throw ParseError("unexpected end of cochain expression", pos_);
            parse_term(d, sign);
            first = false;
            skip_ws();
            if (pos_ >= text_.size()) break;
        }
        return d;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    int parse_int() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_ || (pos_ == start + 1 && text_[start] == '-')) throw ParseError("expected integer", start);
        if (pos_ - start > 6) throw ParseError("integer too large", start);
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    void parse_term(Coderivation& d, int sign) {
        std::size_t start = pos_;
        if (!is_tag_at(text_, pos_)) throw ParseError("expected 'ps[' or 'ph['", pos_);
        bool odd = text_[pos_ + 1] == 's';
        pos_ += 2;
        expect('[');
        MultiIndex e;
        e.push_back(parse_int());
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            e.push_back(parse_int());
            skip_ws();
        }
        expect(';');
        int target = parse_int();
        expect(']');
        if (static_cast<int>(e.size()) != sp_.dim()) {
            throw ArityError("exponent arity " + std::to_string(e.size()) + " does not match space dimension " +
                             std::to_string(sp_.dim()) + " at position " + std::to_string(start));
        }
        if (target < 1 || target > sp_.dim()) {
            throw ArityError("target " + std::to_string(target) + " out of range at position " +
                             std::to_string(start));
        }
        for (int x : e) {
            if (x < 0) throw ParseError("negative exponent", start);
        }
        BasisCochain c{e, target - 1};
        if (c.arity() < 1) throw ParseError("cochain needs exterior degree at least 1", start);
        if (parity(c, sp_) != (odd ? 1 : 0)) {
            throw ParseError(std::string("tag '") + (odd ? "ps" : "ph") + "' disagrees with the parity of the cochain",
                             start);
        }
        RatFun coeff(sign);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '*') {
            ++pos_;
            std::string_view rest = text_.substr(pos_);
            std::size_t end = scalar_extent(rest);
            ScalarParser sp(rest.substr(0, end), pos_, params_);
            RatFun v = sp.parse_expr();
            if (!sp.at_end()) throw ParseError("unexpected character in coefficient", pos_ + sp.pos());
            coeff *= v;
            pos_ += end;
        }
        d.add(c, coeff.with_params(merge_params(coeff.params(), params_)));
    }

    // Length of the coefficient: up to the first top-level + or - that is
    // not a unary sign.
    static std::size_t scalar_extent(std::string_view s) {
        int depth = 0;
        bool operand_seen = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (c == '(') {
                ++depth;
                operand_seen = false;
            } else if (c == ')') {
                --depth;
                operand_seen = true;
            } else if ((c == '+' || c == '-') && depth == 0 && operand_seen) {
                return i;
            } else if (c == '*' || c == '/' || c == '^' || c == '+' || c == '-') {
                operand_seen = false;
            } else {
                operand_seen = true;
            }
        }
        return s.size();
    }

    std::string_view text_;
    const GradedSpace& sp_;
    ParamList params_;
    std::size_t pos_ = 0;
};

std::string coeff_text(const RatFun& v, bool& negative) {
    negative = false;
    if (v.is_numeric()) {
        Rational q = v.to_rational();
        negative = q.sign() < 0;
        Rational m = q.abs();
        if (m.is_integer()) return m.str();
        return "(" + m.str() + ")";
    }
    if (v.is_polynomial() && v.num().terms().size() == 1) {
        const auto& [e, c] = *v.num().terms().begin();
        negative = c.sign() < 0;
        RatFun m = negative ? -v : v;
        if (c.abs().is_one()) {
            int nz = 0, deg = 0;
            for (int x : e) {
                nz += x != 0;
                deg += x;
            }
            if (nz == 1 && deg == 1) return m.str();
        }
        return "(" + m.str() + ")";
    }
    return "(" + v.str() + ")";
}

}  // namespace

std::vector<std::string> scan_cochain_params(std::string_view text) {
    std::string blanked(text);
    for (std::size_t i = 0; i < blanked.size(); ++i) {
        if (is_tag_at(blanked, i)) {
            blanked[i] = ' ';
            blanked[i + 1] = ' ';
        }
    }
    return scan_param_names(blanked);
}

Coderivation parse_cochain(std::string_view text, const GradedSpace& sp, const std::optional<ParamList>& declared) {
    ParamList params = declared ? *declared : make_params(scan_cochain_params(text));
    return CochainParser(text, sp, params).run();
}

std::string print_basis_cochain(const BasisCochain& c, const GradedSpace& sp) {
    std::ostringstream os;
    os << (parity(c, sp) ? "ps[" : "ph[");
    for (std::size_t i = 0; i < c.exponents.size(); ++i) os << (i ? "," : "") << c.exponents[i];
    os << ";" << c.target + 1 << "]";
    return os.str();
}

std::string print_cochain(const Coderivation& d) {
    if (d.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, v] : d.terms()) {
        bool negative = false;
        std::string coeff;
        bool unit = false;
        if (v.is_numeric() && v.to_rational().abs().is_one()) {
            unit = true;
            negative = v.to_rational().sign() < 0;
        } else {
            coeff = coeff_text(v, negative);
        }
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        os << print_basis_cochain(c, d.space());
        if (!unit) os << "*" << coeff;
    }
    return os.str();
}

std::string cochain_to_json(const Coderivation& d) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [c, v] : d.terms()) {
        terms.push_back({{"exponents", c.exponents}, {"target", c.target + 1}, {"coeff", v.str()}});
    }
    return nlohmann::json{{"terms", terms}}.dump();
}

Coderivation cochain_from_json(const std::string& json, const GradedSpace& sp) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    std::vector<std::string> names;
    for (const auto& t : j.at("terms")) {
        for (auto& n : scan_param_names(t.at("coeff").get<std::string>())) {
            if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
        }
    }
    std::sort(names.begin(), names.end(), natural_less);
    ParamList params = make_params(names);
    Coderivation d(sp);
    for (const auto& t : j.at("terms")) {
        BasisCochain c{t.at("exponents").get<MultiIndex>(), t.at("target").get<int>() - 1};
        d.add(c, parse_ratfun(t.at("coeff").get<std::string>(), params));
    }
    return d;
}

}  // namespace linfty
