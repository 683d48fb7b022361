#pragma once

#include "linfty/cochain.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace linfty {

// term := ("ps"|"ph") "[" int ("," int)* ";" int "]" ["*" scalar-term]
// expr := ["-"] term (("+"|"-") term)*  |  "0"
// ps marks odd cochains and ph even ones; a tag that disagrees with the
// cochain's parity is rejected. Targets are one-based.
Coderivation parse_cochain(std::string_view text, const GradedSpace& sp,
                           const std::optional<ParamList>& declared = std::nullopt);
std::string print_cochain(const Coderivation& d);
std::string print_basis_cochain(const BasisCochain& c, const GradedSpace& sp);
// Scalar names occurring in a cochain expression.
std::vector<std::string> scan_cochain_params(std::string_view text);

// {"terms":[{"exponents":[...],"target":k,"coeff":"..."}]} with one-based target.
std::string cochain_to_json(const Coderivation& d);
Coderivation cochain_from_json(const std::string& json, const GradedSpace& sp);

}  // namespace linfty
