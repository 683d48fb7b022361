#include "linfty/graded_space.hpp"

#include "linfty/errors.hpp"

#include <sstream>

namespace linfty {

Grading parse_grading(const std::string& text) {
    if (text == "Z") return Grading::Z;
    if (text == "Z2") return Grading::Z2;
    throw DomainError("unknown grading '" + text + "' (expected Z or Z2)");
}

std::string grading_name(Grading g) { return g == Grading::Z ? "Z" : "Z2"; }

GradedSpace::GradedSpace(std::vector<int> degrees, Grading mode)
    : degrees_(std::move(degrees)), mode_(mode) {
    if (degrees_.empty()) throw DomainError("graded space must have dimension at least 1");
    if (mode_ == Grading::Z2) {
        for (int& d : degrees_) d = mod2(d);
    }
    parities_.reserve(degrees_.size());
    for (int d : degrees_) parities_.push_back(mod2(d));
}

GradedSpace GradedSpace::parse(const std::string& degrees, const std::string& grading) {
    std::vector<int> ds;
    std::stringstream ss(degrees);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
            ds.push_back(v);
        } catch (const std::logic_error&) {
            throw DomainError("invalid degree '" + item + "'");
        }
    }
    return GradedSpace(std::move(ds), parse_grading(grading));
}

GradedSpace GradedSpace::as_z2() const { return GradedSpace(degrees_, Grading::Z2); }

std::string GradedSpace::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < degrees_.size(); ++i) os << (i ? "," : "") << degrees_[i];
    os << ") " << grading_name(mode_);
    return os.str();
}

GradedSpace desuspend(const GradedSpace& sp) {
    std::vector<int> d = sp.degrees();
    for (int& x : d) x = sp.mode() == Grading::Z ? x - 1 : 1 - x;
    return GradedSpace(std::move(d), sp.mode());
}

GradedSpace suspend(const GradedSpace& sp) {
    std::vector<int> d = sp.degrees();
    for (int& x : d) x = sp.mode() == Grading::Z ? x + 1 : 1 - x;
    return GradedSpace(std::move(d), sp.mode());
}

}  // namespace linfty
