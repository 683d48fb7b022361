#pragma once

#include <string>
#include <vector>

namespace linfty {

enum class Grading { Z, Z2 };

Grading parse_grading(const std::string& text);
std::string grading_name(Grading g);

// Basis e_1..e_dim with integer degrees. In Z2 mode the degrees are stored
// reduced mod 2.
class GradedSpace {
public:
    GradedSpace() = default;
    GradedSpace(std::vector<int> degrees, Grading mode);

    // "d1,d2,d3" plus "Z" or "Z2".
    static GradedSpace parse(const std::string& degrees, const std::string& grading);

    int dim() const { return static_cast<int>(degrees_.size()); }
    int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
    int parity(int i) const { return parities_[static_cast<std::size_t>(i)]; }
    bool is_odd(int i) const { return parities_[static_cast<std::size_t>(i)] == 1; }
    const std::vector<int>& degrees() const { return degrees_; }
    Grading mode() const { return mode_; }

    // Same degrees viewed with the coarser Z2 grading.
    GradedSpace as_z2() const;

    std::string str() const;
    friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
        return a.mode_ == b.mode_ && a.degrees_ == b.degrees_;
    }

private:
    std::vector<int> degrees_;
    std::vector<int> parities_;
    Grading mode_ = Grading::Z;
};

// W_i = V_{i+1}: degrees drop by one (Z) or parities flip (Z2).
GradedSpace desuspend(const GradedSpace& sp);
GradedSpace suspend(const GradedSpace& sp);

inline int mod2(int x) { return ((x % 2) + 2) % 2; }

}  // namespace linfty
