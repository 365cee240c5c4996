#pragma once

#include <string>
#include <vector>

namespace sba {

// Outcome of a structural check. `condition` names the first violated clause.
struct Verdict {
    bool pass = true;
    std::string condition;
    std::string detail;
    std::vector<std::string> witnesses;

    static Verdict ok() { return {}; }
    static Verdict fail(std::string condition, std::string detail, std::vector<std::string> witnesses = {}) {
        return Verdict{false, std::move(condition), std::move(detail), std::move(witnesses)};
    }
    explicit operator bool() const { return pass; }
};

}  // namespace sba
