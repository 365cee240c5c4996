#pragma once

#include <string>
#include <vector>

#include "sba/quiver_core/quiver.hpp"

namespace sba::quiver_core {

enum class IsoStatus { Isomorphic, NotIsomorphic, BudgetExhausted };

struct IsoResult {
    IsoStatus status = IsoStatus::NotIsomorphic;
    bool identity = false;
    // Indexed by ids of the first algebra.
    std::vector<VertexId> vertex_map;
    std::vector<ArrowId> arrow_map;
    // Each arrow a is sent to arrow_scale[a] * arrow_map[a], with scale +1 or -1.
    std::vector<int> arrow_scale;
    std::string detail;

    explicit operator bool() const { return status == IsoStatus::Isomorphic; }
};

// Searches for a quiver isomorphism preserving special vertices that carries the ideal of
// `a` onto the ideal of `b` after rescaling arrows by signs. Ideals are compared through
// normal forms: with equal dimensions, inclusion of the image generators suffices.
// `budget` bounds the number of search nodes.
IsoResult are_isomorphic(const BoundQuiver& a, const BoundQuiver& b, long budget = 2'000'000);

std::string describe(const IsoResult& r, const Quiver& a, const Quiver& b);

}  // namespace sba::quiver_core
