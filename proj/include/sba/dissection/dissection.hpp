#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sba/quiver_core/poly.hpp"
#include "sba/quiver_core/quiver.hpp"
#include "sba/skew_gentle/skew_gentle.hpp"
#include "sba/trivext/trivext.hpp"
#include "sba/verdict.hpp"

namespace sba::dissection {

using quiver_core::BoundQuiver;
using quiver_core::Path;
using quiver_core::Poly;
using quiver_core::Relation;

enum class ArcKind { Regular, Special, Pendant };

struct Arc {
    std::string label;
    ArcKind kind = ArcKind::Regular;
};

// Side value standing for the boundary segment of a polygon.
inline constexpr int kBoundary = -1;

// Sides in counterclockwise order; each entry is an arc index or kBoundary.
struct Polygon {
    std::vector<int> sides;
    int line = 0;
};

struct Puncture {
    std::string label;
    std::vector<int> arcs;  // one entry per incident arc end
};

struct OrbifoldDissection {
    std::vector<Arc> arcs;
    std::vector<Polygon> polygons;
    // As declared in the input; checked against the gluing by validate_dissection.
    std::vector<Puncture> punctures;

    std::optional<int> find_arc(std::string_view label) const;
    // Arc sides of polygon i, starting right after the boundary side. Requires exactly one
    // boundary side.
    std::vector<int> arc_sides(int polygon) const;
    // A single arc side, not pendant.
    bool is_trivial(int polygon) const;
};

struct DissectionTuple {
    // Quiver with angle arrows, pendant loops and one closing arrow bP<i> per non-trivial
    // polygon; relations of families (1)-(3); every rotation of every closed polygon path.
    skew_gentle::SgTuple tuple;
    // Family (4): differences of closed polygon paths starting at the same non-special arc.
    std::vector<Relation> differences;
    // Polygon index of each closing arrow, in polygon order.
    std::vector<int> closed_polygons;
};

// Position of a contraction-addition move inside one polygon.
struct MovePosition {
    int polygon = 0;
    // Gap after the angle-th arc side; the last gap is where the boundary already sits.
    std::optional<int> angle;
    // Pendant arc whose endpoint receives the new boundary component.
    std::optional<int> pendant;
};

// .dis text format: `arc <label> [special|pendant]`, `polygon: <side>, ...` with sides
// arc labels or BOUNDARY, `puncture <label>: <arc>, ...`; '#' starts a comment.
OrbifoldDissection parse_dis(std::string_view text, const std::string& file = "<input>");
OrbifoldDissection read_dis_file(const std::string& path);
std::string serialize_dis(const OrbifoldDissection& d);

Verdict validate_dissection(const OrbifoldDissection& d);
std::vector<int> trivial_polygons(const OrbifoldDissection& d);

// Interior marked points obtained by gluing polygon corners, labelled q1, q2, ... in order
// of first corner. Pendant endpoints are not listed.
std::vector<Puncture> computed_punctures(const OrbifoldDissection& d);

// Skew-gentle presentation: one vertex per arc, an arrow P<i>.<j> from the j-th to the
// (j+1)-th arc side of polygon i (1-based i), a loop f<arc> per pendant arc and a special
// loop f<arc> per special arc. Throws InvalidInput when validation fails.
BoundQuiver quiver_from_dissection(const OrbifoldDissection& d);

DissectionTuple trivext_tuple(const OrbifoldDissection& d);

// Throws TrivialPolygon or InvalidPosition.
OrbifoldDissection contraction_addition(const OrbifoldDissection& d, const MovePosition& at);

// Moves realising a cut of the trivial extension of the admissible presentation of
// quiver_from_dissection(d), given by the undecorated labels of the cut arrows. Labels of
// closing arrows need no move and are skipped.
std::vector<MovePosition> moves_for_cut(const OrbifoldDissection& d, const std::set<std::string>& keys);
OrbifoldDissection apply_moves(const OrbifoldDissection& d, const std::vector<MovePosition>& moves);

// Minus at an arc that is a source of the auxiliary gentle quiver, Plus at a sink. Throws
// NotReflectable otherwise.
OrbifoldDissection geometric_reflection(const OrbifoldDissection& d, int arc, trivext::Direction direction);

// prod_k (1 - (-q)^k)^{c_k}, c_k counting punctures with k incident arc ends; every
// pendant endpoint counts as a puncture with one.
Poly q_cartan_det_formula(const OrbifoldDissection& d);

}  // namespace sba::dissection
