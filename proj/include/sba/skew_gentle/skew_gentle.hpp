#pragma once

#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "sba/quiver_core/basis.hpp"
#include "sba/quiver_core/quiver.hpp"
#include "sba/verdict.hpp"

namespace sba::skew_gentle {

using quiver_core::ArrowId;
using quiver_core::BoundQuiver;
using quiver_core::Path;
using quiver_core::Quiver;
using quiver_core::Relation;
using quiver_core::Sign;
using quiver_core::VertexId;

// A quiver with relations, distinguished vertices and distinguished cycles. Cycles are
// listed with every starting point that should be considered.
struct SgTuple {
    Quiver quiver;
    std::vector<Relation> relations;
    std::set<VertexId> sp;
    std::vector<Path> cycles;
};

// Vertex duplication with lookup tables back to the original quiver.
struct SgQuiver {
    Quiver quiver;
    std::map<std::pair<VertexId, Sign>, VertexId> vertex_of;
    std::map<std::tuple<ArrowId, Sign, Sign>, ArrowId> arrow_of;
    std::vector<VertexId> origin_vertex;  // indexed by new vertex id
    std::vector<ArrowId> origin_arrow;    // indexed by new arrow id
};

// Conditions (1)-(4) for a presentation whose special loops carry f^2 - f. Condition (4)
// is read as: at most one ordinary arrow starts and at most one ends at a special vertex,
// their product is a relation, and no other loop sits there.
Verdict is_skew_gentle(const BoundQuiver& p);

// Vertices carrying a special loop.
std::set<VertexId> special_vertices_of(const BoundQuiver& p);

// Drops special loops and the length-2 relations through special vertices. The special
// set is kept as the distinguished set of the result.
BoundQuiver auxiliary_gentle(const BoundQuiver& p);

// Throws LoopAtDistinguished.
Quiver sg_quiver(const Quiver& q, const std::set<VertexId>& sp);
SgQuiver sg_quiver_map(const Quiver& q, const std::set<VertexId>& sp);

// Type a-d relations over sg_quiver(t.quiver, t.sp), every sign decoration included.
std::vector<Relation> sg_ideal(const SgTuple& t);
std::vector<Relation> sg_ideal(const SgTuple& t, const SgQuiver& sg);

// The sg-bound quiver algebra of a tuple; flagged admissible, no special marks.
BoundQuiver sg_algebra(const SgTuple& t);

// Admissible presentation of a skew-gentle presentation; a gentle input is returned as is.
BoundQuiver admissible_presentation(const BoundQuiver& p);

// Paths of the presentation `p` (special loops included) that are maximal with respect to
// ordinary arrows and start/end with the special loop at special endpoints.
std::vector<Path> sp_maximal_paths(const BoundQuiver& p);

// Lifts a path of the auxiliary quiver to the sg-quiver: the given endpoint signs and "+"
// at every interior special vertex. Throws SignMismatch when a sign is given for a
// non-special endpoint or omitted for a special one.
Path induced_path(const SgQuiver& sg, const Quiver& aux, const std::set<VertexId>& sp, const Path& p,
                  Sign first, Sign last);

// Every sign decoration of `p`, endpoints and interior vertices included.
std::vector<Path> all_lifts(const SgQuiver& sg, const Quiver& aux, const std::set<VertexId>& sp, const Path& p);

// Finds a skew-gentle presentation whose admissible presentation is isomorphic to `b`.
// Twin vertex pairs come from origin metadata when consistent, otherwise from quiver
// symmetries.
std::optional<BoundQuiver> recognize(const BoundQuiver& b);

}  // namespace sba::skew_gentle
