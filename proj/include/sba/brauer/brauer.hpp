#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sba/quiver_core/basis.hpp"
#include "sba/quiver_core/quiver.hpp"
#include "sba/verdict.hpp"

namespace sba::brauer {

using quiver_core::ArrowId;
using quiver_core::BoundQuiver;
using quiver_core::PathBasis;
using quiver_core::Quiver;
using quiver_core::VertexId;

using GraphVertexId = int;
using EdgeId = int;

struct GraphVertex {
    GraphVertexId id = 0;
    std::string label;
    int mult = 1;
    int line = 0;  // source line when read from a file
};

struct Edge {
    EdgeId id = 0;
    std::string label;
    GraphVertexId ends[2] = {0, 0};
    bool loop() const { return ends[0] == ends[1]; }
};

// One end of an edge; `end` selects ends[0] or ends[1] (the #1/#2 of a loop).
struct HalfEdge {
    EdgeId edge = 0;
    int end = 0;
    friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
    friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

struct BrauerGraph {
    std::vector<GraphVertex> vertices;
    std::vector<Edge> edges;
    // Clockwise cyclic order per vertex. A leaf with multiplicity above one lists its
    // half-edge twice.
    std::vector<std::vector<HalfEdge>> order;

    GraphVertexId add_vertex(const std::string& label, int mult = 1);
    EdgeId add_edge(const std::string& label, GraphVertexId a, GraphVertexId b);
    std::optional<GraphVertexId> find_vertex(std::string_view label) const;
    std::optional<EdgeId> find_edge(std::string_view label) const;
    // Number of half-edges at v.
    int valency(GraphVertexId v) const;
    std::vector<HalfEdge> half_edges_at(GraphVertexId v) const;
    // Other endpoint of the edge behind h.
    GraphVertexId across(const HalfEdge& h) const { return edges.at(h.edge).ends[1 - h.end]; }
};

struct SkewBrauerGraph {
    BrauerGraph graph;
    std::set<GraphVertexId> distinguished;
};

// Quiver of a Brauer graph (one vertex per edge, labelled like the edge) together with its
// special cycles.
struct SpecialCycle {
    GraphVertexId vertex = 0;
    int mult = 1;
    std::vector<ArrowId> arrows;  // closed, starting at the first listed half-edge
};

struct BrauerQuiver {
    Quiver quiver;
    std::vector<SpecialCycle> cycles;
    // Quiver vertices coming from distinguished edges.
    std::set<VertexId> special;
};

enum class RepType { Finite, Infinite };

struct Classification {
    RepType type = RepType::Finite;
    std::string branch;  // "i" .. "vi"
    std::string reason;
    std::string witness;  // band word when one is known
};

struct ProjectiveLayers {
    std::string top;
    // Radical layers, each a sorted list of composition-factor labels.
    std::vector<std::vector<std::string>> layers;
    std::string socle;
    int dimension = 0;
};

// .sbg text format.
SkewBrauerGraph parse_sbg(std::string_view text, const std::string& file = "<input>");
SkewBrauerGraph read_sbg_file(const std::string& path);
std::string serialize_sbg(const SkewBrauerGraph& g);

Verdict validate_graph(const SkewBrauerGraph& g);
Verdict validate_graph(const BrauerGraph& g);

Quiver brauer_quiver(const BrauerGraph& g);
BrauerQuiver brauer_quiver_data(const SkewBrauerGraph& g);

// Admissible presentation with relations of types 0, I, IIa, IIb and III. Throws
// InvalidInput when the graph does not validate.
BoundQuiver skew_brauer_algebra(const SkewBrauerGraph& g);

// Checks that the form equal to 1 on the closed maximal basis paths and 0 elsewhere is
// symmetric on all basis pairs and has a nondegenerate pairing.
Verdict symmetric_form_check(const BoundQuiver& a, const PathBasis& basis);

// Graph whose algebra is the trivial extension of the admissible presentation of `p`.
// Vertices: pN for nontrivial sp-maximal paths, e_x / e_x' for trivial ends, d_x for
// special vertices. Throws UnsupportedClass when `p` is not skew-gentle.
SkewBrauerGraph graph_from_skew_gentle(const BoundQuiver& p);

Verdict is_skew_brauer_tree(const SkewBrauerGraph& g);

Classification classify_rep_type(const SkewBrauerGraph& g);
std::string to_string(const Classification& c);

// Radical layers of the projective at `x` (paths ending at x, labelled by their source).
ProjectiveLayers projective_layers(const PathBasis& basis, VertexId x);

}  // namespace sba::brauer
