#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sba::quiver_core {

using VertexId = int;
using ArrowId = int;

enum class Sign : signed char { None = 0, Plus = 1, Minus = -1 };

// "+", "-" or "".
const char* sign_text(Sign s);

struct Vertex {
    VertexId id = 0;
    std::string label;
    // Set on duplicated vertices x+ / x-: the label of x and the sign.
    std::string origin;
    Sign sign = Sign::None;
};

struct Arrow {
    ArrowId id = 0;
    std::string label;
    VertexId source = 0;
    VertexId target = 0;
    bool special_loop = false;
    // Set on arrows of an sg-quiver: the undecorated arrow label and endpoint signs.
    std::string origin;
    Sign source_sign = Sign::None;
    Sign target_sign = Sign::None;
};

class Quiver {
public:
    VertexId add_vertex(const std::string& label);
    ArrowId add_arrow(const std::string& label, VertexId source, VertexId target,
                      bool special_loop = false);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
    const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
    Vertex& vertex_mut(VertexId v) { return vertices_.at(v); }
    Arrow& arrow_mut(ArrowId a) { return arrows_.at(a); }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }

    std::optional<VertexId> find_vertex(std::string_view label) const;
    std::optional<ArrowId> find_arrow(std::string_view label) const;
    // Throw UnknownVertex / UnknownArrow.
    VertexId vertex_id(std::string_view label) const;
    ArrowId arrow_id(std::string_view label) const;

    const std::vector<ArrowId>& out_arrows(VertexId v) const { return out_.at(v); }
    const std::vector<ArrowId>& in_arrows(VertexId v) const { return in_.at(v); }

private:
    std::vector<Vertex> vertices_;
    std::vector<Arrow> arrows_;
    std::unordered_map<std::string, VertexId> vertex_index_;
    std::unordered_map<std::string, ArrowId> arrow_index_;
    std::vector<std::vector<ArrowId>> out_;
    std::vector<std::vector<ArrowId>> in_;
};

// Left-to-right composition: arrows[i] ends where arrows[i+1] starts.
struct Path {
    VertexId base = 0;
    std::vector<ArrowId> arrows;

    int length() const { return static_cast<int>(arrows.size()); }
    bool trivial() const { return arrows.empty(); }
    friend bool operator==(const Path&, const Path&) = default;
    friend auto operator<=>(const Path&, const Path&) = default;
};

Path trivial_path(VertexId v);
Path arrow_path(const Quiver& q, ArrowId a);
// Throws NonComposable if consecutive arrows do not match.
Path make_path(const Quiver& q, const std::vector<ArrowId>& arrows);
VertexId path_source(const Quiver& q, const Path& p);
VertexId path_target(const Quiver& q, const Path& p);
Path compose_paths(const Quiver& q, const Path& p, const Path& r);
// Sub-path of `length` arrows starting at arrow index `from`.
Path subpath(const Quiver& q, const Path& p, int from, int length);

std::vector<std::string> path_labels(const Quiver& q, const Path& p);
// Arrow labels joined by '*'; trivial paths print as e_<vertex>.
std::string path_to_string(const Quiver& q, const Path& p);
Path parse_path(const Quiver& q, std::string_view text);
// Order by length, then arrow-label sequence.
int compare_paths(const Quiver& q, const Path& a, const Path& b);

struct Term {
    mpq_class coeff;
    Path path;
};

struct Relation {
    std::vector<Term> terms;

    static Relation monomial(Path p);
    static Relation binomial(Path p, Path r, const mpq_class& c1 = 1, const mpq_class& c2 = -1);
    bool is_monomial() const { return terms.size() == 1; }
    int min_length() const;
};

std::string relation_to_string(const Quiver& q, const Relation& r);
// Throws InvalidInput / NotAdmissible.
void validate_relation(const Quiver& q, const Relation& r, bool admissible);

// Copies the vertices (with metadata) and the arrows with keep[a] set. new_id receives the
// new arrow id of every kept arrow and -1 for dropped ones.
Quiver copy_arrows(const Quiver& q, const std::vector<bool>& keep, std::vector<ArrowId>& new_id);
// nullopt when the path uses a dropped arrow.
std::optional<Path> remap_path(const Path& p, const std::vector<ArrowId>& new_id);
// Same-label transport into another quiver; throws UnknownVertex / UnknownArrow.
Path transport_path(const Quiver& from, const Quiver& to, const Path& p);

struct BoundQuiver {
    Quiver quiver;
    std::vector<Relation> relations;
    std::set<VertexId> special_vertices;
    bool admissible = true;

    // Throws InvalidInput when relation terms are malformed.
    void validate() const;
    std::vector<ArrowId> special_loops() const;
};

}  // namespace sba::quiver_core
