#include "sba/quiver_core/quiver.hpp"

#include <algorithm>

#include "sba/error.hpp"

namespace sba::quiver_core {

const char* sign_text(Sign s) {
    switch (s) {
        case Sign::Plus: return "+";
        case Sign::Minus: return "-";
        default: return "";
    }
}

VertexId Quiver::add_vertex(const std::string& label) {
    if (vertex_index_.count(label)) throw Error(ErrorKind::InvalidInput, "duplicate vertex label " + label);
    VertexId id = vertex_count();
    vertices_.push_back(Vertex{id, label, {}, Sign::None});
    vertex_index_.emplace(label, id);
    out_.emplace_back();
    in_.emplace_back();
    return id;
}

ArrowId Quiver::add_arrow(const std::string& label, VertexId source, VertexId target, bool special_loop) {
    if (arrow_index_.count(label)) throw Error(ErrorKind::InvalidInput, "duplicate arrow label " + label);
    if (source < 0 || source >= vertex_count() || target < 0 || target >= vertex_count())
        throw Error(ErrorKind::UnknownVertex, "arrow " + label + " has an endpoint outside the quiver");
    if (special_loop && source != target)
        throw Error(ErrorKind::InvalidInput, "special loop " + label + " is not a loop");
    ArrowId id = arrow_count();
    Arrow a;
    a.id = id;
    a.label = label;
    a.source = source;
    a.target = target;
    a.special_loop = special_loop;
    arrows_.push_back(std::move(a));
    arrow_index_.emplace(label, id);
    out_[source].push_back(id);
    in_[target].push_back(id);
    return id;
}

std::optional<VertexId> Quiver::find_vertex(std::string_view label) const {
    auto it = vertex_index_.find(std::string(label));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ArrowId> Quiver::find_arrow(std::string_view label) const {
    auto it = arrow_index_.find(std::string(label));
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
}

VertexId Quiver::vertex_id(std::string_view label) const {
    auto v = find_vertex(label);
    if (!v) throw Error(ErrorKind::UnknownVertex, std::string(label));
    return *v;
}

ArrowId Quiver::arrow_id(std::string_view label) const {
    auto a = find_arrow(label);
    if (!a) throw Error(ErrorKind::UnknownArrow, std::string(label));
    return *a;
}

Path trivial_path(VertexId v) { return Path{v, {}}; }

Path arrow_path(const Quiver& q, ArrowId a) { return Path{q.arrow(a).source, {a}}; }

Path make_path(const Quiver& q, const std::vector<ArrowId>& arrows) {
    if (arrows.empty()) throw Error(ErrorKind::InvalidInput, "make_path needs at least one arrow");
    for (size_t i = 0; i + 1 < arrows.size(); ++i) {
        if (q.arrow(arrows[i]).target != q.arrow(arrows[i + 1]).source)
            throw Error(ErrorKind::NonComposable,
                        q.arrow(arrows[i]).label + " does not end where " + q.arrow(arrows[i + 1]).label + " starts");
    }
    return Path{q.arrow(arrows.front()).source, arrows};
}

VertexId path_source(const Quiver& q, const Path& p) {
    return p.arrows.empty() ? p.base : q.arrow(p.arrows.front()).source;
}

VertexId path_target(const Quiver& q, const Path& p) {
    return p.arrows.empty() ? p.base : q.arrow(p.arrows.back()).target;
}

Path compose_paths(const Quiver& q, const Path& p, const Path& r) {
    if (path_target(q, p) != path_source(q, r))
        throw Error(ErrorKind::NonComposable, path_to_string(q, p) + " then " + path_to_string(q, r));
    Path out{path_source(q, p), p.arrows};
    out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
    return out;
}

Path subpath(const Quiver& q, const Path& p, int from, int length) {
    if (length == 0) {
        VertexId v = from < p.length() ? q.arrow(p.arrows[from]).source : path_target(q, p);
        return trivial_path(v);
    }
    return Path{q.arrow(p.arrows[from]).source,
                std::vector<ArrowId>(p.arrows.begin() + from, p.arrows.begin() + from + length)};
}

std::vector<std::string> path_labels(const Quiver& q, const Path& p) {
    std::vector<std::string> out;
    out.reserve(p.arrows.size());
    for (ArrowId a : p.arrows) out.push_back(q.arrow(a).label);
    return out;
}

std::string path_to_string(const Quiver& q, const Path& p) {
    if (p.trivial()) return "e_" + q.vertex(p.base).label;
    std::string s;
    for (size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += '*';
        s += q.arrow(p.arrows[i]).label;
    }
    return s;
}

Path parse_path(const Quiver& q, std::string_view text) {
    std::vector<ArrowId> arrows;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t star = text.find('*', pos);
        std::string_view tok = text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
        if (tok.empty()) throw Error(ErrorKind::InvalidInput, "empty arrow in path '" + std::string(text) + "'");
        auto a = q.find_arrow(tok);
        if (!a) {
            if (star == std::string_view::npos && arrows.empty() && tok.substr(0, 2) == "e_") {
                if (auto v = q.find_vertex(tok.substr(2))) return trivial_path(*v);
            }
            throw Error(ErrorKind::UnknownArrow, std::string(tok));
        }
        arrows.push_back(*a);
        if (star == std::string_view::npos) break;
        pos = star + 1;
    }
    return make_path(q, arrows);
}

int compare_paths(const Quiver& q, const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
    if (a.trivial()) {
        int c = q.vertex(a.base).label.compare(q.vertex(b.base).label);
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    for (size_t i = 0; i < a.arrows.size(); ++i) {
        int c = q.arrow(a.arrows[i]).label.compare(q.arrow(b.arrows[i]).label);
        if (c) return c < 0 ? -1 : 1;
    }
    return 0;
}

Relation Relation::monomial(Path p) { return Relation{{Term{1, std::move(p)}}}; }

Relation Relation::binomial(Path p, Path r, const mpq_class& c1, const mpq_class& c2) {
    return Relation{{Term{c1, std::move(p)}, Term{c2, std::move(r)}}};
}

int Relation::min_length() const {
    int m = terms.front().path.length();
    for (const auto& t : terms) m = std::min(m, t.path.length());
    return m;
}

Quiver copy_arrows(const Quiver& q, const std::vector<bool>& keep, std::vector<ArrowId>& new_id) {
    Quiver r;
    for (const auto& v : q.vertices()) {
        VertexId id = r.add_vertex(v.label);
        r.vertex_mut(id).origin = v.origin;
        r.vertex_mut(id).sign = v.sign;
    }
    new_id.assign(q.arrow_count(), -1);
    for (const auto& a : q.arrows()) {
        if (!keep[a.id]) continue;
        ArrowId id = r.add_arrow(a.label, a.source, a.target, a.special_loop);
        Arrow& na = r.arrow_mut(id);
        na.origin = a.origin;
        na.source_sign = a.source_sign;
        na.target_sign = a.target_sign;
        new_id[a.id] = id;
    }
    return r;
}

std::optional<Path> remap_path(const Path& p, const std::vector<ArrowId>& new_id) {
    Path r;
    r.base = p.base;
    for (ArrowId a : p.arrows) {
        if (new_id[a] < 0) return std::nullopt;
        r.arrows.push_back(new_id[a]);
    }
    return r;
}

Path transport_path(const Quiver& from, const Quiver& to, const Path& p) {
    Path r;
    r.base = to.vertex_id(from.vertex(p.base).label);
    for (ArrowId a : p.arrows) r.arrows.push_back(to.arrow_id(from.arrow(a).label));
    if (!r.arrows.empty()) r.base = to.arrow(r.arrows.front()).source;
    return r;
}

std::string relation_to_string(const Quiver& q, const Relation& r) {
    if (r.is_monomial() && r.terms[0].coeff == 1) return path_to_string(q, r.terms[0].path);
    if (r.terms.size() == 2 && r.terms[0].coeff == 1 && r.terms[1].coeff == -1)
        return path_to_string(q, r.terms[0].path) + " - " + path_to_string(q, r.terms[1].path);
    std::string s;
    for (size_t i = 0; i < r.terms.size(); ++i) {
        if (i) s += " + ";
        s += "(" + r.terms[i].coeff.get_str() + ") " + path_to_string(q, r.terms[i].path);
    }
    return s;
}

void validate_relation(const Quiver& q, const Relation& r, bool admissible) {
    if (r.terms.empty() || r.terms.size() > 2) throw Error(ErrorKind::InvalidInput, "relations carry one or two terms");
    VertexId s = path_source(q, r.terms[0].path);
    VertexId t = path_target(q, r.terms[0].path);
    for (const auto& term : r.terms) {
        if (path_source(q, term.path) != s || path_target(q, term.path) != t)
            throw Error(ErrorKind::InvalidInput, "relation terms do not share endpoints: " + relation_to_string(q, r));
        if (term.coeff == 0) throw Error(ErrorKind::InvalidInput, "zero coefficient in relation");
        if (admissible && term.path.length() < 2)
            throw Error(ErrorKind::NotAdmissible, "term shorter than 2 in " + relation_to_string(q, r));
    }
}

void BoundQuiver::validate() const {
    for (VertexId v : special_vertices) {
        if (v < 0 || v >= quiver.vertex_count()) throw Error(ErrorKind::UnknownVertex, "special vertex id out of range");
    }
    for (const auto& r : relations) validate_relation(quiver, r, admissible);
}

std::vector<ArrowId> BoundQuiver::special_loops() const {
    std::vector<ArrowId> out;
    for (const auto& a : quiver.arrows())
        if (a.special_loop) out.push_back(a.id);
    return out;
}

}  // namespace sba::quiver_core
