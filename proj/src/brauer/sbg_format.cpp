#include <sstream>

#include "sba/brauer/brauer.hpp"
#include "sba/error.hpp"
#include "sba/quiver_core/bq_format.hpp"

namespace sba::brauer {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

}  // namespace

GraphVertexId BrauerGraph::add_vertex(const std::string& label, int mult) {
    if (find_vertex(label)) throw Error(ErrorKind::InvalidInput, "duplicate vertex " + label);
    GraphVertexId id = static_cast<GraphVertexId>(vertices.size());
    vertices.push_back({id, label, mult, 0});
    order.emplace_back();
    return id;
}

EdgeId BrauerGraph::add_edge(const std::string& label, GraphVertexId a, GraphVertexId b) {
    if (find_edge(label)) throw Error(ErrorKind::InvalidInput, "duplicate edge " + label);
    EdgeId id = static_cast<EdgeId>(edges.size());
    Edge e;
    e.id = id;
    e.label = label;
    e.ends[0] = a;
    e.ends[1] = b;
    edges.push_back(e);
    return id;
}

std::optional<GraphVertexId> BrauerGraph::find_vertex(std::string_view label) const {
    for (const auto& v : vertices)
        if (v.label == label) return v.id;
    return std::nullopt;
}

std::optional<EdgeId> BrauerGraph::find_edge(std::string_view label) const {
    for (const auto& e : edges)
        if (e.label == label) return e.id;
    return std::nullopt;
}

std::vector<HalfEdge> BrauerGraph::half_edges_at(GraphVertexId v) const {
    std::vector<HalfEdge> out;
    for (const auto& e : edges)
        for (int k = 0; k < 2; ++k)
            if (e.ends[k] == v) out.push_back({e.id, k});
    return out;
}

int BrauerGraph::valency(GraphVertexId v) const { return static_cast<int>(half_edges_at(v).size()); }

SkewBrauerGraph parse_sbg(std::string_view text, const std::string& file) {
    SkewBrauerGraph g;
    BrauerGraph& b = g.graph;
    struct PendingOrder {
        int line;
        GraphVertexId v;
        std::vector<std::string> items;
    };
    std::vector<PendingOrder> orders;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        // '#' opens a comment at line start or after a blank; elsewhere it marks a half-edge.
        std::string line = trim(raw);
        if (!line.empty() && line[0] == '#') continue;
        if (size_t c = line.find(" #"); c != std::string::npos) line = trim(line.substr(0, c));
        if (line.empty()) continue;
        auto w = words(line);
        try {
            if (w[0] == "vertex") {
                if (w.size() < 2 || w.size() > 4) throw ParseError(file, lineno, "expected: vertex <label> [mult=<k>] [distinguished]");
                int mult = 1;
                bool dist = false;
                for (size_t i = 2; i < w.size(); ++i) {
                    if (w[i] == "distinguished") {
                        dist = true;
                    } else if (w[i].rfind("mult=", 0) == 0) {
                        try {
                            mult = std::stoi(w[i].substr(5));
                        } catch (const std::exception&) {
                            throw ParseError(file, lineno, "bad multiplicity '" + w[i] + "'");
                        }
                    } else {
                        throw ParseError(file, lineno, "unknown vertex attribute '" + w[i] + "'");
                    }
                }
                GraphVertexId id = b.add_vertex(w[1], mult);
                b.vertices[id].line = lineno;
                if (dist) g.distinguished.insert(id);
            } else if (w[0] == "edge") {
                if (w.size() != 4) throw ParseError(file, lineno, "expected: edge <label> <v1> <v2>");
                auto x = b.find_vertex(w[2]), y = b.find_vertex(w[3]);
                if (!x || !y) throw ParseError(file, lineno, "unknown vertex in edge " + w[1]);
                b.add_edge(w[1], *x, *y);
            } else if (w[0] == "order") {
                size_t colon = line.find(':');
                if (w.size() < 2 || colon == std::string::npos)
                    throw ParseError(file, lineno, "expected: order <vertex>: <edge>, ...");
                std::string vlabel = trim(line.substr(5, colon - 5));
                auto v = b.find_vertex(vlabel);
                if (!v) throw ParseError(file, lineno, "unknown vertex " + vlabel);
                PendingOrder po{lineno, *v, {}};
                std::string rest = line.substr(colon + 1);
                std::istringstream items(rest);
                for (std::string item; std::getline(items, item, ',');) {
                    item = trim(item);
                    if (item.empty()) throw ParseError(file, lineno, "empty entry in order list");
                    po.items.push_back(item);
                }
                orders.push_back(std::move(po));
            } else {
                throw ParseError(file, lineno, "unknown keyword '" + w[0] + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(file, lineno, e.what());
        }
    }
    std::vector<bool> seen(b.vertices.size(), false);
    for (const auto& po : orders) {
        if (seen[po.v]) throw ParseError(file, po.line, "second order line for " + b.vertices[po.v].label);
        seen[po.v] = true;
        for (const std::string& item : po.items) {
            std::string label = item;
            int which = -1;
            if (size_t h = item.find('#'); h != std::string::npos) {
                label = item.substr(0, h);
                std::string k = item.substr(h + 1);
                if (k != "1" && k != "2") throw ParseError(file, po.line, "half-edge suffix must be #1 or #2");
                which = k == "1" ? 0 : 1;
            }
            auto e = b.find_edge(label);
            if (!e) throw ParseError(file, po.line, "unknown edge " + label);
            const Edge& edge = b.edges[*e];
            if (edge.ends[0] != po.v && edge.ends[1] != po.v)
                throw ParseError(file, po.line, "edge " + label + " is not attached to " + b.vertices[po.v].label);
            if (edge.loop() && which < 0) throw ParseError(file, po.line, "loop " + label + " needs #1 or #2");
            if (which < 0) which = edge.ends[0] == po.v ? 0 : 1;
            b.order[po.v].push_back({*e, which});
        }
    }
    // Leaves default to their single half-edge; multiplicity above one doubles it.
    for (const auto& v : b.vertices) {
        auto hs = b.half_edges_at(v.id);
        if (hs.size() == 1 && b.order[v.id].empty()) b.order[v.id] = hs;
        if (hs.size() == 1 && v.mult > 1 && b.order[v.id].size() == 1) b.order[v.id].push_back(hs[0]);
    }
    return g;
}

SkewBrauerGraph read_sbg_file(const std::string& path) { return parse_sbg(quiver_core::read_text_file(path), path); }

std::string serialize_sbg(const SkewBrauerGraph& g) {
    const BrauerGraph& b = g.graph;
    std::ostringstream out;
    for (const auto& v : b.vertices) {
        out << "vertex " << v.label;
        if (v.mult != 1) out << " mult=" << v.mult;
        if (g.distinguished.count(v.id)) out << " distinguished";
        out << "\n";
    }
    for (const auto& e : b.edges)
        out << "edge " << e.label << " " << b.vertices[e.ends[0]].label << " " << b.vertices[e.ends[1]].label << "\n";
    for (const auto& v : b.vertices) {
        if (b.order[v.id].empty()) continue;
        out << "order " << v.label << ":";
        for (size_t i = 0; i < b.order[v.id].size(); ++i) {
            const HalfEdge& h = b.order[v.id][i];
            out << (i ? ", " : " ") << b.edges[h.edge].label;
            if (b.edges[h.edge].loop()) out << "#" << (h.end + 1);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace sba::brauer
