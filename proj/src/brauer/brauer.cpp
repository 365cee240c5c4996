#include "sba/brauer/brauer.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "sba/error.hpp"
#include "sba/skew_gentle/skew_gentle.hpp"

namespace sba::brauer {

using quiver_core::Path;
using quiver_core::Relation;
using quiver_core::Sign;

namespace {

using Seq = std::vector<ArrowId>;

bool connected(const BrauerGraph& b) {
    if (b.vertices.empty()) return true;
    std::vector<bool> seen(b.vertices.size(), false);
    std::vector<GraphVertexId> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        GraphVertexId v = stack.back();
        stack.pop_back();
        for (const auto& e : b.edges) {
            for (int k = 0; k < 2; ++k) {
                if (e.ends[k] != v || seen[e.ends[1 - k]]) continue;
                seen[e.ends[1 - k]] = true;
                stack.push_back(e.ends[1 - k]);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

std::string at_line(const GraphVertex& v) { return v.line ? " (line " + std::to_string(v.line) + ")" : ""; }

// Sign choices of the lift of a quiver path through the sg-quiver, one per visited vertex.
class Lifter {
public:
    Lifter(const BrauerQuiver& bq, const skew_gentle::SgQuiver& sg) : bq_(bq), sg_(sg) {}

    // Lifts of the arrow sequence `arrows`; a closed lift reuses the first sign at the end.
    // `first`/`last` pin the signs at the ends when given.
    std::vector<Seq> lifts(const Seq& arrows, bool closed, Sign first = Sign::None, Sign last = Sign::None) const {
        size_t k = arrows.size();
        std::vector<VertexId> at(k + 1);
        for (size_t i = 0; i < k; ++i) at[i] = bq_.quiver.arrow(arrows[i]).source;
        at[k] = bq_.quiver.arrow(arrows[k - 1]).target;
        std::vector<Sign> signs(k + 1, Sign::None);
        std::vector<Seq> out;
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == k + 1) {
                Seq s;
                for (size_t j = 0; j < k; ++j) s.push_back(sg_.arrow_of.at({arrows[j], signs[j], signs[j + 1]}));
                out.push_back(std::move(s));
                return;
            }
            if (!bq_.special.count(at[i])) {
                signs[i] = Sign::None;
                rec(i + 1);
                return;
            }
            if (closed && i == k) {
                signs[i] = signs[0];
                rec(i + 1);
                return;
            }
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                if (i == 0 && first != Sign::None && s != first) continue;
                if (i == k && last != Sign::None && s != last) continue;
                signs[i] = s;
                rec(i + 1);
            }
        };
        rec(0);
        return out;
    }

private:
    const BrauerQuiver& bq_;
    const skew_gentle::SgQuiver& sg_;
};

Seq rotate(const Seq& s, size_t r) {
    Seq out(s.begin() + r, s.end());
    out.insert(out.end(), s.begin(), s.begin() + r);
    return out;
}

Seq power(const Seq& s, int m) {
    Seq out;
    for (int i = 0; i < m; ++i) out.insert(out.end(), s.begin(), s.end());
    return out;
}

class RelationSet {
public:
    explicit RelationSet(const Quiver& q) : q_(q) {}
    void monomial(const Seq& s) { add(Relation::monomial(quiver_core::make_path(q_, s))); }
    void binomial(const Seq& a, const Seq& b) {
        Path pa = quiver_core::make_path(q_, a), pb = quiver_core::make_path(q_, b);
        if (quiver_core::compare_paths(q_, pb, pa) < 0) std::swap(pa, pb);
        add(Relation::binomial(pa, pb));
    }
    std::vector<Relation> take() { return std::move(rels_); }

private:
    void add(Relation r) {
        if (seen_.insert(quiver_core::relation_to_string(q_, r)).second) rels_.push_back(std::move(r));
    }
    const Quiver& q_;
    std::set<std::string> seen_;
    std::vector<Relation> rels_;
};

bool is_tree(const BrauerGraph& b) {
    for (const auto& e : b.edges)
        if (e.loop()) return false;
    return connected(b) && b.edges.size() + 1 == b.vertices.size();
}

}  // namespace

Verdict validate_graph(const BrauerGraph& b) {
    for (const auto& v : b.vertices)
        if (v.mult < 1) return Verdict::fail("multiplicity", "vertex " + v.label + at_line(v) + " has multiplicity below 1");
    for (const auto& v : b.vertices) {
        auto hs = b.half_edges_at(v.id);
        std::vector<HalfEdge> listed = b.order.at(v.id);
        if (hs.size() == 1 && v.mult > 1) {
            if (listed.size() != 2 || listed[0] != hs[0] || listed[1] != hs[0])
                return Verdict::fail("order", "leaf " + v.label + at_line(v) + " with multiplicity above 1 needs the doubled order");
            continue;
        }
        std::sort(listed.begin(), listed.end());
        std::sort(hs.begin(), hs.end());
        if (listed != hs)
            return Verdict::fail("order", "order at " + v.label + at_line(v) + " is not a permutation of its half-edges");
    }
    if (!connected(b)) return Verdict::fail("connected", "graph is not connected");
    return Verdict::ok();
}

Verdict validate_graph(const SkewBrauerGraph& g) {
    const BrauerGraph& b = g.graph;
    for (GraphVertexId d : g.distinguished) {
        if (d < 0 || d >= static_cast<int>(b.vertices.size()))
            return Verdict::fail("distinguished", "unknown distinguished vertex");
        const GraphVertex& v = b.vertices[d];
        auto hs = b.half_edges_at(d);
        if (v.mult != 1) return Verdict::fail("distinguished", "distinguished vertex " + v.label + at_line(v) + " has multiplicity " + std::to_string(v.mult), {v.label});
        if (hs.size() != 1) return Verdict::fail("distinguished", "distinguished vertex " + v.label + at_line(v) + " has valency " + std::to_string(hs.size()), {v.label});
        GraphVertexId w = b.across(hs[0]);
        if (g.distinguished.count(w))
            return Verdict::fail("distinguished", "distinguished vertices " + v.label + " and " + b.vertices[w].label + " are adjacent", {v.label, b.vertices[w].label});
    }
    return validate_graph(b);
}

BrauerQuiver brauer_quiver_data(const SkewBrauerGraph& g) {
    const BrauerGraph& b = g.graph;
    BrauerQuiver bq;
    for (const auto& e : b.edges) bq.quiver.add_vertex(e.label);
    for (GraphVertexId d : g.distinguished)
        for (const HalfEdge& h : b.half_edges_at(d)) bq.special.insert(h.edge);
    for (const auto& v : b.vertices) {
        if (g.distinguished.count(v.id)) continue;
        int val = b.valency(v.id);
        if (v.mult * val < 2) continue;
        SpecialCycle c;
        c.vertex = v.id;
        c.mult = v.mult;
        const auto& o = b.order[v.id];
        if (val == 1) {
            c.arrows.push_back(bq.quiver.add_arrow(v.label + ".1", o[0].edge, o[0].edge));
        } else {
            for (size_t k = 0; k < o.size(); ++k)
                c.arrows.push_back(
                    bq.quiver.add_arrow(v.label + "." + std::to_string(k + 1), o[k].edge, o[(k + 1) % o.size()].edge));
        }
        bq.cycles.push_back(std::move(c));
    }
    return bq;
}

Quiver brauer_quiver(const BrauerGraph& g) { return brauer_quiver_data(SkewBrauerGraph{g, {}}).quiver; }

BoundQuiver skew_brauer_algebra(const SkewBrauerGraph& g) {
    Verdict v = validate_graph(g);
    if (!v) throw Error(ErrorKind::InvalidInput, "skew-Brauer graph: " + v.detail);
    BrauerQuiver bq = brauer_quiver_data(g);
    skew_gentle::SgQuiver sg = skew_gentle::sg_quiver_map(bq.quiver, bq.special);
    const Quiver& q = sg.quiver;
    Lifter lifter(bq, sg);
    RelationSet rels(q);

    // Sign commutation through quiver vertices of distinguished edges.
    for (VertexId x : bq.special) {
        for (ArrowId a : bq.quiver.in_arrows(x)) {
            for (ArrowId c : bq.quiver.out_arrows(x)) {
                for (const Seq& plus : lifter.lifts({a, c}, false)) {
                    if (q.vertex(q.arrow(plus[0]).target).sign != Sign::Plus) continue;
                    const auto& pa = q.arrow(plus[0]);
                    const auto& pc = q.arrow(plus[1]);
                    Seq minus{sg.arrow_of.at({a, q.vertex(pa.source).sign, Sign::Minus}),
                              sg.arrow_of.at({c, Sign::Minus, q.vertex(pc.target).sign})};
                    rels.binomial(plus, minus);
                }
            }
        }
    }

    // m-th powers of every rotation of every sg-special cycle, grouped by start vertex.
    std::map<VertexId, std::vector<Seq>> powers;
    std::set<std::pair<ArrowId, ArrowId>> consecutive;
    for (const SpecialCycle& c : bq.cycles) {
        for (const Seq& lift : lifter.lifts(c.arrows, true)) {
            for (size_t r = 0; r < lift.size(); ++r) {
                Seq rot = rotate(lift, r);
                consecutive.insert({rot.back(), rot.front()});
                Seq p = power(rot, c.mult);
                powers[q.arrow(p.front()).source].push_back(p);
                Seq next = p;
                next.push_back(rot.front());
                rels.monomial(next);  // IIa
            }
        }
        // IIb: rotations starting at a distinguished quiver vertex, closed with the other sign.
        for (size_t r = 0; r < c.arrows.size(); ++r) {
            Seq rot = rotate(c.arrows, r);
            if (!bq.special.count(bq.quiver.arrow(rot.front()).source)) continue;
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                Sign other = s == Sign::Plus ? Sign::Minus : Sign::Plus;
                for (const Seq& base : lifter.lifts(rot, true, s)) {
                    Seq head = power(base, c.mult - 1);
                    for (const Seq& tail : lifter.lifts(rot, false, s, other)) {
                        Seq w = head;
                        w.insert(w.end(), tail.begin(), tail.end());
                        rels.monomial(w);
                    }
                    if (c.mult == 1) break;  // head is empty; one pass covers every tail
                }
            }
        }
    }
    for (const auto& [x, list] : powers)
        for (size_t i = 0; i < list.size(); ++i)
            for (size_t j = i + 1; j < list.size(); ++j)
                if (list[i] != list[j]) rels.binomial(list[i], list[j]);  // I

    // III: length-two paths off every sg-special cycle.
    for (const auto& a : q.arrows())
        for (ArrowId c : q.out_arrows(a.target))
            if (!consecutive.count({a.id, c})) rels.monomial({a.id, c});

    BoundQuiver out;
    out.quiver = q;
    out.relations = rels.take();
    out.admissible = true;
    return out;
}

Verdict symmetric_form_check(const BoundQuiver& a, const PathBasis& basis) {
    const int n = basis.dimension();
    const Quiver& q = a.quiver;
    std::vector<mpq_class> phi(n, 0);
    for (const Path& m : quiver_core::maximal_paths(a, basis)) {
        if (quiver_core::path_source(q, m) != quiver_core::path_target(q, m)) continue;
        int i = basis.index_of(m);
        if (i >= 0) phi[i] = 1;
    }
    auto value = [&](const Path& x, const Path& y) -> mpq_class {
        if (quiver_core::path_target(q, x) != quiver_core::path_source(q, y)) return 0;
        auto r = basis.reduce(quiver_core::compose_paths(q, x, y));
        return r ? r->coeff * phi[r->index] : mpq_class(0);
    };
    std::vector<std::vector<mpq_class>> pairing(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            pairing[i][j] = value(basis.path(i), basis.path(j));
            if (j < i && pairing[i][j] != pairing[j][i])
                return Verdict::fail("symmetry", "phi(ab) != phi(ba)",
                                     {quiver_core::path_to_string(q, basis.path(i)),
                                      quiver_core::path_to_string(q, basis.path(j))});
        }
    }
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (pairing[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(pairing[piv], pairing[rank]);
        for (int r = 0; r < n; ++r) {
            if (r == rank || pairing[r][col] == 0) continue;
            mpq_class f = pairing[r][col] / pairing[rank][col];
            for (int c = col; c < n; ++c) pairing[r][c] -= f * pairing[rank][c];
        }
        ++rank;
    }
    if (rank != n)
        return Verdict::fail("nondegenerate", "pairing has rank " + std::to_string(rank) + " of " + std::to_string(n));
    return Verdict::ok();
}

SkewBrauerGraph graph_from_skew_gentle(const BoundQuiver& p) {
    if (!skew_gentle::is_skew_gentle(p)) throw Error(ErrorKind::UnsupportedClass, "input is not skew-gentle");
    BoundQuiver aux = skew_gentle::auxiliary_gentle(p);
    const Quiver& q = aux.quiver;
    auto basis = quiver_core::enumerate_basis(aux);
    std::vector<Path> maxes;
    for (const Path& m : quiver_core::maximal_paths(aux, basis))
        if (!m.trivial()) maxes.push_back(m);
    std::sort(maxes.begin(), maxes.end(), [&](const Path& x, const Path& y) {
        return quiver_core::path_labels(q, x) < quiver_core::path_labels(q, y);
    });

    SkewBrauerGraph g;
    BrauerGraph& b = g.graph;
    struct End {
        GraphVertexId v;
        size_t slot;
    };
    std::vector<std::vector<End>> ends(q.vertex_count());
    for (size_t k = 0; k < maxes.size(); ++k) {
        GraphVertexId v = b.add_vertex("p" + std::to_string(k + 1));
        std::vector<VertexId> visits{quiver_core::path_source(q, maxes[k])};
        for (ArrowId a : maxes[k].arrows) visits.push_back(q.arrow(a).target);
        b.order[v].resize(visits.size());
        for (size_t s = 0; s < visits.size(); ++s) ends[visits[s]].push_back({v, s});
    }
    for (const auto& x : q.vertices()) {
        if (ends[x.id].size() > 2) throw Error(ErrorKind::InvalidInput, "vertex " + x.label + " lies on three maximal paths");
        bool special = aux.special_vertices.count(x.id) > 0;
        if (special) {
            if (ends[x.id].size() == 2)
                throw Error(ErrorKind::InvalidInput, "special vertex " + x.label + " lies on two maximal paths");
            GraphVertexId d = b.add_vertex("d_" + x.label);
            b.order[d].resize(1);
            g.distinguished.insert(d);
            ends[x.id].push_back({d, 0});
        }
        std::string name = "e_" + x.label;
        while (ends[x.id].size() < 2) {
            GraphVertexId e = b.add_vertex(name);
            b.order[e].resize(1);
            ends[x.id].push_back({e, 0});
            name += "'";
        }
    }
    for (const auto& x : q.vertices()) {
        EdgeId e = b.add_edge(x.label, ends[x.id][0].v, ends[x.id][1].v);
        for (int k = 0; k < 2; ++k) b.order[ends[x.id][k].v][ends[x.id][k].slot] = HalfEdge{e, k};
    }
    return g;
}

Verdict is_skew_brauer_tree(const SkewBrauerGraph& g) {
    const BrauerGraph& b = g.graph;
    if (!is_tree(b)) return Verdict::fail("tree", "underlying graph is not a tree");
    for (const auto& v : b.vertices)
        if (v.mult != 1) return Verdict::fail("multiplicity", "vertex " + v.label + " has multiplicity " + std::to_string(v.mult), {v.label});
    if (g.distinguished.size() != 1)
        return Verdict::fail("distinguished", std::to_string(g.distinguished.size()) + " distinguished vertices");
    return Verdict::ok();
}

Classification classify_rep_type(const SkewBrauerGraph& g) {
    const BrauerGraph& b = g.graph;
    Classification c;
    const size_t nd = g.distinguished.size();
    if (nd >= 1 && b.edges.size() == 2 && b.vertices.size() == 3 && is_tree(b)) {
        GraphVertexId mid = 0;
        for (const auto& v : b.vertices)
            if (b.valency(v.id) == 2) mid = v.id;
        std::vector<GraphVertexId> leaves;
        for (const auto& v : b.vertices)
            if (v.id != mid) leaves.push_back(v.id);
        if (nd == 2) {
            c.type = RepType::Infinite;
            c.branch = "iii";
            c.reason = "two distinguished leaves on a two-edge path; its algebra is that of a four-cycle Brauer graph";
            return c;
        }
        GraphVertexId w = g.distinguished.count(leaves[0]) ? leaves[1] : leaves[0];
        if (b.vertices[w].mult == 1) {
            c.type = RepType::Finite;
            c.branch = "i";
            c.reason = "isomorphic to a Brauer tree algebra";
        } else {
            c.type = RepType::Infinite;
            c.branch = "ii";
            c.witness = "γ⁻¹(α⁺)(⁺β)";
            const std::string& wl = b.vertices[w].label;
            const std::string& ml = b.vertices[mid].label;
            c.reason = "band word γ⁻¹(α⁺)(⁺β) with γ = " + wl + ".1 and α, β the arrows of " + ml;
        }
        return c;
    }
    if (nd >= 2) {
        c.type = RepType::Infinite;
        c.branch = "iv";
        c.reason = "≥2 distinguished vertices";
        return c;
    }
    if (nd == 1) {
        Verdict t = is_skew_brauer_tree(g);
        c.branch = "v";
        c.type = t ? RepType::Finite : RepType::Infinite;
        c.reason = t ? "skew-Brauer tree" : "not a skew-Brauer tree: " + t.detail;
        return c;
    }
    c.branch = "vi";
    int exceptional = 0;
    for (const auto& v : b.vertices) exceptional += v.mult > 1 ? 1 : 0;
    bool finite = is_tree(b) && exceptional <= 1;
    c.type = finite ? RepType::Finite : RepType::Infinite;
    c.reason = finite ? "Brauer tree" : (is_tree(b) ? "more than one exceptional vertex" : "not a tree");
    return c;
}

std::string to_string(const Classification& c) {
    return std::string(c.type == RepType::Finite ? "Finite" : "Infinite") + " (reason: " + c.reason + ")";
}

ProjectiveLayers projective_layers(const PathBasis& basis, VertexId x) {
    const BoundQuiver& a = basis.algebra();
    const Quiver& q = a.quiver;
    if (x < 0 || x >= q.vertex_count()) throw Error(ErrorKind::UnknownVertex, "vertex id " + std::to_string(x));
    ProjectiveLayers out;
    out.top = q.vertex(x).label;
    std::vector<std::string> socle;
    for (int i : basis.ending_at(x)) {
        const Path& p = basis.path(i);
        VertexId s = quiver_core::path_source(q, p);
        size_t layer = static_cast<size_t>(basis.layer(i));
        if (out.layers.size() <= layer) out.layers.resize(layer + 1);
        out.layers[layer].push_back(q.vertex(s).label);
        ++out.dimension;
        bool in_socle = true;
        for (ArrowId c : q.in_arrows(s))
            if (basis.reduce(quiver_core::compose_paths(q, quiver_core::arrow_path(q, c), p))) in_socle = false;
        if (in_socle) socle.push_back(q.vertex(s).label);
    }
    for (auto& l : out.layers) std::sort(l.begin(), l.end());
    std::sort(socle.begin(), socle.end());
    for (size_t i = 0; i < socle.size(); ++i) out.socle += (i ? "," : "") + socle[i];
    return out;
}

}  // namespace sba::brauer
