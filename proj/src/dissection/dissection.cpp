#include "sba/dissection/dissection.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sba/error.hpp"

namespace sba::dissection {

using quiver_core::ArrowId;
using quiver_core::Quiver;
using quiver_core::VertexId;

namespace {

std::string polygon_name(int i) { return "P" + std::to_string(i + 1); }

void ensure_valid(const OrbifoldDissection& d) {
    Verdict v = validate_dissection(d);
    if (!v) throw Error(ErrorKind::InvalidInput, "invalid dissection: " + v.condition + ": " + v.detail);
}

// Quiver of angle arrows and pendant loops, the arrow sequence read around each
// non-trivial polygon, and the quadratic monomials between arrows that do not follow each
// other around a polygon.
struct Built {
    Quiver quiver;
    std::vector<std::vector<ArrowId>> walks;
    std::map<std::string, MovePosition> positions;
    std::vector<Relation> monomials;
};

Built build(const OrbifoldDissection& d, bool special_loops) {
    Built b;
    for (const Arc& a : d.arcs) b.quiver.add_vertex(a.label);
    b.walks.resize(d.polygons.size());
    for (int i = 0; i < static_cast<int>(d.polygons.size()); ++i) {
        if (d.is_trivial(i)) continue;
        auto sides = d.arc_sides(i);
        for (size_t j = 0; j < sides.size(); ++j) {
            const Arc& arc = d.arcs[sides[j]];
            if (arc.kind == ArcKind::Pendant) {
                std::string label = "f" + arc.label;
                b.walks[i].push_back(b.quiver.add_arrow(label, sides[j], sides[j]));
                b.positions[label] = MovePosition{i, std::nullopt, sides[j]};
            }
            if (j + 1 < sides.size()) {
                std::string label = polygon_name(i) + "." + std::to_string(j);
                b.walks[i].push_back(b.quiver.add_arrow(label, sides[j], sides[j + 1]));
                b.positions[label] = MovePosition{i, static_cast<int>(j), std::nullopt};
            }
        }
    }
    std::set<std::pair<ArrowId, ArrowId>> follows;
    for (const auto& w : b.walks)
        for (size_t k = 0; k + 1 < w.size(); ++k) follows.insert({w[k], w[k + 1]});
    const Quiver& q = b.quiver;
    for (const auto& a : q.arrows()) {
        bool through_special = d.arcs[a.target].kind == ArcKind::Special;
        for (ArrowId c : q.out_arrows(a.target)) {
            if (follows.count({a.id, c}) && !(special_loops && through_special)) continue;
            b.monomials.push_back(Relation::monomial(quiver_core::make_path(q, {a.id, c})));
        }
    }
    if (special_loops)
        for (size_t x = 0; x < d.arcs.size(); ++x)
            if (d.arcs[x].kind == ArcKind::Special)
                b.quiver.add_arrow("f" + d.arcs[x].label, static_cast<VertexId>(x), static_cast<VertexId>(x), true);
    return b;
}

// Collects relations once each, keyed by their printed form.
class RelationList {
public:
    explicit RelationList(const Quiver& q) : q_(q) {}
    void add(Relation r) {
        if (seen_.insert(quiver_core::relation_to_string(q_, r)).second) out_.push_back(std::move(r));
    }
    std::vector<Relation> take() { return std::move(out_); }

private:
    const Quiver& q_;
    std::set<std::string> seen_;
    std::vector<Relation> out_;
};

std::vector<std::string> sorted_labels(const OrbifoldDissection& d, const std::vector<int>& arcs) {
    std::vector<std::string> out;
    for (int a : arcs) out.push_back(d.arcs.at(a).label);
    std::sort(out.begin(), out.end());
    return out;
}

std::multiset<std::vector<std::string>> puncture_shape(const OrbifoldDissection& d, const std::vector<Puncture>& ps) {
    std::multiset<std::vector<std::string>> out;
    for (const Puncture& p : ps) out.insert(sorted_labels(d, p.arcs));
    return out;
}

}  // namespace

Verdict validate_dissection(const OrbifoldDissection& d) {
    if (d.polygons.empty()) return Verdict::fail("polygons", "no polygons");
    std::vector<int> count(d.arcs.size(), 0);
    for (size_t i = 0; i < d.polygons.size(); ++i) {
        const Polygon& p = d.polygons[i];
        std::string where = polygon_name(static_cast<int>(i)) + (p.line ? " (line " + std::to_string(p.line) + ")" : "");
        auto nb = std::count(p.sides.begin(), p.sides.end(), kBoundary);
        if (nb != 1)
            return Verdict::fail("boundary", where + " has " + std::to_string(nb) + " BOUNDARY sides, expected 1");
        if (p.sides.size() < 2) return Verdict::fail("boundary", where + " has no arc side");
        for (int s : p.sides) {
            if (s == kBoundary) continue;
            if (s < 0 || s >= static_cast<int>(d.arcs.size())) return Verdict::fail("arcs", where + " uses an unknown arc");
            ++count[s];
        }
    }
    for (size_t a = 0; a < d.arcs.size(); ++a) {
        int want = d.arcs[a].kind == ArcKind::Regular ? 2 : 1;
        if (count[a] != want)
            return Verdict::fail("occurrences", "arc " + d.arcs[a].label + " occurs " + std::to_string(count[a]) +
                                                    " times, expected " + std::to_string(want),
                                 {d.arcs[a].label});
    }
    if (!d.punctures.empty() && puncture_shape(d, d.punctures) != puncture_shape(d, computed_punctures(d)))
        return Verdict::fail("punctures", "declared punctures do not match the gluing of the polygons");
    return Verdict::ok();
}

std::vector<int> trivial_polygons(const OrbifoldDissection& d) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(d.polygons.size()); ++i)
        if (d.is_trivial(i)) out.push_back(i);
    return out;
}

std::vector<Puncture> computed_punctures(const OrbifoldDissection& d) {
    // Corner j of a polygon sits before its j-th arc side; corner n (after the last side)
    // and corner 0 touch the boundary segment.
    std::vector<std::vector<int>> sides;
    std::vector<int> offset;
    int total = 0;
    for (int i = 0; i < static_cast<int>(d.polygons.size()); ++i) {
        sides.push_back(d.arc_sides(i));
        offset.push_back(total);
        total += static_cast<int>(sides.back().size()) + 1;
    }
    std::vector<int> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    std::vector<std::vector<std::pair<int, int>>> occurrences(d.arcs.size());
    for (size_t i = 0; i < sides.size(); ++i)
        for (size_t j = 0; j < sides[i].size(); ++j) occurrences[sides[i][j]].push_back({offset[i] + static_cast<int>(j), static_cast<int>(i)});
    for (size_t a = 0; a < d.arcs.size(); ++a) {
        const auto& occ = occurrences[a];
        if (d.arcs[a].kind != ArcKind::Regular || occ.size() != 2) {
            for (auto [c, _] : occ) unite(c, c + 1);
            continue;
        }
        // The two sides of an arc are glued with opposite directions.
        unite(occ[0].first, occ[1].first + 1);
        unite(occ[0].first + 1, occ[1].first);
    }
    std::set<int> on_boundary;
    for (size_t i = 0; i < sides.size(); ++i) {
        on_boundary.insert(find(offset[i]));
        on_boundary.insert(find(offset[i] + static_cast<int>(sides[i].size())));
    }
    std::map<int, size_t> index;
    std::vector<Puncture> out;
    for (size_t i = 0; i < sides.size(); ++i) {
        for (size_t j = 0; j < sides[i].size(); ++j) {
            int root = find(offset[i] + static_cast<int>(j));
            if (on_boundary.count(root)) continue;
            auto [it, fresh] = index.try_emplace(root, out.size());
            if (fresh) out.push_back({"q" + std::to_string(out.size() + 1), {}});
            out[it->second].arcs.push_back(sides[i][j]);
        }
    }
    return out;
}

BoundQuiver quiver_from_dissection(const OrbifoldDissection& d) {
    ensure_valid(d);
    Built b = build(d, true);
    BoundQuiver out;
    out.quiver = std::move(b.quiver);
    out.relations = std::move(b.monomials);
    out.admissible = out.special_loops().empty();
    return out;
}

DissectionTuple trivext_tuple(const OrbifoldDissection& d) {
    ensure_valid(d);
    Built b = build(d, false);
    DissectionTuple out;
    Quiver& q = b.quiver;
    std::vector<Path> closed;
    std::vector<ArrowId> closing;
    for (int i = 0; i < static_cast<int>(d.polygons.size()); ++i) {
        const auto& w = b.walks[i];
        if (w.empty()) continue;
        ArrowId beta = q.add_arrow("b" + polygon_name(i), q.arrow(w.back()).target, q.arrow(w.front()).source);
        std::vector<ArrowId> c = w;
        c.push_back(beta);
        closed.push_back(quiver_core::make_path(q, c));
        closing.push_back(beta);
        out.closed_polygons.push_back(i);
    }
    RelationList rels(q);
    for (Relation& r : b.monomials) rels.add(std::move(r));
    for (size_t k = 0; k < closing.size(); ++k) {
        ArrowId beta = closing[k];
        const auto& w = b.walks[out.closed_polygons[k]];
        for (ArrowId a : q.out_arrows(q.arrow(beta).target))
            if (a != w.front()) rels.add(Relation::monomial(quiver_core::make_path(q, {beta, a})));
        for (ArrowId a : q.in_arrows(q.arrow(beta).source))
            if (a != w.back()) rels.add(Relation::monomial(quiver_core::make_path(q, {a, beta})));
    }
    std::vector<Path> cycles;
    for (const Path& c : closed) {
        for (const Path& r : trivext::rotations(q, c)) {
            Path rc = r;
            rc.arrows.push_back(r.arrows.front());
            rels.add(Relation::monomial(rc));
            cycles.push_back(r);
        }
    }
    std::set<VertexId> sp;
    for (size_t x = 0; x < d.arcs.size(); ++x)
        if (d.arcs[x].kind == ArcKind::Special) sp.insert(static_cast<VertexId>(x));
    RelationList diffs(q);
    for (size_t i = 0; i < cycles.size(); ++i)
        for (size_t j = i + 1; j < cycles.size(); ++j)
            if (cycles[i].base == cycles[j].base && !sp.count(cycles[i].base) && cycles[i] != cycles[j])
                diffs.add(Relation::binomial(cycles[i], cycles[j]));
    out.differences = diffs.take();
    out.tuple.relations = rels.take();
    out.tuple.sp = std::move(sp);
    out.tuple.cycles = std::move(cycles);
    out.tuple.quiver = std::move(q);
    return out;
}

OrbifoldDissection contraction_addition(const OrbifoldDissection& d, const MovePosition& at) {
    ensure_valid(d);
    if (at.polygon < 0 || at.polygon >= static_cast<int>(d.polygons.size()))
        throw Error(ErrorKind::InvalidPosition, "no polygon " + std::to_string(at.polygon + 1));
    std::string where = polygon_name(at.polygon);
    if (d.is_trivial(at.polygon)) throw Error(ErrorKind::TrivialPolygon, where + " is trivial");
    if (at.angle.has_value() == at.pendant.has_value())
        throw Error(ErrorKind::InvalidPosition, "give exactly one of an angle and a pendant arc");
    auto sides = d.arc_sides(at.polygon);
    int n = static_cast<int>(sides.size());
    OrbifoldDissection out = d;
    std::vector<int> moved{kBoundary};
    if (at.angle) {
        int k = *at.angle;
        if (k < 0 || k >= n)
            throw Error(ErrorKind::InvalidPosition, where + " has angles 0.." + std::to_string(n - 2) + ", got " + std::to_string(k));
        for (int j = 1; j <= n; ++j) moved.push_back(sides[(k + j) % n]);
    } else {
        int x = *at.pendant;
        auto it = std::find(sides.begin(), sides.end(), x);
        if (x < 0 || x >= static_cast<int>(d.arcs.size()) || d.arcs[x].kind != ArcKind::Pendant || it == sides.end())
            throw Error(ErrorKind::InvalidPosition, "no pendant arc of " + where + " at the given position");
        int j = static_cast<int>(it - sides.begin());
        for (int s = 0; s < n; ++s) moved.push_back(sides[(j + s) % n]);
        moved.push_back(x);
        out.arcs[x].kind = ArcKind::Regular;
    }
    out.polygons[at.polygon].sides = std::move(moved);
    auto before = computed_punctures(d);
    auto after = computed_punctures(out);
    if (!d.punctures.empty() || !after.empty())
        if (puncture_shape(d, before) != puncture_shape(out, after)) out.punctures = std::move(after);
    return out;
}

std::vector<MovePosition> moves_for_cut(const OrbifoldDissection& d, const std::set<std::string>& keys) {
    ensure_valid(d);
    Built b = build(d, false);
    std::map<int, MovePosition> by_polygon;
    for (const std::string& k : keys) {
        auto it = b.positions.find(k);
        if (it == b.positions.end()) continue;
        auto [slot, fresh] = by_polygon.try_emplace(it->second.polygon, it->second);
        if (!fresh)
            throw Error(ErrorKind::InvalidInput, "cut meets " + polygon_name(it->second.polygon) + " more than once");
    }
    std::vector<MovePosition> out;
    for (auto& [_, m] : by_polygon) out.push_back(m);
    return out;
}

OrbifoldDissection apply_moves(const OrbifoldDissection& d, const std::vector<MovePosition>& moves) {
    OrbifoldDissection out = d;
    for (const MovePosition& m : moves) out = contraction_addition(out, m);
    return out;
}

OrbifoldDissection geometric_reflection(const OrbifoldDissection& d, int arc, trivext::Direction direction) {
    ensure_valid(d);
    if (arc < 0 || arc >= static_cast<int>(d.arcs.size())) throw Error(ErrorKind::NotReflectable, "no such arc");
    const std::string& label = d.arcs[arc].label;
    bool minus = direction == trivext::Direction::Minus;
    if (d.arcs[arc].kind == ArcKind::Pendant)
        throw Error(ErrorKind::NotReflectable, "pendant arc " + label + " carries a loop");
    std::vector<MovePosition> moves;
    for (int i = 0; i < static_cast<int>(d.polygons.size()); ++i) {
        if (d.is_trivial(i)) continue;
        auto sides = d.arc_sides(i);
        int n = static_cast<int>(sides.size());
        for (int j = 0; j < n; ++j) {
            if (sides[j] != arc) continue;
            if (minus ? j != 0 : j != n - 1)
                throw Error(ErrorKind::NotReflectable,
                            "arc " + label + " is not a " + (minus ? "source" : "sink") + " (" + polygon_name(i) + ")");
            moves.push_back(MovePosition{i, minus ? 0 : n - 2, std::nullopt});
        }
    }
    return apply_moves(d, moves);
}

Poly q_cartan_det_formula(const OrbifoldDissection& d) {
    std::map<int, int> c;
    for (const Puncture& p : computed_punctures(d)) ++c[static_cast<int>(p.arcs.size())];
    for (const Arc& a : d.arcs)
        if (a.kind == ArcKind::Pendant) ++c[1];
    Poly out(1);
    for (auto [k, count] : c) {
        Poly factor = Poly(1) - Poly::monomial(k % 2 ? -1 : 1, k);
        for (int i = 0; i < count; ++i) out = out * factor;
    }
    return out;
}

}  // namespace sba::dissection
