#include "sba/skew_gentle/skew_gentle.hpp"

#include <algorithm>
#include <functional>

#include "sba/error.hpp"
#include "sba/quiver_core/gentle.hpp"
#include "sba/quiver_core/iso.hpp"

namespace sba::skew_gentle {

using namespace quiver_core;

namespace {

std::vector<Sign> sign_options(const std::set<VertexId>& sp, VertexId v) {
    if (sp.count(v)) return {Sign::Plus, Sign::Minus};
    return {Sign::None};
}

// Visits every decoration of `p`; `fix_first`/`fix_last` pin the endpoint signs unless None.
void for_each_decoration(const SgQuiver& sg, const Quiver& q, const std::set<VertexId>& sp, const Path& p,
                         Sign fix_first, Sign fix_last, const std::function<void(const Path&, Sign, Sign)>& visit) {
    std::vector<VertexId> verts{p.base};
    for (ArrowId a : p.arrows) verts.push_back(q.arrow(a).target);
    if (!p.arrows.empty()) verts[0] = q.arrow(p.arrows.front()).source;
    std::vector<std::vector<Sign>> opts;
    for (size_t i = 0; i < verts.size(); ++i) opts.push_back(sign_options(sp, verts[i]));
    if (fix_first != Sign::None) opts.front() = {fix_first};
    if (fix_last != Sign::None) {
        if (p.arrows.empty() && fix_first != Sign::None && fix_first != fix_last) return;
        opts.back() = {fix_last};
    }
    std::vector<Sign> cur(verts.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == verts.size()) {
            Path lifted;
            lifted.base = sg.vertex_of.at({verts[0], cur[0]});
            for (size_t k = 0; k < p.arrows.size(); ++k)
                lifted.arrows.push_back(sg.arrow_of.at({p.arrows[k], cur[k], cur[k + 1]}));
            visit(lifted, cur.front(), cur.back());
            return;
        }
        for (Sign s : opts[i]) {
            cur[i] = s;
            rec(i + 1);
        }
    };
    rec(0);
}

class RelationSet {
public:
    explicit RelationSet(const Quiver& q) : q_(q) {}
    void add(Relation r) {
        if (seen_.insert(relation_to_string(q_, r)).second) rels_.push_back(std::move(r));
    }
    std::vector<Relation> take() { return std::move(rels_); }

private:
    const Quiver& q_;
    std::set<std::string> seen_;
    std::vector<Relation> rels_;
};

std::string arrow_sg_label(const std::string& base, Sign s, Sign t) {
    return std::string(sign_text(s)) + base + sign_text(t);
}

}  // namespace

std::set<VertexId> special_vertices_of(const BoundQuiver& p) {
    std::set<VertexId> sp;
    for (const auto& a : p.quiver.arrows())
        if (a.special_loop) sp.insert(a.source);
    return sp;
}

Verdict is_skew_gentle(const BoundQuiver& p) {
    const Quiver& q = p.quiver;
    for (const auto& a : q.arrows())
        if (a.special_loop && a.source != a.target)
            return Verdict::fail("1", "special arrow " + a.label + " is not a loop", {a.label});
    for (const auto& r : p.relations)
        for (const auto& t : r.terms)
            for (ArrowId a : t.path.arrows)
                if (q.arrow(a).special_loop)
                    return Verdict::fail("2", "relation uses special loop " + q.arrow(a).label,
                                         {relation_to_string(q, r)});
    std::set<VertexId> sp = special_vertices_of(p);
    for (VertexId v : p.special_vertices)
        if (!sp.count(v))
            return Verdict::fail("4", "vertex " + q.vertex(v).label + " is marked special but has no special loop",
                                 {q.vertex(v).label});
    for (VertexId x : sp) {
        const std::string& lx = q.vertex(x).label;
        std::vector<ArrowId> ins, outs;
        int loops = 0;
        for (ArrowId a : q.out_arrows(x)) {
            if (q.arrow(a).target == x) {
                ++loops;
                continue;
            }
            outs.push_back(a);
        }
        for (ArrowId a : q.in_arrows(x))
            if (q.arrow(a).source != x) ins.push_back(a);
        if (loops != 1) return Verdict::fail("4", "special vertex " + lx + " carries another loop", {lx});
        if (ins.size() > 1 || outs.size() > 1)
            return Verdict::fail("4", "special vertex " + lx + " meets more than one arrow on a side", {lx});
        if (ins.size() == 1 && outs.size() == 1 && !is_zero_relation(p, ins[0], outs[0]))
            return Verdict::fail("4", "product through special vertex " + lx + " is not a relation",
                                 {q.arrow(ins[0]).label, q.arrow(outs[0]).label});
    }
    std::vector<bool> keep(q.arrow_count());
    for (const auto& a : q.arrows()) keep[a.id] = !a.special_loop;
    std::vector<ArrowId> nid;
    BoundQuiver ordinary;
    ordinary.quiver = copy_arrows(q, keep, nid);
    for (const auto& r : p.relations) {
        Relation nr;
        for (const auto& t : r.terms) nr.terms.push_back({t.coeff, *remap_path(t.path, nid)});
        ordinary.relations.push_back(std::move(nr));
    }
    Verdict g = is_gentle(ordinary);
    if (!g) return Verdict::fail("3", "without special loops: condition " + g.condition + ": " + g.detail, g.witnesses);
    return Verdict::ok();
}

BoundQuiver auxiliary_gentle(const BoundQuiver& p) {
    const Quiver& q = p.quiver;
    std::set<VertexId> sp = special_vertices_of(p);
    sp.insert(p.special_vertices.begin(), p.special_vertices.end());
    std::vector<bool> keep(q.arrow_count());
    for (const auto& a : q.arrows()) keep[a.id] = !a.special_loop;
    std::vector<ArrowId> nid;
    BoundQuiver aux;
    aux.quiver = copy_arrows(q, keep, nid);
    aux.special_vertices = sp;
    for (const auto& r : p.relations) {
        if (r.is_monomial() && r.terms[0].path.length() == 2 && sp.count(q.arrow(r.terms[0].path.arrows[0]).target))
            continue;
        Relation nr;
        for (const auto& t : r.terms) nr.terms.push_back({t.coeff, *remap_path(t.path, nid)});
        aux.relations.push_back(std::move(nr));
    }
    return aux;
}

SgQuiver sg_quiver_map(const Quiver& q, const std::set<VertexId>& sp) {
    SgQuiver sg;
    for (const auto& a : q.arrows())
        if (a.source == a.target && (sp.count(a.source)))
            throw Error(ErrorKind::LoopAtDistinguished, "loop " + a.label + " at distinguished vertex " +
                                                            q.vertex(a.source).label);
    for (const auto& v : q.vertices()) {
        for (Sign s : sign_options(sp, v.id)) {
            VertexId id = sg.quiver.add_vertex(v.label + sign_text(s));
            Vertex& nv = sg.quiver.vertex_mut(id);
            nv.origin = v.origin.empty() ? v.label : v.origin;
            nv.sign = s;
            sg.vertex_of[{v.id, s}] = id;
            sg.origin_vertex.push_back(v.id);
        }
    }
    for (const auto& a : q.arrows()) {
        for (Sign s : sign_options(sp, a.source)) {
            for (Sign t : sign_options(sp, a.target)) {
                std::string base = a.origin.empty() ? a.label : a.origin;
                ArrowId id = sg.quiver.add_arrow(sp.count(a.source) || sp.count(a.target) ? arrow_sg_label(a.label, s, t)
                                                                                        : a.label,
                                                 sg.vertex_of.at({a.source, s}), sg.vertex_of.at({a.target, t}),
                                                 a.special_loop);
                Arrow& na = sg.quiver.arrow_mut(id);
                na.origin = base;
                na.source_sign = s;
                na.target_sign = t;
                sg.arrow_of[{a.id, s, t}] = id;
                sg.origin_arrow.push_back(a.id);
            }
        }
    }
    return sg;
}

Quiver sg_quiver(const Quiver& q, const std::set<VertexId>& sp) { return sg_quiver_map(q, sp).quiver; }

std::vector<Relation> sg_ideal(const SgTuple& t) { return sg_ideal(t, sg_quiver_map(t.quiver, t.sp)); }

std::vector<Relation> sg_ideal(const SgTuple& t, const SgQuiver& sg) {
    const Quiver& q = t.quiver;
    const auto& sp = t.sp;
    RelationSet out(sg.quiver);
    auto lift = [&](const Path& p, const std::vector<Sign>& signs) {
        Path r;
        r.base = sg.vertex_of.at({path_source(q, p), signs.front()});
        for (size_t k = 0; k < p.arrows.size(); ++k) r.arrows.push_back(sg.arrow_of.at({p.arrows[k], signs[k], signs[k + 1]}));
        return r;
    };
    // Type a.
    for (VertexId x : sp) {
        for (ArrowId a : q.in_arrows(x)) {
            for (ArrowId b : q.out_arrows(x)) {
                Path ab = make_path(q, {a, b});
                for (Sign e : sign_options(sp, q.arrow(a).source))
                    for (Sign e2 : sign_options(sp, q.arrow(b).target))
                        out.add(Relation::binomial(lift(ab, {e, Sign::Plus, e2}), lift(ab, {e, Sign::Minus, e2})));
            }
        }
    }
    // Type b: differences of distinguished cycles at a common non-distinguished vertex.
    for (size_t i = 0; i < t.cycles.size(); ++i) {
        for (size_t j = i + 1; j < t.cycles.size(); ++j) {
            const Path& c1 = t.cycles[i];
            const Path& c2 = t.cycles[j];
            VertexId v = path_source(q, c1);
            if (path_source(q, c2) != v || sp.count(v) || c1 == c2) continue;
            std::vector<Path> l1, l2;
            for_each_decoration(sg, q, sp, c1, Sign::None, Sign::None, [&](const Path& p, Sign, Sign) { l1.push_back(p); });
            for_each_decoration(sg, q, sp, c2, Sign::None, Sign::None, [&](const Path& p, Sign, Sign) { l2.push_back(p); });
            for (const Path& a : l1)
                for (const Path& b : l2) out.add(Relation::binomial(a, b));
        }
    }
    for (const Relation& r : t.relations) {
        if (r.is_monomial()) {
            // Type c.
            for_each_decoration(sg, q, sp, r.terms[0].path, Sign::None, Sign::None,
                                [&](const Path& p, Sign, Sign) { out.add(Relation::monomial(p)); });
            continue;
        }
        const Path& p1 = r.terms[0].path;
        const Path& p2 = r.terms[1].path;
        for (Sign e : sign_options(sp, path_source(q, p1))) {
            for (Sign e2 : sign_options(sp, path_target(q, p1))) {
                std::vector<Path> l1, l2;
                for_each_decoration(sg, q, sp, p1, e, e2, [&](const Path& p, Sign, Sign) { l1.push_back(p); });
                for_each_decoration(sg, q, sp, p2, e, e2, [&](const Path& p, Sign, Sign) { l2.push_back(p); });
                for (const Path& a : l1)
                    for (const Path& b : l2) out.add(Relation::binomial(a, b, r.terms[0].coeff, r.terms[1].coeff));
            }
        }
    }
    // Type d.
    for (const Path& c : t.cycles) {
        if (!sp.count(path_source(q, c))) continue;
        for_each_decoration(sg, q, sp, c, Sign::None, Sign::None, [&](const Path& p, Sign s, Sign e) {
            if (s != e) out.add(Relation::monomial(p));
        });
    }
    return out.take();
}

BoundQuiver sg_algebra(const SgTuple& t) {
    SgQuiver sg = sg_quiver_map(t.quiver, t.sp);
    BoundQuiver b;
    b.relations = sg_ideal(t, sg);
    b.quiver = std::move(sg.quiver);
    b.admissible = true;
    return b;
}

BoundQuiver admissible_presentation(const BoundQuiver& p) {
    Verdict v = is_skew_gentle(p);
    if (!v) throw Error(ErrorKind::UnsupportedClass, "not skew-gentle: condition " + v.condition + ": " + v.detail);
    std::set<VertexId> sp = special_vertices_of(p);
    if (sp.empty()) {
        BoundQuiver r = p;
        r.admissible = true;
        r.special_vertices.clear();
        return r;
    }
    BoundQuiver aux = auxiliary_gentle(p);
    return sg_algebra(SgTuple{aux.quiver, aux.relations, sp, {}});
}

std::vector<Path> sp_maximal_paths(const BoundQuiver& p) {
    const Quiver& q = p.quiver;
    std::set<VertexId> sp = special_vertices_of(p);
    std::map<VertexId, ArrowId> loop_at;
    for (const auto& a : q.arrows())
        if (a.special_loop) loop_at[a.source] = a.id;
    BoundQuiver aux = auxiliary_gentle(p);
    PathBasis basis = enumerate_basis(aux);
    std::vector<Path> maxima = maximal_paths(aux, basis);
    std::sort(maxima.begin(), maxima.end(), [&](const Path& a, const Path& b) {
        return path_labels(aux.quiver, a) < path_labels(aux.quiver, b);
    });
    std::vector<Path> out;
    for (const Path& m : maxima) {
        Path r;
        VertexId s = path_source(aux.quiver, m);
        r.base = s;
        if (sp.count(s)) r.arrows.push_back(loop_at.at(s));
        for (size_t k = 0; k < m.arrows.size(); ++k) {
            ArrowId a = q.arrow_id(aux.quiver.arrow(m.arrows[k]).label);
            r.arrows.push_back(a);
            VertexId t = q.arrow(a).target;
            if (sp.count(t)) r.arrows.push_back(loop_at.at(t));
        }
        out.push_back(std::move(r));
    }
    return out;
}

Path induced_path(const SgQuiver& sg, const Quiver& aux, const std::set<VertexId>& sp, const Path& p, Sign first,
                  Sign last) {
    VertexId s = path_source(aux, p), t = path_target(aux, p);
    if ((first != Sign::None) != (sp.count(s) > 0))
        throw Error(ErrorKind::SignMismatch, "start sign does not match vertex " + aux.vertex(s).label);
    if ((last != Sign::None) != (sp.count(t) > 0))
        throw Error(ErrorKind::SignMismatch, "end sign does not match vertex " + aux.vertex(t).label);
    if (p.trivial() && first != last) throw Error(ErrorKind::SignMismatch, "trivial path with two different signs");
    std::vector<Sign> signs{first};
    for (size_t k = 0; k + 1 < p.arrows.size(); ++k)
        signs.push_back(sp.count(aux.arrow(p.arrows[k]).target) ? Sign::Plus : Sign::None);
    if (!p.arrows.empty()) signs.push_back(last);
    Path r;
    r.base = sg.vertex_of.at({s, first});
    for (size_t k = 0; k < p.arrows.size(); ++k) r.arrows.push_back(sg.arrow_of.at({p.arrows[k], signs[k], signs[k + 1]}));
    return r;
}

std::vector<Path> all_lifts(const SgQuiver& sg, const Quiver& aux, const std::set<VertexId>& sp, const Path& p) {
    std::vector<Path> out;
    for_each_decoration(sg, aux, sp, p, Sign::None, Sign::None, [&](const Path& l, Sign, Sign) { out.push_back(l); });
    return out;
}

// ---------------------------------------------------------------------------------------

namespace {

// Vertex classes: singletons or twin pairs; member order fixes the +/- signs.
using Classes = std::vector<std::vector<VertexId>>;

std::optional<Classes> classes_from_origin(const BoundQuiver& b) {
    const Quiver& q = b.quiver;
    std::map<std::string, std::vector<VertexId>> by_origin;
    for (const auto& v : q.vertices()) {
        if (v.origin.empty()) return std::nullopt;
        by_origin[v.origin].push_back(v.id);
    }
    Classes cls;
    for (auto& [o, members] : by_origin) {
        if (members.size() == 1) {
            if (q.vertex(members[0]).sign != Sign::None) return std::nullopt;
        } else if (members.size() == 2) {
            std::sort(members.begin(), members.end(), [&](VertexId x, VertexId y) {
                return q.vertex(x).sign == Sign::Plus && q.vertex(y).sign != Sign::Plus;
            });
            if (q.vertex(members[0]).sign != Sign::Plus || q.vertex(members[1]).sign != Sign::Minus) return std::nullopt;
        } else {
            return std::nullopt;
        }
        cls.push_back(members);
    }
    // Each origin arrow must appear with every sign combination of its endpoint classes.
    std::vector<int> cls_of(q.vertex_count());
    for (size_t c = 0; c < cls.size(); ++c)
        for (VertexId v : cls[c]) cls_of[v] = static_cast<int>(c);
    std::map<std::string, std::vector<ArrowId>> by_arrow;
    for (const auto& a : q.arrows()) {
        if (a.origin.empty()) return std::nullopt;
        by_arrow[a.origin].push_back(a.id);
    }
    for (const auto& [o, arrows] : by_arrow) {
        int s = cls_of[q.arrow(arrows[0]).source], t = cls_of[q.arrow(arrows[0]).target];
        std::set<std::pair<VertexId, VertexId>> ends;
        for (ArrowId a : arrows) {
            if (cls_of[q.arrow(a).source] != s || cls_of[q.arrow(a).target] != t) return std::nullopt;
            ends.insert({q.arrow(a).source, q.arrow(a).target});
        }
        if (ends.size() != arrows.size() || arrows.size() != cls[s].size() * cls[t].size()) return std::nullopt;
    }
    return cls;
}

Classes classes_from_symmetry(const BoundQuiver& b) {
    const Quiver& q = b.quiver;
    const int n = q.vertex_count();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& a : q.arrows()) ++m[a.source][a.target];
    std::vector<bool> taken(n, false);
    Classes cls;
    for (int u = 0; u < n; ++u) {
        if (taken[u]) continue;
        int twin = -1;
        for (int v = u + 1; v < n && twin < 0; ++v) {
            if (taken[v] || m[u][v] || m[v][u] || m[u][u] || m[v][v]) continue;
            bool ok = true;
            for (int w = 0; w < n && ok; ++w) {
                if (w == u || w == v) continue;
                ok = m[u][w] == m[v][w] && m[w][u] == m[w][v];
            }
            if (ok) twin = v;
        }
        taken[u] = true;
        if (twin >= 0) {
            taken[twin] = true;
            cls.push_back({u, twin});
        } else {
            cls.push_back({u});
        }
    }
    return cls;
}

std::string strip_sign(const std::string& s) {
    if (!s.empty() && (s.back() == '+' || s.back() == '-')) return s.substr(0, s.size() - 1);
    return s;
}

std::optional<BoundQuiver> collapse(const BoundQuiver& b, const Classes& cls, bool use_origin) {
    const Quiver& q = b.quiver;
    std::vector<int> cls_of(q.vertex_count());
    std::vector<Sign> sign_of(q.vertex_count(), Sign::None);
    for (size_t c = 0; c < cls.size(); ++c) {
        for (size_t k = 0; k < cls[c].size(); ++k) {
            cls_of[cls[c][k]] = static_cast<int>(c);
            if (cls[c].size() == 2) sign_of[cls[c][k]] = k == 0 ? Sign::Plus : Sign::Minus;
        }
    }
    BoundQuiver p;
    std::set<VertexId> sp;
    for (size_t c = 0; c < cls.size(); ++c) {
        std::string label;
        if (use_origin) {
            label = q.vertex(cls[c][0]).origin;
        } else if (cls[c].size() == 1) {
            label = q.vertex(cls[c][0]).label;
        } else {
            std::string a = strip_sign(q.vertex(cls[c][0]).label), b2 = strip_sign(q.vertex(cls[c][1]).label);
            label = a == b2 ? a : a + "/" + b2;
        }
        while (p.quiver.find_vertex(label)) label += "'";
        VertexId id = p.quiver.add_vertex(label);
        if (cls[c].size() == 2) sp.insert(id);
    }
    // Group arrows between classes into origin arrows, one member per sign combination.
    std::map<std::pair<int, int>, std::vector<ArrowId>> between;
    for (const auto& a : q.arrows()) between[{cls_of[a.source], cls_of[a.target]}].push_back(a.id);
    std::vector<ArrowId> origin_of(q.arrow_count(), -1);
    for (auto& [key, arrows] : between) {
        size_t combos = cls[key.first].size() * cls[key.second].size();
        if (arrows.size() % combos) return std::nullopt;
        std::vector<std::vector<ArrowId>> groups;
        if (use_origin) {
            std::map<std::string, std::vector<ArrowId>> by;
            for (ArrowId a : arrows) by[q.arrow(a).origin].push_back(a);
            for (auto& [o, g] : by) groups.push_back(g);
        } else {
            std::map<std::pair<VertexId, VertexId>, std::vector<ArrowId>> by_ends;
            for (ArrowId a : arrows) by_ends[{q.arrow(a).source, q.arrow(a).target}].push_back(a);
            size_t mult = arrows.size() / combos;
            for (auto& [e, g] : by_ends)
                if (g.size() != mult) return std::nullopt;
            for (size_t j = 0; j < mult; ++j) {
                std::vector<ArrowId> g;
                for (auto& [e, list] : by_ends) g.push_back(list[j]);
                groups.push_back(g);
            }
        }
        for (const auto& g : groups) {
            if (g.size() != combos) return std::nullopt;
            std::string label;
            if (use_origin) {
                label = q.arrow(g[0]).origin;
            } else if (g.size() == 1) {
                label = q.arrow(g[0]).label;
            } else {
                for (size_t k = 0; k < g.size(); ++k) label += (k ? "/" : "") + q.arrow(g[k]).label;
            }
            while (p.quiver.find_arrow(label)) label += "'";
            ArrowId id = p.quiver.add_arrow(label, key.first, key.second);
            for (ArrowId a : g) origin_of[a] = id;
        }
    }
    auto project = [&](const Path& path) {
        Path r;
        r.base = cls_of[path.base];
        for (ArrowId a : path.arrows) r.arrows.push_back(origin_of[a]);
        if (!r.arrows.empty()) r.base = p.quiver.arrow(r.arrows.front()).source;
        return r;
    };
    std::set<std::vector<ArrowId>> monos;
    for (const Relation& r : b.relations) {
        if (r.is_monomial() && r.terms[0].path.length() == 2) {
            const Path& path = r.terms[0].path;
            if (sp.count(cls_of[q.arrow(path.arrows[0]).target])) continue;
            monos.insert(project(path).arrows);
        }
    }
    // Special loops and the relations through special vertices.
    for (VertexId x : sp) {
        for (ArrowId a : p.quiver.in_arrows(x))
            for (ArrowId c : p.quiver.out_arrows(x)) monos.insert({a, c});
    }
    for (const auto& arrows : monos) p.relations.push_back(Relation::monomial(make_path(p.quiver, arrows)));
    for (VertexId x : sp) {
        std::string name = "f" + p.quiver.vertex(x).label;
        while (p.quiver.find_arrow(name)) name += "'";
        p.quiver.add_arrow(name, x, x, true);
    }
    p.special_vertices = sp;
    p.admissible = sp.empty();
    return p;
}

}  // namespace

std::optional<BoundQuiver> recognize(const BoundQuiver& b) {
    std::vector<std::pair<Classes, bool>> attempts;
    if (auto c = classes_from_origin(b)) attempts.emplace_back(*c, true);
    attempts.emplace_back(classes_from_symmetry(b), false);
    for (const auto& [cls, use_origin] : attempts) {
        auto p = collapse(b, cls, use_origin);
        if (!p || !is_skew_gentle(*p)) continue;
        try {
            if (are_isomorphic(admissible_presentation(*p), b)) return p;
        } catch (const Error&) {
            continue;
        }
    }
    return std::nullopt;
}

}  // namespace sba::skew_gentle
