#include "sba/trivext/trivext.hpp"

#include <algorithm>
#include <cctype>

#include "sba/error.hpp"
#include "sba/quiver_core/gentle.hpp"
#include "sba/skew_gentle/skew_gentle.hpp"

namespace sba::trivext {

using quiver_core::Sign;
using quiver_core::sign_text;

namespace {

using Seq = std::vector<ArrowId>;

class RelationSet {
public:
    explicit RelationSet(const Quiver& q) : q_(q) {}
    void add(Relation r) {
        if (seen_.insert(quiver_core::relation_to_string(q_, r)).second) rels_.push_back(std::move(r));
    }
    std::vector<Relation> take() { return std::move(rels_); }

private:
    const Quiver& q_;
    std::set<std::string> seen_;
    std::vector<Relation> rels_;
};

std::string origin_key(const quiver_core::Arrow& a) { return a.origin.empty() ? a.label : a.origin; }

std::string origin_key(const quiver_core::Vertex& v) { return v.origin.empty() ? v.label : v.origin; }

bool has_signed_vertices(const Quiver& q) {
    return std::any_of(q.vertices().begin(), q.vertices().end(), [](const auto& v) { return v.sign != Sign::None; });
}

// Undecorated label sequence of a path; a trivial path is its vertex.
std::vector<std::string> projected_labels(const Quiver& q, const Path& p) {
    if (p.trivial()) return {"e_" + origin_key(q.vertex(p.base))};
    std::vector<std::string> out;
    for (ArrowId a : p.arrows) out.push_back(origin_key(q.arrow(a)));
    return out;
}

// First prefix among bp, bq, br, ... that no existing arrow uses in front of a digit.
std::string free_prefix(const Quiver& q, char first) {
    for (char c = 'p'; c <= 'z'; ++c) {
        std::string prefix{first, c};
        bool used = false;
        for (const auto& a : q.arrows()) {
            for (const std::string& l : {a.label, a.origin}) {
                size_t at = l.find(prefix);
                if (at != std::string::npos && at + 2 < l.size() &&
                    std::isdigit(static_cast<unsigned char>(l[at + 2])))
                    used = true;
            }
        }
        if (!used) return prefix;
    }
    return std::string{first, '_'};
}

struct NamedPath {
    Path path;
    std::string base;  // undecorated name, e.g. bp1
    std::string label;
    Sign source_sign = Sign::None;  // of the new arrow t(p) -> s(p)
    Sign target_sign = Sign::None;
};

// Names for arrows t(p) -> s(p) (or t(p)[n] -> s(p)[n+1]), indexed by the undecorated
// label sequence of p and carrying endpoint signs on an sg-presentation.
std::vector<NamedPath> name_paths(const Quiver& q, std::vector<Path> paths, const std::string& prefix) {
    std::sort(paths.begin(), paths.end(), [&](const Path& a, const Path& b) {
        auto la = projected_labels(q, a), lb = projected_labels(q, b);
        if (la != lb) return la < lb;
        return quiver_core::path_labels(q, a) < quiver_core::path_labels(q, b);
    });
    bool signed_q = has_signed_vertices(q);
    std::map<std::vector<std::string>, int> index;
    for (const Path& p : paths) index.emplace(projected_labels(q, p), 0);
    int k = 0;
    for (auto& [labels, i] : index) i = ++k;
    std::vector<NamedPath> out;
    std::set<std::string> used;
    for (const Path& p : paths) {
        NamedPath n;
        n.path = p;
        n.base = prefix + std::to_string(index.at(projected_labels(q, p)));
        if (signed_q) {
            n.source_sign = q.vertex(quiver_core::path_target(q, p)).sign;
            n.target_sign = q.vertex(quiver_core::path_source(q, p)).sign;
        }
        n.label = std::string(sign_text(n.source_sign)) + n.base + sign_text(n.target_sign);
        while (!used.insert(n.label).second) n.label += "'";
        out.push_back(std::move(n));
    }
    return out;
}

Path closed_path(const Quiver& q, const Seq& arrows) { return quiver_core::make_path(q, arrows); }

Path canonical_rotation(const Quiver& q, const Path& c) {
    auto rots = rotations(q, c);
    return *std::min_element(rots.begin(), rots.end(), [&](const Path& a, const Path& b) {
        return quiver_core::path_labels(q, a) < quiver_core::path_labels(q, b);
    });
}

// Backtracking over cycles given as token sequences: every cycle must contain exactly one
// chosen token, counted with multiplicity.
class CutSearch {
public:
    CutSearch(const std::vector<std::vector<int>>& cycles, std::function<std::string(int)> name)
        : cycles_(cycles), name_(std::move(name)) {
        for (size_t c = 0; c < cycles_.size(); ++c)
            for (int tok : cycles_[c]) ++mult_[tok][static_cast<int>(c)];
        count_.assign(cycles_.size(), 0);
    }

    void run(const std::function<bool(const std::set<int>&)>& emit) {
        emit_ = &emit;
        stop_ = false;
        step(0);
    }

private:
    void step(size_t i) {
        if (stop_) return;
        while (i < cycles_.size() && count_[i] == 1) ++i;
        if (i == cycles_.size()) {
            if (!(*emit_)(chosen_)) stop_ = true;
            return;
        }
        std::vector<int> options;
        for (int tok : cycles_[i])
            if (mult_[tok][static_cast<int>(i)] == 1) options.push_back(tok);
        std::sort(options.begin(), options.end(), [&](int a, int b) { return name_(a) < name_(b); });
        options.erase(std::unique(options.begin(), options.end()), options.end());
        for (int tok : options) {
            bool ok = true;
            for (auto [c, m] : mult_[tok])
                if (count_[c] + m > 1) ok = false;
            if (!ok) continue;
            for (auto [c, m] : mult_[tok]) count_[c] += m;
            chosen_.insert(tok);
            step(i + 1);
            chosen_.erase(tok);
            for (auto [c, m] : mult_[tok]) count_[c] -= m;
            if (stop_) return;
        }
    }

    const std::vector<std::vector<int>>& cycles_;
    std::function<std::string(int)> name_;
    std::map<int, std::map<int, int>> mult_;
    std::vector<int> count_;
    std::set<int> chosen_;
    const std::function<bool(const std::set<int>&)>* emit_ = nullptr;
    bool stop_ = false;
};

// Undecorated cycles over string keys, deduplicated up to rotation.
struct ProjectedCycles {
    std::vector<std::string> keys;
    std::vector<std::vector<int>> cycles;
    std::map<std::string, int> key_index;
};

ProjectedCycles project_cycles(const TrivialExtension& t) {
    const Quiver& q = t.algebra.quiver;
    ProjectedCycles pc;
    for (const auto& a : q.arrows()) pc.key_index.emplace(origin_key(a), 0);
    for (auto& [k, i] : pc.key_index) {
        i = static_cast<int>(pc.keys.size());
        pc.keys.push_back(k);
    }
    std::set<std::vector<int>> seen;
    for (const auto& c : t.all_cycles) {
        std::vector<int> toks;
        for (ArrowId a : c.cycle.arrows) toks.push_back(pc.key_index.at(origin_key(q.arrow(a))));
        std::vector<int> best = toks;
        for (size_t r = 1; r < toks.size(); ++r) {
            std::vector<int> rot(toks.begin() + r, toks.end());
            rot.insert(rot.end(), toks.begin(), toks.begin() + r);
            best = std::min(best, rot);
        }
        if (seen.insert(best).second) pc.cycles.push_back(best);
    }
    return pc;
}

bool is_admissible_cut(const TrivialExtension& t, const std::set<ArrowId>& d) {
    for (const auto& c : t.all_cycles) {
        int n = 0;
        for (ArrowId a : c.cycle.arrows) n += d.count(a) ? 1 : 0;
        if (n != 1) return false;
    }
    return true;
}

CutSet closure(const TrivialExtension& t, const ProjectedCycles& pc, const std::set<int>& keys) {
    CutSet d;
    d.kind = CutKind::Good;
    for (const auto& a : t.algebra.quiver.arrows())
        if (keys.count(pc.key_index.at(origin_key(a)))) d.arrows.insert(a.id);
    return d;
}

bool contains_subpath(const Seq& hay, const Seq& needle) {
    if (needle.size() > hay.size()) return false;
    return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

std::vector<Path> rotations(const Quiver& q, const Path& c) {
    std::vector<Path> out;
    if (c.trivial()) return {c};
    for (size_t r = 0; r < c.arrows.size(); ++r) {
        Seq s(c.arrows.begin() + r, c.arrows.end());
        s.insert(s.end(), c.arrows.begin(), c.arrows.begin() + r);
        out.push_back(closed_path(q, s));
    }
    return out;
}

std::vector<Path> socle_basis(const BoundQuiver& a, const PathBasis& basis) {
    if (!quiver_core::is_gentle(a) && !skew_gentle::recognize(a))
        throw Error(ErrorKind::UnsupportedClass, "socle basis needs a gentle or admissible skew-gentle algebra");
    return quiver_core::maximal_paths(a, basis);
}

TrivialExtension trivial_extension(const BoundQuiver& a) {
    if (!a.admissible) throw Error(ErrorKind::NotAdmissible, "trivial extension needs an admissible presentation");
    PathBasis basis = quiver_core::enumerate_basis(a);
    std::vector<Path> socle = socle_basis(a, basis);

    TrivialExtension t;
    t.source = std::make_shared<const BoundQuiver>(a);
    t.algebra.quiver = a.quiver;
    t.algebra.admissible = true;
    Quiver& q = t.algebra.quiver;

    // New arrows beta_p : t(p) -> s(p).
    std::vector<std::pair<ArrowId, Path>> fresh;
    for (const NamedPath& n : name_paths(a.quiver, socle, free_prefix(a.quiver, 'b'))) {
        ArrowId id = q.add_arrow(n.label, quiver_core::path_target(a.quiver, n.path),
                                 quiver_core::path_source(a.quiver, n.path));
        auto& ar = q.arrow_mut(id);
        ar.origin = n.base;
        ar.source_sign = n.source_sign;
        ar.target_sign = n.target_sign;
        t.new_arrows[id] = n.path;
        fresh.emplace_back(id, n.path);
    }

    // Elementary cycles u * beta_p for every nonzero multiple u of p.
    for (const auto& [beta, p] : fresh) {
        int idx = basis.index_of(p);
        Seq own = p.arrows;
        own.push_back(beta);
        t.cycles.push_back({canonical_rotation(q, closed_path(q, own)), 1, beta});
        for (const auto& [u, c] : basis.members(idx)) {
            Seq s = u.arrows;
            s.push_back(beta);
            Path cyc = canonical_rotation(q, closed_path(q, s));
            t.all_cycles.push_back({cyc, c, beta});
            if (u == p) t.cycles.back().weight = c;
        }
    }

    auto by_labels = [&](const ElementaryCycle& x, const ElementaryCycle& y) {
        return quiver_core::path_labels(q, x.cycle) < quiver_core::path_labels(q, y.cycle);
    };
    std::sort(t.all_cycles.begin(), t.all_cycles.end(), by_labels);

    RelationSet rels(q);
    for (const Relation& r : a.relations) rels.add(r);

    // Paths lying on some elementary cycle: subpaths of rotations, up to the full length.
    std::set<Seq> on_cycle;
    struct Rot {
        Path path;
        mpq_class weight;
    };
    std::vector<Rot> rots;
    for (const auto& c : t.all_cycles) {
        for (const Path& r : rotations(q, c.cycle)) {
            rots.push_back({r, c.weight});
            for (size_t i = 0; i < r.arrows.size(); ++i)
                for (size_t len = 1; i + len <= r.arrows.size(); ++len)
                    on_cycle.insert(Seq(r.arrows.begin() + i, r.arrows.begin() + i + len));
        }
    }
    // Minimal paths off every elementary cycle.
    for (const Seq& s : on_cycle) {
        VertexId end = q.arrow(s.back()).target;
        for (ArrowId b : q.out_arrows(end)) {
            Seq w = s;
            w.push_back(b);
            if (on_cycle.count(w)) continue;
            if (!on_cycle.count(Seq(w.begin() + 1, w.end()))) continue;
            rels.add(Relation::monomial(closed_path(q, w)));
        }
    }
    // Rotations at a common vertex agree once their longest common suffix is removed.
    for (size_t i = 0; i < rots.size(); ++i) {
        for (size_t j = i + 1; j < rots.size(); ++j) {
            const Path& r1 = rots[i].path;
            const Path& r2 = rots[j].path;
            if (r1.base != r2.base || r1 == r2) continue;
            size_t k = 0;
            while (k < r1.arrows.size() && k < r2.arrows.size() &&
                   r1.arrows[r1.arrows.size() - 1 - k] == r2.arrows[r2.arrows.size() - 1 - k])
                ++k;
            if (k >= r1.arrows.size() || k >= r2.arrows.size()) continue;
            Path p1 = quiver_core::subpath(q, r1, 0, static_cast<int>(r1.arrows.size() - k));
            Path p2 = quiver_core::subpath(q, r2, 0, static_cast<int>(r2.arrows.size() - k));
            if (p1 == p2) continue;
            if (quiver_core::compare_paths(q, p2, p1) < 0) {
                rels.add(Relation::binomial(p2, p1, rots[i].weight, -rots[j].weight));
            } else {
                rels.add(Relation::binomial(p1, p2, rots[j].weight, -rots[i].weight));
            }
        }
    }
    t.algebra.relations = rels.take();
    return t;
}

std::vector<ElementaryCycle> elementary_cycles(const TrivialExtension& t) { return t.cycles; }

void enumerate_admissible_cuts(const TrivialExtension& t, const std::function<bool(const CutSet&)>& emit) {
    const Quiver& q = t.algebra.quiver;
    std::vector<std::vector<int>> cycles;
    for (const auto& c : t.all_cycles) cycles.emplace_back(c.cycle.arrows.begin(), c.cycle.arrows.end());
    CutSearch search(cycles, [&](int a) { return q.arrow(a).label; });
    search.run([&](const std::set<int>& chosen) {
        CutSet d;
        d.arrows.insert(chosen.begin(), chosen.end());
        d.kind = CutKind::Admissible;
        return emit(d);
    });
}

std::vector<CutSet> admissible_cuts(const TrivialExtension& t, long limit) {
    std::vector<CutSet> out;
    if (limit == 0) return out;
    enumerate_admissible_cuts(t, [&](const CutSet& d) {
        out.push_back(d);
        return limit < 0 || static_cast<long>(out.size()) < limit;
    });
    return out;
}

void enumerate_good_cuts(const TrivialExtension& t, const std::function<bool(const CutSet&)>& emit) {
    ProjectedCycles pc = project_cycles(t);
    CutSearch search(pc.cycles, [&](int k) { return pc.keys[k]; });
    search.run([&](const std::set<int>& keys) {
        CutSet d = closure(t, pc, keys);
        if (!is_admissible_cut(t, d.arrows))
            throw Error(ErrorKind::NotSkewGentleSource, "sign closure of an auxiliary cut is not a cut");
        return emit(d);
    });
}

std::vector<CutSet> good_cuts(const TrivialExtension& t, long limit) {
    std::vector<CutSet> out;
    if (limit == 0) return out;
    enumerate_good_cuts(t, [&](const CutSet& d) {
        out.push_back(d);
        return limit < 0 || static_cast<long>(out.size()) < limit;
    });
    return out;
}

bool is_good(const TrivialExtension& t, const CutSet& d) {
    if (!is_admissible_cut(t, d.arrows)) return false;
    ProjectedCycles pc = project_cycles(t);
    std::set<int> keys;
    for (ArrowId a : d.arrows) keys.insert(pc.key_index.at(origin_key(t.algebra.quiver.arrow(a))));
    return closure(t, pc, keys).arrows == d.arrows;
}

BoundQuiver quotient_by_arrows(const BoundQuiver& a, const std::set<ArrowId>& arrows) {
    const Quiver& q = a.quiver;
    for (ArrowId x : arrows)
        if (x < 0 || x >= q.arrow_count()) throw Error(ErrorKind::UnknownArrow, "arrow id " + std::to_string(x));
    std::vector<bool> keep(q.arrow_count(), true);
    for (ArrowId x : arrows) keep[x] = false;
    std::vector<ArrowId> nid;
    BoundQuiver out;
    out.quiver = quiver_core::copy_arrows(q, keep, nid);
    out.special_vertices = a.special_vertices;
    out.admissible = a.admissible;

    std::vector<Relation> rels;
    for (const Relation& r : a.relations) {
        Relation nr;
        for (const auto& term : r.terms)
            if (auto p = quiver_core::remap_path(term.path, nid)) nr.terms.push_back({term.coeff, *p});
        if (!nr.terms.empty()) rels.push_back(std::move(nr));
    }
    // A term containing a monomial vanishes; repeat until nothing changes.
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<Seq> monos;
        for (const Relation& r : rels)
            if (r.is_monomial()) monos.push_back(r.terms[0].path.arrows);
        auto killed = [&](const Seq& s, bool strictly) {
            for (const Seq& m : monos) {
                if (strictly && m == s) continue;
                if (contains_subpath(s, m)) return true;
            }
            return false;
        };
        std::vector<Relation> next;
        std::set<std::string> seen;
        for (Relation& r : rels) {
            if (r.is_monomial()) {
                r.terms[0].coeff = 1;
                if (killed(r.terms[0].path.arrows, true)) {
                    changed = true;
                    continue;
                }
            } else {
                std::vector<quiver_core::Term> live;
                for (auto& term : r.terms)
                    if (!killed(term.path.arrows, false)) live.push_back(term);
                if (live.size() == 2 && live[0].path == live[1].path) {
                    mpq_class c = live[0].coeff + live[1].coeff;
                    live.resize(1);
                    live[0].coeff = c;
                    if (c == 0) live.clear();
                }
                if (live.size() != r.terms.size()) changed = true;
                if (live.empty()) continue;
                r.terms = live;
                if (r.is_monomial()) r.terms[0].coeff = 1;
            }
            if (seen.insert(quiver_core::relation_to_string(out.quiver, r)).second) next.push_back(std::move(r));
            else changed = true;
        }
        rels = std::move(next);
    }
    out.relations = std::move(rels);
    return out;
}

BoundQuiver quotient_by_cut(const TrivialExtension& t, const CutSet& d) { return quotient_by_arrows(t.algebra, d.arrows); }

std::string cut_to_string(const Quiver& q, const CutSet& d) {
    std::vector<std::string> labels;
    for (ArrowId a : d.arrows) labels.push_back(q.arrow(a).label);
    std::sort(labels.begin(), labels.end());
    std::string s = "cut:";
    for (size_t i = 0; i < labels.size(); ++i) s += (i ? ", " : " ") + labels[i];
    return s;
}

RepetitiveWindow repetitive_window(const BoundQuiver& a, int n_min, int n_max) {
    if (n_min > n_max) throw Error(ErrorKind::InvalidInput, "empty window");
    const Quiver& q = a.quiver;
    std::vector<Path> maxima;
    if (a.admissible) {
        PathBasis basis = quiver_core::enumerate_basis(a);
        maxima = quiver_core::maximal_paths(a, basis);
    } else {
        maxima = skew_gentle::sp_maximal_paths(a);
    }
    std::vector<NamedPath> named = name_paths(q, maxima, "pbar");

    RepetitiveWindow w;
    w.n_min = n_min;
    w.n_max = n_max;
    w.algebra.admissible = a.admissible;
    Quiver& wq = w.algebra.quiver;
    const int levels = n_max - n_min + 1;
    auto level_tag = [](int n) { return "[" + std::to_string(n) + "]"; };
    // vid[level][v], aid[level][a], cid[level][k]
    std::vector<std::vector<VertexId>> vid(levels);
    std::vector<std::vector<ArrowId>> aid(levels);
    std::vector<std::vector<ArrowId>> cid(levels, std::vector<ArrowId>(named.size(), -1));
    std::set<VertexId> special = a.special_vertices;
    for (const auto& ar : q.arrows())
        if (ar.special_loop) special.insert(ar.source);
    for (int l = 0; l < levels; ++l) {
        for (const auto& v : q.vertices()) {
            VertexId id = wq.add_vertex(v.label + level_tag(n_min + l));
            wq.vertex_mut(id).origin = v.origin;
            wq.vertex_mut(id).sign = v.sign;
            vid[l].push_back(id);
            if (special.count(v.id)) w.algebra.special_vertices.insert(id);
        }
    }
    for (int l = 0; l < levels; ++l) {
        for (const auto& ar : q.arrows()) {
            ArrowId id = wq.add_arrow(ar.label + level_tag(n_min + l), vid[l][ar.source], vid[l][ar.target], ar.special_loop);
            wq.arrow_mut(id).origin = ar.origin;
            aid[l].push_back(id);
        }
    }
    for (int l = 0; l + 1 < levels; ++l) {
        for (size_t k = 0; k < named.size(); ++k) {
            const NamedPath& n = named[k];
            std::string label = n.label + level_tag(n_min + l);
            ArrowId id = wq.add_arrow(label, vid[l][quiver_core::path_target(q, n.path)],
                                      vid[l + 1][quiver_core::path_source(q, n.path)]);
            cid[l][k] = id;
            w.connecting[label] = n.path;
        }
    }
    std::set<ArrowId> connecting;
    for (const auto& level : cid)
        for (ArrowId c : level)
            if (c >= 0) connecting.insert(c);
    auto lift = [&](const Path& p, int l) {
        Path r;
        r.base = vid[l][p.base];
        for (ArrowId x : p.arrows) r.arrows.push_back(aid[l][x]);
        return r;
    };
    auto seq_of = [&](const Path& p, int l) {
        Seq s;
        for (ArrowId x : p.arrows) s.push_back(aid[l][x]);
        return s;
    };

    RelationSet rels(wq);
    for (int l = 0; l < levels; ++l) {
        for (const Relation& r : a.relations) {
            Relation nr;
            for (const auto& term : r.terms) nr.terms.push_back({term.coeff, lift(term.path, l)});
            rels.add(std::move(nr));
        }
    }

    // Full paths p2[n] pbar[n] p1[n+1] for p = p1 p2, and all their subpaths through the
    // connecting arrow.
    std::set<Seq> full_sub;
    for (int l = 0; l + 1 < levels; ++l) {
        for (size_t k = 0; k < named.size(); ++k) {
            const Path& p = named[k].path;
            for (int j = 0; j <= p.length(); ++j) {
                Seq s = seq_of(quiver_core::subpath(q, p, j, p.length() - j), l);
                size_t at = s.size();
                s.push_back(cid[l][k]);
                Seq head = seq_of(quiver_core::subpath(q, p, 0, j), l + 1);
                s.insert(s.end(), head.begin(), head.end());
                for (size_t i = 0; i <= at; ++i)
                    for (size_t e = at + 1; e <= s.size(); ++e) full_sub.insert(Seq(s.begin() + i, s.begin() + e));
            }
        }
    }
    auto has_connecting = [&](const Seq& s) {
        return std::any_of(s.begin(), s.end(), [&](ArrowId x) { return connecting.count(x) > 0; });
    };
    auto repeats_special_loop = [&](const Seq& s) {
        for (size_t i = 0; i + 1 < s.size(); ++i)
            if (s[i] == s[i + 1] && wq.arrow(s[i]).special_loop) return true;
        return false;
    };
    auto ok_part = [&](const Seq& s) { return full_sub.count(s) || !has_connecting(s); };
    for (const Seq& s : full_sub) {
        for (ArrowId b : wq.out_arrows(wq.arrow(s.back()).target)) {
            Seq x = s;
            x.push_back(b);
            if (full_sub.count(x) || !ok_part(Seq(x.begin() + 1, x.end())) || repeats_special_loop(x)) continue;
            rels.add(Relation::monomial(quiver_core::make_path(wq, x)));
        }
        for (ArrowId b : wq.in_arrows(wq.arrow(s.front()).source)) {
            Seq x{b};
            x.insert(x.end(), s.begin(), s.end());
            if (full_sub.count(x) || !ok_part(Seq(x.begin(), x.end() - 1)) || repeats_special_loop(x)) continue;
            rels.add(Relation::monomial(quiver_core::make_path(wq, x)));
        }
    }

    // p3 pbar_p p1 = q3 pbar_q q1 whenever p = p1 m p3 and q = q1 m q3 share the middle m.
    for (int l = 0; l + 1 < levels; ++l) {
        for (size_t i = 0; i < named.size(); ++i) {
            for (size_t j = 0; j < named.size(); ++j) {
                if (i == j) continue;
                const Path& p = named[i].path;
                const Path& r = named[j].path;
                for (int pi = 0; pi <= p.length(); ++pi) {
                    for (int rj = 0; rj <= r.length(); ++rj) {
                        for (int len = 0; pi + len <= p.length() && rj + len <= r.length(); ++len) {
                            Path mp = quiver_core::subpath(q, p, pi, len);
                            Path mr = quiver_core::subpath(q, r, rj, len);
                            if (mp.arrows != mr.arrows) break;
                            if (len == 0 && mp.base != mr.base) break;
                            auto term = [&](const Path& x, int at, size_t k) {
                                Seq s = seq_of(quiver_core::subpath(q, x, at + len, x.length() - at - len), l);
                                s.push_back(cid[l][k]);
                                Seq h = seq_of(quiver_core::subpath(q, x, 0, at), l + 1);
                                s.insert(s.end(), h.begin(), h.end());
                                return s;
                            };
                            Seq t1 = term(p, pi, i), t2 = term(r, rj, j);
                            if (t1 == t2 || t1.size() < 2 || t2.size() < 2) continue;
                            Path a1 = quiver_core::make_path(wq, t1), a2 = quiver_core::make_path(wq, t2);
                            if (quiver_core::compare_paths(wq, a2, a1) < 0) std::swap(a1, a2);
                            rels.add(Relation::binomial(a1, a2));
                        }
                    }
                }
            }
        }
    }
    w.algebra.relations = rels.take();
    return w;
}

std::set<std::string> reflection_cut_labels(const BoundQuiver& p, VertexId x, Direction direction) {
    if (!skew_gentle::is_skew_gentle(p)) throw Error(ErrorKind::UnsupportedClass, "reflection needs a skew-gentle algebra");
    BoundQuiver aux = skew_gentle::auxiliary_gentle(p);
    if (x < 0 || x >= aux.quiver.vertex_count()) throw Error(ErrorKind::UnknownVertex, "vertex id " + std::to_string(x));
    bool minus = direction == Direction::Minus;
    if (minus ? !aux.quiver.in_arrows(x).empty() : !aux.quiver.out_arrows(x).empty())
        throw Error(ErrorKind::NotSourceOrSink, "vertex " + aux.quiver.vertex(x).label + " is not a " +
                                                    (minus ? "source" : "sink") + " of the auxiliary quiver");
    TrivialExtension t = trivial_extension(skew_gentle::admissible_presentation(p));
    ProjectedCycles pc = project_cycles(t);
    std::set<std::string> new_keys;
    for (const auto& [id, path] : t.new_arrows) new_keys.insert(origin_key(t.algebra.quiver.arrow(id)));
    std::set<std::string> cut;
    for (const auto& c : pc.cycles) {
        std::string pick, fallback;
        for (int tok : c) {
            const std::string& key = pc.keys[tok];
            if (new_keys.count(key)) {
                fallback = key;
                continue;
            }
            auto a = aux.quiver.find_arrow(key);
            if (a && (minus ? aux.quiver.arrow(*a).source : aux.quiver.arrow(*a).target) == x) pick = key;
        }
        cut.insert(pick.empty() ? fallback : pick);
    }
    return cut;
}

BoundQuiver reflect(const BoundQuiver& p, VertexId x, Direction direction) {
    std::set<std::string> keys = reflection_cut_labels(p, x, direction);
    TrivialExtension t = trivial_extension(skew_gentle::admissible_presentation(p));
    CutSet d;
    d.kind = CutKind::Good;
    for (const auto& a : t.algebra.quiver.arrows())
        if (keys.count(origin_key(a))) d.arrows.insert(a.id);
    if (!is_admissible_cut(t, d.arrows)) throw Error(ErrorKind::NotSkewGentleSource, "reflection cut is not admissible");
    BoundQuiver quotient = quotient_by_cut(t, d);
    auto rec = skew_gentle::recognize(quotient);
    if (!rec) throw Error(ErrorKind::UnsupportedClass, "reflected algebra is not recognized as skew-gentle");
    return *rec;
}

}  // namespace sba::trivext
