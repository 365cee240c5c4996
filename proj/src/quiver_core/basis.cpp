#include "sba/quiver_core/basis.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "sba/error.hpp"

// Every relation has at most two terms, so the ideal restricted to paths is spanned by
// vectors with at most two nonzero entries. The quotient is computed exactly with a
// weighted union-find: node = path, edge "P = c P'", and a zero flag per class. Paths are
// generated length by length and only extended from classes not yet known to vanish.
// Once every path of some length L vanishes, J^L lies in the ideal, so any pending edge
// towards a longer path collapses its shorter end to zero.

namespace sba::quiver_core {

size_t PathKeyHash::operator()(const std::vector<int>& v) const noexcept {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
        h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

int default_length_cap() {
    if (const char* env = std::getenv("SBA_LENGTH_CAP")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 64;
}

namespace {

constexpr size_t kNodeBudget = 2'000'000;

using Key = std::vector<int>;

Key key_of(const Path& p) {
    if (p.trivial()) return Key{-(p.base + 1)};
    return Key(p.arrows.begin(), p.arrows.end());
}

struct Node {
    Key key;
    int parent;
    mpq_class weight;  // this = weight * parent
    int size = 1;
    bool zero = false;  // read on roots only
};

struct Binomial {
    mpq_class coeff[2];
    std::vector<ArrowId> term[2];
};

struct Pending {
    int node;
    mpq_class c;  // node = c * path
    Key path;
};

struct ClassInfo {
    Path rep;
    mpq_class rep_weight;
    int layer = 0;
    int index = -1;
};

class Enumerator {
public:
    explicit Enumerator(const BoundQuiver& a) : q_(a.quiver) {
        mono_by_first_.resize(q_.arrow_count());
        mono_by_last_.resize(q_.arrow_count());
        bin_by_first_.resize(q_.arrow_count());
        for (const auto& r : a.relations) {
            if (r.is_monomial()) {
                int id = static_cast<int>(monomials_.size());
                monomials_.push_back(r.terms[0].path.arrows);
                mono_by_first_[monomials_.back().front()].push_back(id);
                mono_by_last_[monomials_.back().back()].push_back(id);
            } else {
                int id = static_cast<int>(binomials_.size());
                binomials_.push_back(Binomial{{r.terms[0].coeff, r.terms[1].coeff},
                                              {r.terms[0].path.arrows, r.terms[1].path.arrows}});
                for (int t = 0; t < 2; ++t) bin_by_first_[binomials_.back().term[t].front()].push_back({id, t});
            }
        }
    }

    // Returns the last generated length (every path of that length vanishes).
    int run(int cap) {
        std::vector<int> frontier;
        for (const auto& v : q_.vertices()) frontier.push_back(new_node(key_of(trivial_path(v.id))));
        for (int level = 1;; ++level) {
            std::vector<int> next;
            for (int n : frontier) {
                if (is_zero(n)) continue;
                VertexId t = target_of(nodes_[n].key);
                for (ArrowId a : q_.out_arrows(t)) {
                    Key k = nodes_[n].key.front() < 0 ? Key{} : nodes_[n].key;
                    k.push_back(a);
                    if (ends_with_monomial(k)) continue;
                    next.push_back(new_node(std::move(k)));
                }
            }
            if (nodes_.size() > kNodeBudget)
                throw Error(ErrorKind::InfiniteDimensional, "path budget exhausted at length " + std::to_string(level));
            for (int n : next) scan_occurrences(n, level);
            if (auto it = pending_.find(level); it != pending_.end()) {
                auto list = std::move(it->second);
                pending_.erase(it);
                for (auto& p : list) link(p.node, p.c, std::move(p.path), level);
            }
            bool all_zero = std::all_of(next.begin(), next.end(), [&](int n) { return is_zero(n); });
            if (all_zero) {
                for (auto& [len, list] : pending_)
                    for (auto& p : list) mark_zero(p.node);
                pending_.clear();
                return level;
            }
            if (level >= cap)
                throw Error(ErrorKind::InfiniteDimensional,
                            "nonzero paths survive at length cap " + std::to_string(cap));
            frontier = std::move(next);
        }
    }

    void collect(std::vector<Path>& paths, std::vector<int>& layers,
                 std::unordered_map<Key, Reduced, PathKeyHash>& table) {
        std::unordered_map<int, ClassInfo> classes;
        std::vector<std::pair<int, mpq_class>> root_of(nodes_.size());
        for (int n = 0; n < static_cast<int>(nodes_.size()); ++n) {
            mpq_class w;
            int r = find(n, w);
            root_of[n] = {r, w};
            if (nodes_[r].zero) continue;
            Path p = path_of(nodes_[n].key);
            auto [it, fresh] = classes.try_emplace(r);
            ClassInfo& c = it->second;
            if (fresh || compare_paths(q_, p, c.rep) < 0) {
                c.rep = p;
                c.rep_weight = w;
            }
            c.layer = std::max(c.layer, p.length());
        }
        std::vector<int> roots;
        for (auto& [r, c] : classes) roots.push_back(r);
        std::sort(roots.begin(), roots.end(), [&](int x, int y) {
            const Path& a = classes[x].rep;
            const Path& b = classes[y].rep;
            VertexId sa = path_source(q_, a), sb = path_source(q_, b);
            if (sa != sb) return sa < sb;
            VertexId ta = path_target(q_, a), tb = path_target(q_, b);
            if (ta != tb) return ta < tb;
            return compare_paths(q_, a, b) < 0;
        });
        for (int r : roots) {
            classes[r].index = static_cast<int>(paths.size());
            paths.push_back(classes[r].rep);
            layers.push_back(classes[r].layer);
        }
        for (int n = 0; n < static_cast<int>(nodes_.size()); ++n) {
            auto [r, w] = root_of[n];
            if (nodes_[r].zero) continue;
            const ClassInfo& c = classes[r];
            table.emplace(nodes_[n].key, Reduced{w / c.rep_weight, c.index});
        }
    }

private:
    static bool matches(const Key& hay, size_t at, const std::vector<ArrowId>& needle) {
        if (at + needle.size() > hay.size()) return false;
        return std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<long>(at));
    }

    VertexId target_of(const Key& k) const { return k.front() < 0 ? -k.front() - 1 : q_.arrow(k.back()).target; }

    Path path_of(const Key& k) const {
        if (k.front() < 0) return trivial_path(-k.front() - 1);
        return Path{q_.arrow(k.front()).source, k};
    }

    bool ends_with_monomial(const Key& k) const {
        for (int m : mono_by_last_[k.back()]) {
            const auto& mono = monomials_[m];
            if (mono.size() <= k.size() && matches(k, k.size() - mono.size(), mono)) return true;
        }
        return false;
    }

    int new_node(Key k) {
        int id = static_cast<int>(nodes_.size());
        index_.emplace(k, id);
        nodes_.push_back(Node{std::move(k), id, 1});
        return id;
    }

    int find(int n, mpq_class& w) {
        if (nodes_[n].parent == n) {
            w = 1;
            return n;
        }
        mpq_class pw;
        int r = find(nodes_[n].parent, pw);
        nodes_[n].weight *= pw;
        nodes_[n].parent = r;
        w = nodes_[n].weight;
        return r;
    }

    void mark_zero(int n) {
        mpq_class w;
        nodes_[find(n, w)].zero = true;
    }

    bool is_zero(int n) {
        mpq_class w;
        return nodes_[find(n, w)].zero;
    }

    // x = c * y
    void unite(int x, int y, const mpq_class& c) {
        mpq_class wx, wy;
        int rx = find(x, wx), ry = find(y, wy);
        if (rx == ry) {
            if (wx != c * wy) nodes_[rx].zero = true;
            return;
        }
        mpq_class ratio = c * wy / wx;  // rx = ratio * ry
        if (nodes_[rx].size > nodes_[ry].size) {
            std::swap(rx, ry);
            ratio = 1 / ratio;
        }
        nodes_[rx].parent = ry;
        nodes_[rx].weight = ratio;
        nodes_[ry].size += nodes_[rx].size;
        nodes_[ry].zero = nodes_[ry].zero || nodes_[rx].zero;
    }

    void link(int node, const mpq_class& c, Key other, int level) {
        if (static_cast<int>(other.size()) > level) {
            pending_[other.size()].push_back(Pending{node, c, std::move(other)});
            return;
        }
        auto it = index_.find(other);
        // Absent paths of length <= level contain a monomial or a vanishing prefix.
        if (it == index_.end())
            mark_zero(node);
        else
            unite(node, it->second, c);
    }

    void scan_occurrences(int node, int level) {
        const Key k = nodes_[node].key;
        for (size_t i = 0; i < k.size(); ++i) {
            for (auto [b, t] : bin_by_first_[k[i]]) {
                const Binomial& bin = binomials_[b];
                if (!matches(k, i, bin.term[t])) continue;
                const auto& repl = bin.term[1 - t];
                Key other(k.begin(), k.begin() + static_cast<long>(i));
                other.insert(other.end(), repl.begin(), repl.end());
                other.insert(other.end(), k.begin() + static_cast<long>(i + bin.term[t].size()), k.end());
                // c_t u p_t v + c_o u p_o v = 0
                link(node, -bin.coeff[1 - t] / bin.coeff[t], std::move(other), level);
            }
        }
    }

    const Quiver& q_;
    std::vector<std::vector<ArrowId>> monomials_;
    std::vector<Binomial> binomials_;
    std::vector<std::vector<int>> mono_by_first_, mono_by_last_;
    std::vector<std::vector<std::pair<int, int>>> bin_by_first_;
    std::vector<Node> nodes_;
    std::unordered_map<Key, int, PathKeyHash> index_;
    std::map<size_t, std::vector<Pending>> pending_;
};

}  // namespace

PathBasis enumerate_basis(const BoundQuiver& a, int length_cap) {
    if (!a.admissible) throw Error(ErrorKind::NotAdmissible, "presentation carries special loops");
    a.validate();
    Enumerator e(a);
    e.run(length_cap);
    PathBasis b;
    b.algebra_ = &a;
    e.collect(b.paths_, b.layer_, b.table_);
    int top = 0;
    for (int l : b.layer_) top = std::max(top, l);
    b.nilpotency_bound_ = top + 1;
    return b;
}

std::optional<Reduced> PathBasis::reduce(const Path& p) const {
    auto it = table_.find(key_of(p));
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

LinComb PathBasis::reduce(const std::vector<Term>& terms) const {
    LinComb out;
    for (const auto& t : terms) {
        auto r = reduce(t.path);
        if (!r) continue;
        mpq_class& slot = out[r->index];
        slot += t.coeff * r->coeff;
        if (slot == 0) out.erase(r->index);
    }
    return out;
}

int PathBasis::index_of(const Path& p) const {
    auto r = reduce(p);
    if (!r || r->coeff != 1 || paths_[r->index] != p) return -1;
    return r->index;
}

std::vector<int> PathBasis::between(VertexId x, VertexId y) const {
    std::vector<int> out;
    const Quiver& q = algebra_->quiver;
    for (int i = 0; i < dimension(); ++i)
        if (path_source(q, paths_[i]) == x && path_target(q, paths_[i]) == y) out.push_back(i);
    return out;
}

std::vector<int> PathBasis::starting_at(VertexId x) const {
    std::vector<int> out;
    for (int i = 0; i < dimension(); ++i)
        if (path_source(algebra_->quiver, paths_[i]) == x) out.push_back(i);
    return out;
}

std::vector<int> PathBasis::ending_at(VertexId y) const {
    std::vector<int> out;
    for (int i = 0; i < dimension(); ++i)
        if (path_target(algebra_->quiver, paths_[i]) == y) out.push_back(i);
    return out;
}

std::vector<std::pair<Path, mpq_class>> PathBasis::members(int i) const {
    std::vector<std::pair<Path, mpq_class>> out;
    for (const auto& [key, red] : table_) {
        if (red.index != i) continue;
        Path p;
        if (key.size() == 1 && key[0] < 0) {
            p.base = -key[0] - 1;
        } else {
            p.arrows = key;
            p.base = algebra_->quiver.arrow(key.front()).source;
        }
        out.emplace_back(std::move(p), red.coeff);
    }
    std::sort(out.begin(), out.end(),
              [&](const auto& x, const auto& y) { return compare_paths(algebra_->quiver, x.first, y.first) < 0; });
    return out;
}

bool in_ideal(const PathBasis& basis, const Relation& r) { return basis.reduce(r.terms).empty(); }

std::vector<Path> maximal_paths(const BoundQuiver& a, const PathBasis& basis) {
    const Quiver& q = a.quiver;
    std::vector<Path> out;
    for (const Path& p : basis.paths()) {
        bool maximal = true;
        for (ArrowId al : q.in_arrows(path_source(q, p))) {
            if (basis.reduce(compose_paths(q, arrow_path(q, al), p))) {
                maximal = false;
                break;
            }
        }
        for (ArrowId ar : q.out_arrows(path_target(q, p))) {
            if (!maximal) break;
            if (basis.reduce(compose_paths(q, p, arrow_path(q, ar)))) maximal = false;
        }
        if (maximal) out.push_back(p);
    }
    return out;
}

}  // namespace sba::quiver_core
