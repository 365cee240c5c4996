#include "sba/quiver_core/iso.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>

#include "sba/quiver_core/basis.hpp"

namespace sba::quiver_core {
namespace {

struct Profile {
    std::vector<std::vector<int>> arrows;  // arrow counts between vertex pairs
    std::vector<std::vector<int>> cartan;
    std::vector<std::vector<int>> sig;
};

Profile profile(const BoundQuiver& a, const PathBasis& basis) {
    const Quiver& q = a.quiver;
    const int n = q.vertex_count();
    Profile p;
    p.arrows.assign(n, std::vector<int>(n, 0));
    p.cartan.assign(n, std::vector<int>(n, 0));
    for (const auto& al : q.arrows()) ++p.arrows[al.source][al.target];
    for (const Path& path : basis.paths()) ++p.cartan[path_source(q, path)][path_target(q, path)];
    p.sig.resize(n);
    for (int v = 0; v < n; ++v) {
        int from = 0, to = 0;
        for (int w = 0; w < n; ++w) {
            from += p.cartan[v][w];
            to += p.cartan[w][v];
        }
        std::vector<int> outs, ins;
        for (int w = 0; w < n; ++w) {
            if (p.arrows[v][w]) outs.push_back(p.arrows[v][w]);
            if (p.arrows[w][v]) ins.push_back(p.arrows[w][v]);
        }
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        auto& s = p.sig[v];
        s = {a.special_vertices.count(v) ? 1 : 0,
             static_cast<int>(q.out_arrows(v).size()),
             static_cast<int>(q.in_arrows(v).size()),
             p.arrows[v][v],
             from,
             to,
             p.cartan[v][v]};
        s.push_back(-1);
        s.insert(s.end(), outs.begin(), outs.end());
        s.push_back(-1);
        s.insert(s.end(), ins.begin(), ins.end());
    }
    return p;
}

// Linear system over GF(2) on arrow sign variables.
class Gf2System {
public:
    explicit Gf2System(int vars) : vars_(vars), words_((vars + 64) / 64) {}

    // Adds sum(vars in mask) = rhs; returns false on inconsistency.
    bool add(std::vector<std::uint64_t> row) {
        for (const auto& [pivot, prow] : rows_)
            if (bit(row, pivot)) xor_into(row, prow);
        int p = first_var(row);
        if (p < 0) return !bit(row, vars_);
        for (auto& [pivot, prow] : rows_)
            if (bit(prow, p)) xor_into(prow, row);
        rows_.emplace_back(p, std::move(row));
        return true;
    }

    std::vector<int> solution() const {
        std::vector<int> x(vars_, 0);
        // Rows are fully reduced, so free variables set to 0 leave each pivot = rhs.
        for (const auto& [pivot, prow] : rows_) x[pivot] = bit(prow, vars_) ? 1 : 0;
        return x;
    }

    std::vector<std::uint64_t> empty_row() const { return std::vector<std::uint64_t>(words_, 0); }
    static void flip(std::vector<std::uint64_t>& row, int i) { row[i / 64] ^= std::uint64_t(1) << (i % 64); }

private:
    static bool bit(const std::vector<std::uint64_t>& row, int i) { return (row[i / 64] >> (i % 64)) & 1; }
    static void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
        for (size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
    }
    int first_var(const std::vector<std::uint64_t>& row) const {
        for (int i = 0; i < vars_; ++i)
            if (bit(row, i)) return i;
        return -1;
    }

    int vars_;
    size_t words_;
    std::vector<std::pair<int, std::vector<std::uint64_t>>> rows_;
};

class Search {
public:
    Search(const BoundQuiver& a, const BoundQuiver& b, const PathBasis& bb, long budget)
        : a_(a), b_(b), bb_(bb), budget_(budget) {}

    IsoResult run(const Profile& pa, const Profile& pb) {
        pa_ = &pa;
        pb_ = &pb;
        const Quiver& qa = a_.quiver;
        const Quiver& qb = b_.quiver;
        const int n = qa.vertex_count();
        // Visit vertices connected to already placed ones first; rarer signatures first.
        std::map<std::vector<int>, int> freq;
        for (int v = 0; v < n; ++v) ++freq[pa.sig[v]];
        std::vector<bool> placed(n, false);
        while (static_cast<int>(order_.size()) < n) {
            int best = -1;
            std::tuple<int, int, int> best_key{};
            for (int v = 0; v < n; ++v) {
                if (placed[v]) continue;
                int links = 0;
                for (int u : order_) links += pa.arrows[u][v] + pa.arrows[v][u];
                std::tuple<int, int, int> key{links, -freq[pa.sig[v]], -v};
                if (best < 0 || key > best_key) {
                    best = v;
                    best_key = key;
                }
            }
            placed[best] = true;
            order_.push_back(best);
        }
        cand_.resize(n);
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < qb.vertex_count(); ++w)
                if (pa.sig[v] == pb.sig[w]) cand_[v].push_back(w);
            std::stable_partition(cand_[v].begin(), cand_[v].end(),
                                  [&](int w) { return qb.vertex(w).label == qa.vertex(v).label; });
        }
        vmap_.assign(n, -1);
        used_.assign(qb.vertex_count(), false);
        IsoResult r;
        if (place(0)) {
            r.status = IsoStatus::Isomorphic;
            r.vertex_map = vmap_;
            r.arrow_map = amap_;
            r.arrow_scale = scale_;
            r.identity = true;
            for (int v = 0; v < n; ++v) r.identity = r.identity && vmap_[v] == v;
            for (size_t i = 0; i < amap_.size(); ++i)
                r.identity = r.identity && amap_[i] == static_cast<int>(i) && scale_[i] == 1;
        } else if (exhausted_) {
            r.status = IsoStatus::BudgetExhausted;
            r.detail = "search budget exhausted";
        } else {
            r.detail = "no vertex and arrow bijection carries one ideal onto the other";
        }
        return r;
    }

private:
    bool tick() {
        if (--budget_ < 0) exhausted_ = true;
        return !exhausted_;
    }

    bool place(size_t k) {
        if (!tick()) return false;
        if (k == order_.size()) return match_arrows();
        int v = order_[k];
        for (int w : cand_[v]) {
            if (used_[w]) continue;
            bool ok = true;
            for (size_t j = 0; j < k && ok; ++j) {
                int u = order_[j], fu = vmap_[u];
                ok = pa_->arrows[u][v] == pb_->arrows[fu][w] && pa_->arrows[v][u] == pb_->arrows[w][fu] &&
                     pa_->cartan[u][v] == pb_->cartan[fu][w] && pa_->cartan[v][u] == pb_->cartan[w][fu];
            }
            if (!ok) continue;
            vmap_[v] = w;
            used_[w] = true;
            if (place(k + 1)) return true;
            used_[w] = false;
            vmap_[v] = -1;
            if (exhausted_) return false;
        }
        return false;
    }

    bool match_arrows() {
        const Quiver& qa = a_.quiver;
        const Quiver& qb = b_.quiver;
        groups_.clear();
        std::map<std::pair<int, int>, size_t> index;
        for (const auto& al : qa.arrows()) {
            auto key = std::make_pair(al.source, al.target);
            auto it = index.find(key);
            if (it == index.end()) {
                it = index.emplace(key, groups_.size()).first;
                groups_.push_back({});
                for (const auto& bl : qb.arrows())
                    if (bl.source == vmap_[al.source] && bl.target == vmap_[al.target])
                        groups_.back().second.push_back(bl.id);
            }
            groups_[it->second].first.push_back(al.id);
        }
        for (auto& [from, to] : groups_) {
            std::vector<int> sorted;
            for (ArrowId x : from) {
                auto it = std::find_if(to.begin(), to.end(),
                                       [&](ArrowId y) { return qb.arrow(y).label == qa.arrow(x).label; });
                if (it != to.end()) sorted.push_back(*it);
            }
            if (sorted.size() == to.size()) {
                to = sorted;
            } else {
                std::sort(to.begin(), to.end());
            }
        }
        amap_.assign(qa.arrow_count(), -1);
        return assign_group(0);
    }

    // Enumerates permutations of each parallel class, starting from the label-matched one.
    bool assign_group(size_t g) {
        if (g == groups_.size()) return tick() && check_ideal();
        auto& [from, to] = groups_[g];
        std::vector<int> perm(to.size());
        for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        do {
            for (size_t i = 0; i < from.size(); ++i) amap_[from[i]] = to[perm[i]];
            if (assign_group(g + 1)) return true;
            if (exhausted_) return false;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

    Path image(const Path& p) const {
        Path r;
        r.base = vmap_[p.base];
        for (ArrowId x : p.arrows) r.arrows.push_back(amap_[x]);
        if (!r.arrows.empty()) r.base = b_.quiver.arrow(r.arrows.front()).source;
        return r;
    }

    bool check_ideal() {
        const int m = a_.quiver.arrow_count();
        Gf2System sys(m);
        for (const Relation& rel : a_.relations) {
            if (rel.is_monomial()) {
                if (bb_.reduce(image(rel.terms[0].path))) return false;
                continue;
            }
            auto r1 = bb_.reduce(image(rel.terms[0].path));
            auto r2 = bb_.reduce(image(rel.terms[1].path));
            if (!r1 && !r2) continue;
            if (!r1 || !r2 || r1->index != r2->index) return false;
            mpq_class t = -(rel.terms[1].coeff * r2->coeff) / (rel.terms[0].coeff * r1->coeff);
            if (t != 1 && t != -1) return false;
            auto row = sys.empty_row();
            for (ArrowId x : rel.terms[0].path.arrows) Gf2System::flip(row, x);
            for (ArrowId x : rel.terms[1].path.arrows) Gf2System::flip(row, x);
            if (t == -1) Gf2System::flip(row, m);
            if (!sys.add(std::move(row))) return false;
        }
        auto x = sys.solution();
        scale_.assign(m, 1);
        for (int i = 0; i < m; ++i) scale_[i] = x[i] ? -1 : 1;
        return true;
    }

    const BoundQuiver& a_;
    const BoundQuiver& b_;
    const PathBasis& bb_;
    long budget_;
    bool exhausted_ = false;
    const Profile* pa_ = nullptr;
    const Profile* pb_ = nullptr;
    std::vector<int> order_;
    std::vector<std::vector<int>> cand_;
    std::vector<int> vmap_;
    std::vector<bool> used_;
    std::vector<std::pair<std::vector<ArrowId>, std::vector<ArrowId>>> groups_;
    std::vector<ArrowId> amap_;
    std::vector<int> scale_;
};

}  // namespace

IsoResult are_isomorphic(const BoundQuiver& a, const BoundQuiver& b, long budget) {
    IsoResult r;
    const Quiver& qa = a.quiver;
    const Quiver& qb = b.quiver;
    if (qa.vertex_count() != qb.vertex_count() || qa.arrow_count() != qb.arrow_count() ||
        a.special_vertices.size() != b.special_vertices.size()) {
        r.detail = "vertex, arrow or special vertex counts differ";
        return r;
    }
    PathBasis ba = enumerate_basis(a);
    PathBasis bb = enumerate_basis(b);
    if (ba.dimension() != bb.dimension()) {
        r.detail = "dimensions differ (" + std::to_string(ba.dimension()) + " vs " +
                   std::to_string(bb.dimension()) + ")";
        return r;
    }
    Profile pa = profile(a, ba);
    Profile pb = profile(b, bb);
    auto sa = pa.sig, sb = pb.sig;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
        r.detail = "vertex invariants differ";
        return r;
    }
    Search s(a, b, bb, budget);
    return s.run(pa, pb);
}

std::string describe(const IsoResult& r, const Quiver& a, const Quiver& b) {
    switch (r.status) {
        case IsoStatus::BudgetExhausted:
            return "undecided (search budget exhausted)";
        case IsoStatus::NotIsomorphic:
            return "not isomorphic (" + r.detail + ")";
        case IsoStatus::Isomorphic:
            break;
    }
    if (r.identity) return "isomorphic (identity)";
    std::string s = "isomorphic";
    for (size_t v = 0; v < r.vertex_map.size(); ++v)
        s += "\n  vertex " + a.vertex(static_cast<int>(v)).label + " -> " + b.vertex(r.vertex_map[v]).label;
    for (size_t x = 0; x < r.arrow_map.size(); ++x)
        s += "\n  arrow " + a.arrow(static_cast<int>(x)).label + " -> " + (r.arrow_scale[x] < 0 ? "-" : "") +
             b.arrow(r.arrow_map[x]).label;
    return s;
}

}  // namespace sba::quiver_core
