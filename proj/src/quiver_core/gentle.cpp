#include "sba/quiver_core/gentle.hpp"

#include "sba/error.hpp"
#include "sba/quiver_core/basis.hpp"

namespace sba::quiver_core {

bool is_zero_relation(const BoundQuiver& a, ArrowId first, ArrowId second) {
    for (const auto& r : a.relations) {
        if (!r.is_monomial()) continue;
        const auto& ar = r.terms[0].path.arrows;
        if (ar.size() == 2 && ar[0] == first && ar[1] == second) return true;
    }
    return false;
}

Verdict is_locally_gentle(const BoundQuiver& a) {
    const Quiver& q = a.quiver;
    for (const auto& v : q.vertices()) {
        if (q.out_arrows(v.id).size() > 2 || q.in_arrows(v.id).size() > 2)
            return Verdict::fail("1", "more than two arrows at vertex " + v.label, {v.label});
    }
    for (const auto& al : q.arrows()) {
        int zero = 0, nonzero = 0;
        std::vector<std::string> w{al.label};
        for (ArrowId b : q.out_arrows(al.target)) {
            (is_zero_relation(a, al.id, b) ? zero : nonzero)++;
            w.push_back(q.arrow(b).label);
        }
        if (zero > 1 || nonzero > 1) return Verdict::fail("2", "arrows following " + al.label + " break the pairing", w);
    }
    for (const auto& al : q.arrows()) {
        int zero = 0, nonzero = 0;
        std::vector<std::string> w{al.label};
        for (ArrowId g : q.in_arrows(al.source)) {
            (is_zero_relation(a, g, al.id) ? zero : nonzero)++;
            w.push_back(q.arrow(g).label);
        }
        if (zero > 1 || nonzero > 1) return Verdict::fail("3", "arrows preceding " + al.label + " break the pairing", w);
    }
    for (const auto& r : a.relations) {
        if (!r.is_monomial() || r.terms[0].path.length() != 2)
            return Verdict::fail("4", "relation is not a length-2 path: " + relation_to_string(q, r),
                                 {relation_to_string(q, r)});
    }
    for (const auto& al : q.arrows()) {
        if (al.special_loop) return Verdict::fail("4", "special loop " + al.label + " carries f^2 - f", {al.label});
    }
    return Verdict::ok();
}

Verdict is_gentle(const BoundQuiver& a) {
    Verdict v = is_locally_gentle(a);
    if (!v) return v;
    try {
        enumerate_basis(a);
    } catch (const Error& e) {
        return Verdict::fail("5", e.what());
    }
    return Verdict::ok();
}

}  // namespace sba::quiver_core
