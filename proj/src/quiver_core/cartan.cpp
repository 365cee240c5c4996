#include "sba/quiver_core/cartan.hpp"

namespace sba::quiver_core {

CartanData cartan(const BoundQuiver& a, const PathBasis& basis) {
    const Quiver& q = a.quiver;
    const size_t n = q.vertex_count();
    CartanData c;
    c.ordinary.assign(n, std::vector<mpz_class>(n, mpz_class(0)));
    c.q_graded.assign(n, std::vector<Poly>(n));
    for (const Path& p : basis.paths()) {
        VertexId x = path_source(q, p), y = path_target(q, p);
        c.ordinary[x][y] += 1;
        c.q_graded[x][y] = c.q_graded[x][y] + Poly::monomial(1, p.length());
    }
    std::vector<std::vector<Poly>> plain(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) plain[i][j] = Poly(c.ordinary[i][j]);
    Poly d = bareiss_det(std::move(plain));
    c.det = d.is_zero() ? mpz_class(0) : d.coeffs()[0];
    c.det_q = bareiss_det(c.q_graded);
    return c;
}

}  // namespace sba::quiver_core
