#pragma once

#include <gmpxx.h>

#include <vector>

#include "sba/quiver_core/basis.hpp"
#include "sba/quiver_core/poly.hpp"

namespace sba::quiver_core {

// Rows and columns follow vertex ids. Entry (x, y) counts basis paths x -> y; the graded
// entry weights each by q^length of its normal-form representative.
struct CartanData {
    std::vector<std::vector<mpz_class>> ordinary;
    std::vector<std::vector<Poly>> q_graded;
    mpz_class det;
    Poly det_q;
};

CartanData cartan(const BoundQuiver& a, const PathBasis& basis);

}  // namespace sba::quiver_core
