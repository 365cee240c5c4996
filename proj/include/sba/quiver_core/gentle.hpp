#pragma once

#include "sba/quiver_core/quiver.hpp"
#include "sba/verdict.hpp"

namespace sba::quiver_core {

// Conditions (1)-(4): at most two arrows in and out per vertex, the two pairing
// conditions on length-2 products, and an ideal generated by length-2 paths.
Verdict is_locally_gentle(const BoundQuiver& a);

// Locally gentle and finite dimensional, condition (5).
Verdict is_gentle(const BoundQuiver& a);

// True when the product of the two arrows is one of the length-2 monomial relations.
bool is_zero_relation(const BoundQuiver& a, ArrowId first, ArrowId second);

}  // namespace sba::quiver_core
