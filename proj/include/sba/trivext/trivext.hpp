#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sba/quiver_core/basis.hpp"
#include "sba/quiver_core/quiver.hpp"

namespace sba::trivext {

using quiver_core::ArrowId;
using quiver_core::BoundQuiver;
using quiver_core::Path;
using quiver_core::PathBasis;
using quiver_core::Quiver;
using quiver_core::Relation;
using quiver_core::VertexId;

// A closed path p * beta_p through exactly one new arrow, stored at its canonical rotation
// (least arrow-label sequence).
struct ElementaryCycle {
    Path cycle;
    mpq_class weight = 1;
    ArrowId new_arrow = -1;
};

struct TrivialExtension {
    BoundQuiver algebra;
    // New arrow id -> socle basis path of the source, in source ids.
    std::map<ArrowId, Path> new_arrows;
    std::shared_ptr<const BoundQuiver> source;
    // One cycle per new arrow, built from the socle path itself.
    std::vector<ElementaryCycle> cycles;
    // Every closed path u * beta_p with u a nonzero multiple of p; at least the above.
    std::vector<ElementaryCycle> all_cycles;
};

enum class CutKind { Admissible, Good };

struct CutSet {
    std::set<ArrowId> arrows;
    CutKind kind = CutKind::Admissible;
};

struct RepetitiveWindow {
    BoundQuiver algebra;
    int n_min = 0;
    int n_max = 0;
    // Connecting arrow label -> maximal (or sp-maximal) path of the input.
    std::map<std::string, Path> connecting;
};

enum class Direction { Plus, Minus };

// Maximal paths of a gentle or admissible skew-gentle algebra; throws UnsupportedClass for
// anything else.
std::vector<Path> socle_basis(const BoundQuiver& a, const PathBasis& basis);

// New arrows are named bp1, bp2, ... by the label sequence of their socle path; for an
// sg-presentation the index follows the path's undecorated labels and the name carries
// endpoint signs like the other duplicated arrows.
TrivialExtension trivial_extension(const BoundQuiver& a);

std::vector<ElementaryCycle> elementary_cycles(const TrivialExtension& t);
// All cyclic rotations of `c`.
std::vector<Path> rotations(const Quiver& q, const Path& c);

// Sets of arrows meeting every elementary cycle exactly once (counted with multiplicity).
// `emit` returns false to stop the enumeration.
void enumerate_admissible_cuts(const TrivialExtension& t, const std::function<bool(const CutSet&)>& emit);
std::vector<CutSet> admissible_cuts(const TrivialExtension& t, long limit = -1);

// Admissible cuts of the undecorated cycles, closed under all sign decorations. Throws
// NotSkewGentleSource when the closure of some auxiliary cut is not a cut of t.
void enumerate_good_cuts(const TrivialExtension& t, const std::function<bool(const CutSet&)>& emit);
std::vector<CutSet> good_cuts(const TrivialExtension& t, long limit = -1);

// Sign closure test for an arbitrary cut.
bool is_good(const TrivialExtension& t, const CutSet& d);

// Throws UnknownArrow for ids outside t.
BoundQuiver quotient_by_cut(const TrivialExtension& t, const CutSet& d);
BoundQuiver quotient_by_arrows(const BoundQuiver& a, const std::set<ArrowId>& arrows);

std::string cut_to_string(const Quiver& q, const CutSet& d);

RepetitiveWindow repetitive_window(const BoundQuiver& a, int n_min, int n_max);

// Negative reflection at a source (Minus) or positive reflection at a sink (Plus) of the
// auxiliary gentle quiver, computed as a quotient of the trivial extension.
BoundQuiver reflect(const BoundQuiver& p, VertexId x, Direction direction);

// The auxiliary-level cut used by reflect, as labels of arrows of the trivial extension
// of the auxiliary algebra.
std::set<std::string> reflection_cut_labels(const BoundQuiver& p, VertexId x, Direction direction);

}  // namespace sba::trivext
