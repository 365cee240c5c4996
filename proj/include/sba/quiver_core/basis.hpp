#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sba/quiver_core/quiver.hpp"

namespace sba::quiver_core {

// Basis index -> coefficient; zero coefficients are never stored.
using LinComb = std::map<int, mpq_class>;

struct Reduced {
    mpq_class coeff;
    int index = -1;
};

struct PathKeyHash {
    size_t operator()(const std::vector<int>& v) const noexcept;
};

// Default 64, overridden by the SBA_LENGTH_CAP environment variable.
int default_length_cap();

class PathBasis {
public:
    const BoundQuiver& algebra() const { return *algebra_; }
    const std::vector<Path>& paths() const { return paths_; }
    const Path& path(int i) const { return paths_.at(i); }
    int dimension() const { return static_cast<int>(paths_.size()); }
    // Smallest L such that every path of length L is zero.
    int nilpotency_bound() const { return nilpotency_bound_; }
    // Largest length of a path in the class of basis element i, i.e. its radical layer.
    int layer(int i) const { return layer_.at(i); }

    // nullopt when the path is zero in the algebra.
    std::optional<Reduced> reduce(const Path& p) const;
    LinComb reduce(const std::vector<Term>& terms) const;
    // -1 unless p is itself a basis path.
    int index_of(const Path& p) const;
    std::vector<int> between(VertexId x, VertexId y) const;
    std::vector<int> starting_at(VertexId x) const;
    std::vector<int> ending_at(VertexId y) const;
    // Every nonzero path equal to a multiple of basis element i, with that multiple.
    std::vector<std::pair<Path, mpq_class>> members(int i) const;

private:
    friend PathBasis enumerate_basis(const BoundQuiver&, int);
    const BoundQuiver* algebra_ = nullptr;
    std::vector<Path> paths_;
    std::vector<int> layer_;
    int nilpotency_bound_ = 0;
    std::unordered_map<std::vector<int>, Reduced, PathKeyHash> table_;
};

// Throws NotAdmissible for a non-admissible presentation and InfiniteDimensional when
// nonzero paths survive at length_cap. The returned basis keeps a pointer to `a`.
PathBasis enumerate_basis(const BoundQuiver& a, int length_cap = default_length_cap());

// True when every term combination of `r` vanishes in the algebra.
bool in_ideal(const PathBasis& basis, const Relation& r);

std::vector<Path> maximal_paths(const BoundQuiver& a, const PathBasis& basis);

}  // namespace sba::quiver_core
