// Provably complete enumeration of lattice classes under quadratic/linear
// constraints (x^2 = a together with pairing conditions). In a lattice of
// signature (1, n-1) the orthogonal complement of any class W with W^2 > 0
// is negative definite, so fixing x^2 and x.W leaves a finite set; the
// kernel walks it by exact rational interval recursion.

#pragma once

#include "k3lat/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace k3lat {

enum class Rel { Eq, Le, Ge, Range };

struct PairingConstraint {
    DivisorClass anchor;
    Rel rel = Rel::Eq;
    Int value;   // Eq / Le / Ge
    Int lo, hi;  // Range

    static PairingConstraint eq(DivisorClass w, Int v);
    static PairingConstraint le(DivisorClass w, Int v);
    static PairingConstraint ge(DivisorClass w, Int v);
    static PairingConstraint range(DivisorClass w, Int lo, Int hi);
};

struct ClassQuery {
    std::optional<Int> self_intersection;
    std::vector<PairingConstraint> pairings;
    bool primitive_only = false;
    std::vector<DivisorClass> exclude;
};

struct CoordInterval {
    Int lo, hi;
};

struct EnumerationStats {
    std::uint64_t nodes = 0;
    double elapsed_ms = 0.0;
};

struct EnumerationResult {
    std::vector<DivisorClass> solutions;   // lexicographically sorted, no duplicates
    std::vector<CoordInterval> box;        // derived per-coordinate completeness bounds
    std::string bound_note;
    EnumerationStats stats;

    // largest |coordinate| the derived box admits
    Int box_radius() const;
};

struct finiteness_not_certified : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct anchor_not_positive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact and complete. Requires x^2 fixed plus an Eq (or finite Range)
// pairing constraint whose anchor W satisfies W^2 > 0; throws
// finiteness_not_certified otherwise. The zero class is never reported.
EnumerationResult enumerate_classes(const IntLattice& L, const ClassQuery& q);

// Brute-force scan of |coord_i| <= box; independent of enumerate_classes
// and used to validate it.
EnumerationResult oracle_enumerate(const IntLattice& L, const ClassQuery& q, const Int& box);

// All classes C with C^2 = -2, C.ample >= 1 and C.delta < 0. Finite via the
// derived bound (C.delta)^2 < 2((delta.ample)^2 - delta^2 ample^2)/ample^2,
// which must hold for any such C; requires delta^2 > 0 and delta.ample > 0
// (throws anchor_not_positive otherwise).
EnumerationResult roots_violating_nef(const IntLattice& L, const DivisorClass& ample,
                                      const DivisorClass& delta);

// The squared bound above, as an exact rational.
Rat nef_violation_bound_sq(const IntLattice& L, const DivisorClass& ample,
                           const DivisorClass& delta);

// canonical single-line rendering of a query, used in certificates
std::string query_description(const IntLattice& L, const ClassQuery& q);

std::string box_description(const std::vector<CoordInterval>& box,
                            const std::vector<std::string>& labels);

} // namespace k3lat
