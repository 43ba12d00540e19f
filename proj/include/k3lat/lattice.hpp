// Core integral-lattice arithmetic: even nondegenerate Gram matrices,
// divisor classes, exact discriminants/signatures, and the index-squared
// divisibility obstruction for prescribed sublattice Gram matrices.

#pragma once

#include "k3lat/numeric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

struct DivisorClass {
    std::vector<Int> coords;

    DivisorClass() = default;
    explicit DivisorClass(std::vector<Int> c) : coords(std::move(c)) {}
    DivisorClass(std::initializer_list<Int> c) : coords(c) {}

    size_t rank() const { return coords.size(); }
    bool is_zero() const;

    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass operator-(const DivisorClass& o) const;
    DivisorClass operator-() const;
    friend DivisorClass operator*(const Int& s, const DivisorClass& x);

    bool operator==(const DivisorClass& o) const { return coords == o.coords; }
    bool operator<(const DivisorClass& o) const { return coords < o.coords; }
};

// gcd of all coordinates (0 for the zero class)
Int content(const DivisorClass& x);

// Even nondegenerate integral lattice given by a symmetric Gram matrix.
// Invariants checked on construction: symmetry, even diagonal, det != 0.
class IntLattice {
  public:
    static IntLattice create(std::vector<std::string> labels,
                             std::vector<std::vector<Int>> gram_rows);

    int rank() const { return rank_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Int& gram(int i, int j) const { return gram_[static_cast<size_t>(i) * rank_ + j]; }

    // basis vector for a label, e.g. "D" -> (1,0,0)
    std::optional<DivisorClass> basis_class(const std::string& label) const;

    // pretty-printer: (2,-1,1) -> "2D-L+R"
    std::string class_name(const DivisorClass& x) const;

  private:
    IntLattice() = default;
    int rank_ = 0;
    std::vector<std::string> labels_;
    std::vector<Int> gram_; // row-major
};

// intersection pairing a.b through the Gram matrix
Int pair(const IntLattice& L, const DivisorClass& a, const DivisorClass& b);

// exact determinant of an n x n integer matrix (fraction-free Bareiss)
Int matrix_determinant(std::vector<Int> m, int n);

// det of the Gram matrix
Int discriminant(const IntLattice& L);

// (#positive, #negative) eigenvalue signs, exactly. Uses signs of leading
// principal minors when they are all nonzero; otherwise falls back to
// symmetric diagonalization over the rationals.
std::pair<int, int> signature(const IntLattice& L);

// det of the pairwise Gram matrix of a tuple of classes
Int sublattice_discriminant(const IntLattice& L, const std::vector<DivisorClass>& vs);

enum class Divisibility { RuledOut, NotRuledOut };

// Index-squared obstruction: a full-rank sublattice has discriminant
// index^2 * disc(L). Given a *prescribed* rank(L) x rank(L) Gram matrix of
// hypothetical classes, rules the configuration out when disc(L) fails to
// divide its determinant or the signs are incompatible. Never asserts
// existence; RuledOut only.
Divisibility divisibility_obstruction(const IntLattice& L,
                                      const std::vector<std::vector<Int>>& prescribed_gram);

// ---------------------------------------------------------------------------
// The two lattice family shapes, parametrized by (j, k, h):
//   Rank2: [[2h, k], [k, 2j]]            basis (D, L)
//   Rank3: [[2h, k, 2], [k, 4j-2, j], [2, j, -2]]   basis (D, L, R)
// ---------------------------------------------------------------------------

enum class FamilyShape { Rank2, Rank3 };

struct LatticeFamilyParams {
    FamilyShape shape = FamilyShape::Rank2;
    Int j, k, h;

    bool operator==(const LatticeFamilyParams&) const = default;
};

// true when (shape, j, k, h) lies in one of the supported parameter ranges
bool in_family_range(const LatticeFamilyParams& p);

// Gram matrix of the family; `explore` admits parameters outside the
// supported ranges (the lattice invariants are still enforced).
IntLattice family_lattice(const LatticeFamilyParams& p, bool explore = false);

std::string family_name(const LatticeFamilyParams& p);

} // namespace k3lat
