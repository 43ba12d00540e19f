// Surface-level predicates on a polarized lattice: effectivity via the
// Riemann-Roch sign, nefness via root enumeration, the linear-system
// classification ladder (very ample / birational / double cover), exhaustive
// irreducibility certification, and the three-bundle decomposition validator.

#pragma once

#include "k3lat/certificate.hpp"
#include "k3lat/enumerate.hpp"
#include "k3lat/lattice.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace k3lat {

// IntLattice plus a validated ample class: ample^2 > 0 and no root orthogonal
// to it (checked by complete enumeration at construction).
class PolarizedLattice {
  public:
    static PolarizedLattice validate(IntLattice lattice, DivisorClass ample);

    const IntLattice& lattice() const { return lat_; }
    const DivisorClass& ample() const { return ample_; }

  private:
    PolarizedLattice(IntLattice l, DivisorClass a) : lat_(std::move(l)), ample_(std::move(a)) {}
    IntLattice lat_;
    DivisorClass ample_;
};

// spec-shaped forwards of the enumeration kernel
EnumerationResult enumerate_classes(const PolarizedLattice& P, const ClassQuery& q);
EnumerationResult oracle_enumerate(const PolarizedLattice& P, const ClassQuery& q, const Int& box);
EnumerationResult roots_violating_nef(const PolarizedLattice& P, const DivisorClass& delta);

// g(H) = H^2/2 + 1
Int genus(const PolarizedLattice& P, const DivisorClass& H);

enum class Effectivity { Effective, NotEffective, Unknown };

// Riemann-Roch sign test: for x^2 >= -2 the class or its negative is
// effective, and the pairing with the ample class picks the sign. Classes
// with x^2 <= -4 are Unknown; the zero class is NotEffective by convention.
Effectivity is_effective(const PolarizedLattice& P, const DivisorClass& x);

enum class NefStatus { NefCertified, NotNef, Unknown };

struct NefCheck {
    NefStatus status = NefStatus::Unknown;
    EnumerationResult search;       // the violating-root enumeration, when run
    bool search_ran = false;
    std::string reason;             // for Unknown
};

NefCheck is_nef(const PolarizedLattice& P, const DivisorClass& delta);

enum class Verdict {
    VeryAmple,
    BirationalContracting,
    DoubleCoverP2,
    DoubleCoverVeronese,
    NotNefCertified,
    Unknown,
};

std::string to_string(Verdict v);

// an imported fact (with provenance) a caller may feed into a classification
struct ExternalFact {
    std::string label;
    std::string statement;
    std::string source;
};

struct LinearSystemProfile {
    DivisorClass cls;
    Verdict verdict = Verdict::Unknown;
    std::vector<DivisorClass> contracted;  // nonempty only for BirationalContracting
    std::optional<DivisorClass> half;      // B with cls = 2B (Veronese case)
    std::string blocking;                  // named blocking fact when Unknown
    Certificate evidence;
};

// Decision ladder on a class with delta^2 >= 2; every step is decided by a
// finite enumeration. Steps that would need an irreducibility fact the
// lattice cannot certify downgrade the verdict to Unknown, never upgrade.
LinearSystemProfile classify_linear_system(const PolarizedLattice& P, const DivisorClass& delta,
                                           const std::optional<ExternalFact>& nef_assumption = {});

enum class IrrStatus { CertifiedIrreducible, DecompositionExists, Unknown };

struct IrreducibilityCheck {
    IrrStatus status = IrrStatus::Unknown;
    // each witness is a multiset of curve-candidate classes summing to C;
    // existence of a witness is NOT a proof of reducibility
    std::vector<std::vector<DivisorClass>> witnesses;
    Certificate evidence;
};

// Exhausts all decompositions C = C_1 + ... + C_m (m >= 2) into classes with
// C_i^2 >= -2 and C_i.ample >= 1. Requires is_effective(P, C) = Effective.
IrreducibilityCheck certify_irreducible(const PolarizedLattice& P, const DivisorClass& C);

struct DecompositionCase {
    DivisorClass H;                 // the sum the triple must reach
    std::array<DivisorClass, 3> A;
    std::array<LinearSystemProfile, 3> profiles;
};

// Checks the hypotheses under which the triple decomposition forces the
// surjectivity conclusion: A1 very ample, and each of A2, A3 very ample, or
// birational with every contracted Z satisfying H.Z >= 3 (Z certified
// irreducible), or a 2:1 cover with H.A_j >= 9 (H.B_j >= 9 for the Veronese
// case). The cohomological conclusion itself is quoted, not re-proved.
Certificate validate_decomposition(const PolarizedLattice& P, const DecompositionCase& c);

bool is_indivisible(const PolarizedLattice& P, const DivisorClass& H);

} // namespace k3lat
