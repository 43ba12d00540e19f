// The claim suite: family construction with dual validation of the
// no-orthogonal-root invariant, replays of the catalogued claims 3.3 and
// 3.6-3.12, and reproduction of the nine-row polarization table.

#pragma once

#include "k3lat/geometry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace k3lat {

struct FamilyBuild {
    PolarizedLattice P;
    Certificate polarization;  // the Claim 3.3 evidence (dual-method)
};

// Builds the family, validates the ample class by complete enumeration and,
// in parallel, by the closed-form divisibility (rank 2) or quadratic (rank 3)
// argument; the two must agree. Throws on invalid parameters or validation
// failure.
FamilyBuild build_family_checked(const LatticeFamilyParams& p, bool explore = false);

// convenience wrapper returning just the polarized lattice
PolarizedLattice build_family(const LatticeFamilyParams& p, bool explore = false);

// ids of the built-in claim catalog
std::vector<std::string> claim_catalog();

// normalizes "3.7" / "Claim3.7" to the canonical id; empty if unknown
std::string normalize_claim_id(const std::string& id);

// whether the claim covers these parameters
bool claim_accepts(const std::string& id, const LatticeFamilyParams& p);

// the family shape a claim id implies for given (j, k, h)
FamilyShape infer_shape(const Int& j, const Int& k, const Int& h);

// Replays one claim at the given parameters. The certificate never fabricates
// evidence: every arithmetic step carries exact values, and geometric facts
// the lattice cannot decide enter as explicit assumption nodes.
Certificate verify_claim(const std::string& id, const LatticeFamilyParams& p);

// all (claim, parameter) instances of the catalog within the sweep caps
std::vector<std::pair<std::string, LatticeFamilyParams>> claim_suite(const Int& h_max,
                                                                     const Int& k_max);

struct TableRow {
    int row = 0;  // 1..9
    int i = 1;    // embedding multiplier of the row
    LatticeFamilyParams params;
    int rank = 2;
    Int disc;
    std::string disc_formula;
    Int disc_formula_value;
    DivisorClass H;
    std::string H_name;
    Int genus_value;
    std::string genus_formula;
    Int genus_formula_value;
    std::array<DivisorClass, 3> A;
    std::array<std::string, 3> A_names;
};

struct TableVerification {
    TableRow row;
    Certificate cert;
};

// Rebuilds every row instance up to the caps: checks the disc and genus
// columns exactly, indivisibility of H, classifies the decomposition classes,
// and validates the three-bundle hypotheses. Output order is canonical.
std::vector<TableVerification> verify_table(const Int& h_max, const Int& k_max, int jobs = 1);

} // namespace k3lat
