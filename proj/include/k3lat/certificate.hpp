// Replayable evidence trees. A certificate records, step by step, the finite
// facts a verification run established: enumerations found empty, divisibility
// obstructions, exact inequality evaluations, and any assumptions imported
// from outside the lattice (which cap the status at VerifiedWithAssumptions).

#pragma once

#include "k3lat/lattice.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace k3lat {

enum class CertStatus { Verified, VerifiedWithAssumptions, Failed };

std::string to_string(CertStatus s);

struct Certificate;

struct CertNode {
    enum class Kind {
        EnumerationEmpty,     // a finite search returned no solutions
        DivisibilityRuledOut, // divisor does not divide dividend (or sign clash)
        QuadraticRuledOut,    // the rank-3 orthogonal-root quadratic has no roots
        InequalityChecked,    // lhs <relation> rhs, both exact integers
        ExternalAssumption,   // imported fact the lattice cannot decide
        SubCertificate,
        Finding,              // neutral note / witness list
    };

    Kind kind = Kind::Finding;
    bool ok = true;          // whether this step supports the claim
    std::string label;       // human-readable step description

    std::string query;       // EnumerationEmpty
    std::string bound;       // EnumerationEmpty: derived completeness bound

    std::optional<Int> divisor, dividend;  // DivisibilityRuledOut

    std::optional<Int> lhs, rhs;           // InequalityChecked
    std::string relation;                  // ">=", "=", ...

    std::string assumption;  // ExternalAssumption: the imported statement
    std::string source;      // ExternalAssumption: where it comes from

    std::vector<std::string> witnesses;

    std::shared_ptr<Certificate> sub;      // SubCertificate

    std::vector<CertNode> children;

    static CertNode enumeration_empty(std::string label, std::string query, std::string bound,
                                      bool empty);
    static CertNode divisibility(std::string label, Int divisor, Int dividend, bool ruled_out);
    static CertNode quadratic(std::string label, bool ruled_out, std::vector<std::string> detail);
    static CertNode inequality(std::string label, Int lhs, std::string relation, Int rhs,
                               bool satisfied);
    static CertNode external_assumption(std::string label, std::string assumption,
                                        std::string source);
    static CertNode subcertificate(std::string label, Certificate sub);
    static CertNode finding(std::string label, std::vector<std::string> witnesses = {},
                            bool ok = true);
};

struct Certificate {
    std::string claim_id;
    CertStatus status = CertStatus::Verified;
    std::optional<LatticeFamilyParams> params;
    std::vector<CertNode> steps;

    CertNode& add(CertNode node);  // appends and folds the node into status

    // recompute status from the step tree (Failed dominates, then assumptions)
    void refresh_status();

    bool failed() const { return status == CertStatus::Failed; }
    bool has_assumptions() const;

    // depth-first walk over all nodes including subcertificates
    void visit(const std::function<void(const CertNode&)>& f) const;
};

} // namespace k3lat
