#include "k3lat/certificate.hpp"

#include <functional>

namespace k3lat {

std::string to_string(CertStatus s) {
    switch (s) {
        case CertStatus::Verified: return "Verified";
        case CertStatus::VerifiedWithAssumptions: return "VerifiedWithAssumptions";
        case CertStatus::Failed: return "Failed";
    }
    return "?";
}

CertNode CertNode::enumeration_empty(std::string label, std::string query, std::string bound,
                                     bool empty) {
    CertNode n;
    n.kind = Kind::EnumerationEmpty;
    n.label = std::move(label);
    n.query = std::move(query);
    n.bound = std::move(bound);
    n.ok = empty;
    return n;
}

CertNode CertNode::divisibility(std::string label, Int divisor, Int dividend, bool ruled_out) {
    CertNode n;
    n.kind = Kind::DivisibilityRuledOut;
    n.label = std::move(label);
    n.divisor = std::move(divisor);
    n.dividend = std::move(dividend);
    n.ok = ruled_out;
    return n;
}

CertNode CertNode::quadratic(std::string label, bool ruled_out, std::vector<std::string> detail) {
    CertNode n;
    n.kind = Kind::QuadraticRuledOut;
    n.label = std::move(label);
    n.witnesses = std::move(detail);
    n.ok = ruled_out;
    return n;
}

CertNode CertNode::inequality(std::string label, Int lhs, std::string relation, Int rhs,
                              bool satisfied) {
    CertNode n;
    n.kind = Kind::InequalityChecked;
    n.label = std::move(label);
    n.lhs = std::move(lhs);
    n.rhs = std::move(rhs);
    n.relation = std::move(relation);
    n.ok = satisfied;
    return n;
}

CertNode CertNode::external_assumption(std::string label, std::string assumption,
                                       std::string source) {
    CertNode n;
    n.kind = Kind::ExternalAssumption;
    n.label = std::move(label);
    n.assumption = std::move(assumption);
    n.source = std::move(source);
    return n;
}

CertNode CertNode::subcertificate(std::string label, Certificate sub) {
    CertNode n;
    n.kind = Kind::SubCertificate;
    n.label = std::move(label);
    n.sub = std::make_shared<Certificate>(std::move(sub));
    n.ok = !n.sub->failed();
    return n;
}

CertNode CertNode::finding(std::string label, std::vector<std::string> witnesses, bool ok) {
    CertNode n;
    n.kind = Kind::Finding;
    n.label = std::move(label);
    n.witnesses = std::move(witnesses);
    n.ok = ok;
    return n;
}

namespace {

void fold(const CertNode& n, bool& failed, bool& assumed) {
    if (!n.ok) failed = true;
    if (n.kind == CertNode::Kind::ExternalAssumption) assumed = true;
    if (n.sub) {
        if (n.sub->failed()) failed = true;
        if (n.sub->status == CertStatus::VerifiedWithAssumptions) assumed = true;
    }
    for (const auto& c : n.children) fold(c, failed, assumed);
}

} // namespace

CertNode& Certificate::add(CertNode node) {
    steps.push_back(std::move(node));
    refresh_status();
    return steps.back();
}

void Certificate::refresh_status() {
    bool failed = false, assumed = false;
    for (const auto& n : steps) fold(n, failed, assumed);
    status = failed ? CertStatus::Failed
                    : (assumed ? CertStatus::VerifiedWithAssumptions : CertStatus::Verified);
}

bool Certificate::has_assumptions() const {
    bool failed = false, assumed = false;
    for (const auto& n : steps) fold(n, failed, assumed);
    return assumed;
}

void Certificate::visit(const std::function<void(const CertNode&)>& f) const {
    std::function<void(const CertNode&)> rec = [&](const CertNode& n) {
        f(n);
        for (const auto& c : n.children) rec(c);
        if (n.sub)
            for (const auto& s : n.sub->steps) rec(s);
    };
    for (const auto& n : steps) rec(n);
}

} // namespace k3lat
