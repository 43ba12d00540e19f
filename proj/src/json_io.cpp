#include "k3lat/json_io.hpp"

#include <limits>

namespace k3lat {

using nlohmann::json;

namespace {

const Int kI64Max = Int(std::numeric_limits<std::int64_t>::max());
const Int kI64Min = Int(std::numeric_limits<std::int64_t>::min());

[[noreturn]] void bad(const std::string& field, const std::string& what) {
    throw schema_error("field '" + field + "': " + what);
}

const json& require(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains(field)) bad(field, "missing");
    return j.at(field);
}

} // namespace

json int_to_json(const Int& v) {
    if (v >= kI64Min && v <= kI64Max) return json(static_cast<std::int64_t>(v));
    return json(v.str());
}

Int int_from_json(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            bad(field, "not a decimal integer string");
        }
    }
    bad(field, "expected integer or decimal string");
}

json lattice_to_json(const IntLattice& L) {
    json gram = json::array();
    for (int i = 0; i < L.rank(); ++i) {
        json row = json::array();
        for (int j = 0; j < L.rank(); ++j) row.push_back(int_to_json(L.gram(i, j)));
        gram.push_back(std::move(row));
    }
    return json{{"labels", L.labels()}, {"gram", std::move(gram)}};
}

IntLattice lattice_from_json(const json& j) {
    const json& jl = require(j, "labels");
    const json& jg = require(j, "gram");
    if (!jl.is_array()) bad("labels", "expected an array of strings");
    std::vector<std::string> labels;
    for (const auto& e : jl) {
        if (!e.is_string()) bad("labels", "expected an array of strings");
        labels.push_back(e.get<std::string>());
    }
    if (!jg.is_array()) bad("gram", "expected an array of rows");
    std::vector<std::vector<Int>> rows;
    for (const auto& r : jg) {
        if (!r.is_array()) bad("gram", "expected an array of rows");
        std::vector<Int> row;
        for (const auto& e : r) row.push_back(int_from_json(e, "gram"));
        rows.push_back(std::move(row));
    }
    try {
        return IntLattice::create(std::move(labels), std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw schema_error(std::string("field 'gram': ") + e.what());
    }
}

json class_to_json(const DivisorClass& x) {
    json coords = json::array();
    for (const auto& c : x.coords) coords.push_back(int_to_json(c));
    return json{{"coords", std::move(coords)}};
}

DivisorClass class_from_json(const json& j, const std::string& field) {
    const json* arr = nullptr;
    if (j.is_object() && j.contains("coords")) arr = &j.at("coords");
    else if (j.is_array()) arr = &j;
    if (!arr || !arr->is_array()) bad(field, "expected {\"coords\": [...]} ");
    DivisorClass x;
    for (const auto& e : *arr) x.coords.push_back(int_from_json(e, field + ".coords"));
    return x;
}

ClassQuery query_from_json(const json& j, const IntLattice& L) {
    ClassQuery q;
    if (j.contains("self_intersection"))
        q.self_intersection = int_from_json(j.at("self_intersection"), "self_intersection");
    if (j.contains("pairings")) {
        const json& ps = j.at("pairings");
        if (!ps.is_array()) bad("pairings", "expected an array");
        for (const auto& pj : ps) {
            PairingConstraint pc;
            const json& anchor = require(pj, "anchor");
            if (anchor.is_string()) {
                auto b = L.basis_class(anchor.get<std::string>());
                if (!b) bad("pairings.anchor", "unknown basis label '" +
                                                   anchor.get<std::string>() + "'");
                pc.anchor = *b;
            } else {
                pc.anchor = class_from_json(anchor, "pairings.anchor");
            }
            if (pc.anchor.rank() != static_cast<size_t>(L.rank()))
                bad("pairings.anchor", "rank mismatch");
            const std::string rel = require(pj, "relation").get<std::string>();
            if (rel == "eq") pc.rel = Rel::Eq;
            else if (rel == "le") pc.rel = Rel::Le;
            else if (rel == "ge") pc.rel = Rel::Ge;
            else if (rel == "range") pc.rel = Rel::Range;
            else bad("pairings.relation", "expected eq|le|ge|range");
            if (pc.rel == Rel::Range) {
                const json& r = require(pj, "range");
                if (!r.is_array() || r.size() != 2) bad("pairings.range", "expected [lo, hi]");
                pc.lo = int_from_json(r[0], "pairings.range");
                pc.hi = int_from_json(r[1], "pairings.range");
            } else {
                pc.value = int_from_json(require(pj, "value"), "pairings.value");
            }
            q.pairings.push_back(std::move(pc));
        }
    }
    if (j.contains("primitive_only")) {
        if (!j.at("primitive_only").is_boolean()) bad("primitive_only", "expected a boolean");
        q.primitive_only = j.at("primitive_only").get<bool>();
    }
    if (j.contains("exclude")) {
        if (!j.at("exclude").is_array()) bad("exclude", "expected an array of classes");
        for (const auto& e : j.at("exclude")) q.exclude.push_back(class_from_json(e, "exclude"));
    }
    return q;
}

json query_to_json(const ClassQuery& q, const IntLattice& L) {
    (void)L;
    json out = json::object();
    if (q.self_intersection) out["self_intersection"] = int_to_json(*q.self_intersection);
    json ps = json::array();
    for (const auto& pc : q.pairings) {
        json pj{{"anchor", class_to_json(pc.anchor)}};
        switch (pc.rel) {
            case Rel::Eq: pj["relation"] = "eq"; pj["value"] = int_to_json(pc.value); break;
            case Rel::Le: pj["relation"] = "le"; pj["value"] = int_to_json(pc.value); break;
            case Rel::Ge: pj["relation"] = "ge"; pj["value"] = int_to_json(pc.value); break;
            case Rel::Range:
                pj["relation"] = "range";
                pj["range"] = json::array({int_to_json(pc.lo), int_to_json(pc.hi)});
                break;
        }
        ps.push_back(std::move(pj));
    }
    out["pairings"] = std::move(ps);
    out["primitive_only"] = q.primitive_only;
    json ex = json::array();
    for (const auto& e : q.exclude) ex.push_back(class_to_json(e));
    out["exclude"] = std::move(ex);
    return out;
}

QueryFile query_file_from_json(const json& j) {
    QueryFile f{lattice_from_json(require(j, "lattice")), std::nullopt, {}};
    if (j.contains("ample")) {
        f.ample = class_from_json(j.at("ample"), "ample");
        if (f.ample->rank() != static_cast<size_t>(f.lattice.rank())) bad("ample", "rank mismatch");
    }
    f.query = query_from_json(require(j, "query"), f.lattice);
    for (const auto& e : f.query.exclude)
        if (e.rank() != static_cast<size_t>(f.lattice.rank())) bad("exclude", "rank mismatch");
    return f;
}

json result_to_json(const IntLattice& L, const EnumerationResult& r) {
    json sols = json::array();
    for (const auto& s : r.solutions) {
        json e = class_to_json(s);
        e["name"] = L.class_name(s);
        sols.push_back(std::move(e));
    }
    json box = json::array();
    for (size_t i = 0; i < r.box.size(); ++i)
        box.push_back(json{{"label", i < L.labels().size() ? L.labels()[i] : ""},
                           {"lo", int_to_json(r.box[i].lo)},
                           {"hi", int_to_json(r.box[i].hi)}});
    return json{{"solutions", std::move(sols)},
                {"count", r.solutions.size()},
                {"completeness_bound", {{"box", std::move(box)}, {"note", r.bound_note}}},
                {"stats", {{"nodes", r.stats.nodes}}}};
}

namespace {

json params_to_json(const LatticeFamilyParams& p) {
    return json{{"shape", p.shape == FamilyShape::Rank2 ? "rank2" : "rank3"},
                {"j", int_to_json(p.j)},
                {"k", int_to_json(p.k)},
                {"h", int_to_json(p.h)}};
}

json node_to_json(const CertNode& n) {
    static const char* kinds[] = {"enumeration_empty", "divisibility_ruled_out",
                                  "quadratic_ruled_out", "inequality_checked",
                                  "external_assumption", "subcertificate", "finding"};
    json out{{"kind", kinds[static_cast<int>(n.kind)]}, {"ok", n.ok}, {"label", n.label}};
    if (!n.query.empty()) out["query"] = n.query;
    if (!n.bound.empty()) out["bound"] = n.bound;
    if (n.divisor) out["divisor"] = int_to_json(*n.divisor);
    if (n.dividend) out["dividend"] = int_to_json(*n.dividend);
    if (n.lhs) out["lhs"] = int_to_json(*n.lhs);
    if (n.rhs) out["rhs"] = int_to_json(*n.rhs);
    if (!n.relation.empty()) out["relation"] = n.relation;
    if (!n.assumption.empty()) out["assumption"] = n.assumption;
    if (!n.source.empty()) out["source"] = n.source;
    if (!n.witnesses.empty()) out["witnesses"] = n.witnesses;
    if (n.sub) out["certificate"] = certificate_to_json(*n.sub);
    if (!n.children.empty()) {
        json cs = json::array();
        for (const auto& c : n.children) cs.push_back(node_to_json(c));
        out["children"] = std::move(cs);
    }
    return out;
}

} // namespace

json certificate_to_json(const Certificate& c) {
    json steps = json::array();
    for (const auto& n : c.steps) steps.push_back(node_to_json(n));
    json out{{"claim_id", c.claim_id},
             {"status", to_string(c.status)},
             {"steps", std::move(steps)}};
    if (c.params) out["params"] = params_to_json(*c.params);
    return out;
}

json table_row_to_json(const TableRow& r) {
    json A = json::array();
    for (size_t a = 0; a < 3; ++a) {
        json e = class_to_json(r.A[a]);
        e["name"] = r.A_names[a];
        A.push_back(std::move(e));
    }
    json H = class_to_json(r.H);
    H["name"] = r.H_name;
    return json{{"row", r.row},
                {"i", r.i},
                {"params", params_to_json(r.params)},
                {"rank", r.rank},
                {"disc", int_to_json(r.disc)},
                {"disc_formula", r.disc_formula},
                {"disc_formula_value", int_to_json(r.disc_formula_value)},
                {"H", std::move(H)},
                {"genus", int_to_json(r.genus_value)},
                {"genus_formula", r.genus_formula},
                {"genus_formula_value", int_to_json(r.genus_formula_value)},
                {"A", std::move(A)}};
}

json make_report(const std::vector<TableVerification>& table,
                 const std::vector<Certificate>& extra_certificates,
                 const std::string& timestamp) {
    json rows = json::array();
    json certs = json::array();
    size_t verified = 0, with_assumptions = 0, failed = 0;
    auto count = [&](const Certificate& c) {
        switch (c.status) {
            case CertStatus::Verified: ++verified; break;
            case CertStatus::VerifiedWithAssumptions: ++with_assumptions; break;
            case CertStatus::Failed: ++failed; break;
        }
    };
    for (const auto& tv : table) {
        rows.push_back(table_row_to_json(tv.row));
        certs.push_back(certificate_to_json(tv.cert));
        count(tv.cert);
    }
    for (const auto& c : extra_certificates) {
        certs.push_back(certificate_to_json(c));
        count(c);
    }
    json out{{"rows", std::move(rows)},
             {"certificates", std::move(certs)},
             {"summary",
              {{"verified", verified},
               {"verified_with_assumptions", with_assumptions},
               {"failed", failed}}}};
    if (!timestamp.empty()) out["generated_at"] = timestamp;
    return out;
}

} // namespace k3lat
