// JSON surface: lattice/class/query schemas for the CLI, and serialization of
// certificates, table rows and whole reports. Integers beyond 64 bits travel
// as decimal strings.

#pragma once

#include "k3lat/verify.hpp"

#include <json.hpp>

#include <string>

namespace k3lat {

struct schema_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json int_to_json(const Int& v);
Int int_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json lattice_to_json(const IntLattice& L);
IntLattice lattice_from_json(const nlohmann::json& j);

nlohmann::json class_to_json(const DivisorClass& x);
DivisorClass class_from_json(const nlohmann::json& j, const std::string& field);

// query object; anchors may be basis labels or {"coords": [...]}
ClassQuery query_from_json(const nlohmann::json& j, const IntLattice& L);
nlohmann::json query_to_json(const ClassQuery& q, const IntLattice& L);

// a query file: {"lattice": ..., "ample": ... (optional), "query": ...}
struct QueryFile {
    IntLattice lattice;
    std::optional<DivisorClass> ample;
    ClassQuery query;
};
QueryFile query_file_from_json(const nlohmann::json& j);

nlohmann::json result_to_json(const IntLattice& L, const EnumerationResult& r);

nlohmann::json certificate_to_json(const Certificate& c);
nlohmann::json table_row_to_json(const TableRow& r);

nlohmann::json make_report(const std::vector<TableVerification>& table,
                           const std::vector<Certificate>& extra_certificates,
                           const std::string& timestamp);

} // namespace k3lat
