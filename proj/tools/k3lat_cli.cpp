// Command-line front end. Subcommands:
//   verify-table   rebuild the polarization table and certify every row
//   verify-claim   replay one catalogued claim at given parameters
//   build          construct a family lattice and write it as JSON
//   query          run the exact enumerator on a query file
//   oracle         run the brute-force box scan on a query file
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include "k3lat/json_io.hpp"
#include "k3lat/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace k3lat;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_output(const nlohmann::json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << doc.dump(2) << "\n";
    std::cerr << "wrote " << out_path << "\n";
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw schema_error("cannot open file: " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw schema_error(std::string("not valid JSON: ") + e.what());
    }
    return j;
}

void print_result(const IntLattice& L, const EnumerationResult& r) {
    std::cout << r.solutions.size() << " solution" << (r.solutions.size() == 1 ? "" : "s")
              << "\n";
    for (const auto& s : r.solutions) {
        std::cout << "  " << L.class_name(s) << "  coords (";
        for (size_t i = 0; i < s.coords.size(); ++i)
            std::cout << (i ? "," : "") << s.coords[i].str();
        std::cout << ")\n";
    }
    std::cout << "completeness bound: " << r.bound_note << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"exact-arithmetic verifier for polarized K3 lattice families"};
    app.require_subcommand(1);
    // flags are long-form only; frees -h/--h for the family parameter
    app.set_help_flag("--help", "print help");

    // verify-table
    auto* tbl = app.add_subcommand("verify-table", "rebuild and certify the polarization table");
    tbl->set_help_flag("--help", "print help");
    long long h_max = 10, k_max = 12;
    int jobs = 1;
    std::string out_path;
    tbl->add_option("--h-max", h_max, "largest h in the symbolic rows")->check(CLI::Range(1LL, 1000LL));
    tbl->add_option("--k-max", k_max, "largest k in the symbolic rows")->check(CLI::Range(5LL, 1000LL));
    tbl->add_option("--jobs", jobs, "verify rows concurrently")->check(CLI::Range(1, 256));
    tbl->add_option("--out", out_path, "write the JSON report here instead of stdout");

    // verify-claim
    auto* clm = app.add_subcommand("verify-claim", "replay one catalogued claim");
    clm->set_help_flag("--help", "print help");
    std::string claim_id, shape_opt;
    long long pj = 0, pk = 0, ph = 0;
    clm->add_option("id", claim_id, "claim id (3.3, 3.6 ... 3.12)")->required();
    clm->add_option("--j", pj, "family parameter j")->required();
    clm->add_option("--k", pk, "family parameter k")->required();
    clm->add_option("--h", ph, "family parameter h")->required();
    clm->add_option("--shape", shape_opt, "rank2|rank3 (inferred when omitted)");
    std::string claim_out;
    clm->add_option("--out", claim_out, "write the certificate JSON here instead of stdout");

    // build
    auto* bld = app.add_subcommand("build", "construct a family lattice and write it as JSON");
    bld->set_help_flag("--help", "print help");
    std::string bshape = "rank2", bout;
    long long bj = 0, bk = 0, bh = 0;
    bool explore = false;
    bld->add_option("--shape", bshape, "rank2|rank3")->check(CLI::IsMember({"rank2", "rank3"}));
    bld->add_option("--j", bj)->required();
    bld->add_option("--k", bk)->required();
    bld->add_option("--h", bh)->required();
    bld->add_flag("--explore", explore, "admit parameters outside the catalogued ranges");
    bld->add_option("--out", bout, "output file")->required();

    // query / oracle
    auto* qry = app.add_subcommand("query", "run the exact enumerator on a query file");
    qry->set_help_flag("--help", "print help");
    std::string qfile, qout;
    qry->add_option("file", qfile, "query file")->required();
    qry->add_option("--out", qout, "also write the result JSON here");

    auto* orc = app.add_subcommand("oracle", "brute-force box scan on a query file");
    orc->set_help_flag("--help", "print help");
    std::string ofile, oout;
    long long obox = 10;
    orc->add_option("file", ofile, "query file")->required();
    orc->add_option("--box", obox, "scan |coord_i| <= box")->required()->check(CLI::Range(1LL, 1000LL));
    orc->add_option("--out", oout, "also write the result JSON here");

    CLI11_PARSE(app, argc, argv);

    if (tbl->parsed()) {
        auto table = verify_table(Int(h_max), Int(k_max), jobs);
        size_t failed = 0;
        for (const auto& tv : table) {
            if (tv.cert.failed()) ++failed;
            std::cerr << "row " << tv.row.row << "  " << family_name(tv.row.params) << "  "
                      << to_string(tv.cert.status) << "\n";
        }
        write_output(make_report(table, {}, utc_timestamp()), out_path);
        std::cerr << (failed == 0 ? "table verified" : "TABLE VERIFICATION FAILED") << " ("
                  << table.size() << " instances)\n";
        return failed == 0 ? 0 : 1;
    }

    if (clm->parsed()) {
        const std::string id = normalize_claim_id(claim_id);
        if (id.empty()) {
            std::cerr << "unknown claim id '" << claim_id << "'\n";
            return 2;
        }
        LatticeFamilyParams p;
        p.j = pj; p.k = pk; p.h = ph;
        if (shape_opt.empty()) p.shape = infer_shape(p.j, p.k, p.h);
        else p.shape = shape_opt == "rank3" ? FamilyShape::Rank3 : FamilyShape::Rank2;
        Certificate cert = verify_claim(id, p);
        write_output(certificate_to_json(cert), claim_out);
        std::cerr << "claim " << id << " at " << family_name(p) << ": " << to_string(cert.status)
                  << "\n";
        return cert.failed() ? 1 : 0;
    }

    if (bld->parsed()) {
        LatticeFamilyParams p;
        p.shape = bshape == "rank3" ? FamilyShape::Rank3 : FamilyShape::Rank2;
        p.j = bj; p.k = bk; p.h = bh;
        FamilyBuild fb = build_family_checked(p, explore);
        nlohmann::json doc = lattice_to_json(fb.P.lattice());
        doc["ample"] = class_to_json(fb.P.ample());
        write_output(doc, bout);
        std::cerr << family_name(p) << ": disc " << discriminant(fb.P.lattice()).str()
                  << ", polarization validated\n";
        return 0;
    }

    if (qry->parsed() || orc->parsed()) {
        const bool exact = qry->parsed();
        QueryFile f = query_file_from_json(load_json(exact ? qfile : ofile));
        if (f.ample) {
            // validates the polarization invariant as a side effect
            PolarizedLattice::validate(f.lattice, *f.ample);
        }
        EnumerationResult r = exact ? enumerate_classes(f.lattice, f.query)
                                    : oracle_enumerate(f.lattice, f.query, Int(obox));
        print_result(f.lattice, r);
        const std::string& rout = exact ? qout : oout;
        if (!rout.empty()) write_output(result_to_json(f.lattice, r), rout);
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const k3lat::schema_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const k3lat::finiteness_not_certified& e) {
        std::cerr << "query rejected: " << e.what() << "\n"
                  << "(fix the self-intersection and add an eq/range pairing against a class "
                     "of positive square)\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
