#include "k3lat/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

namespace k3lat {

namespace {

ClassQuery orthogonal_root_query(const DivisorClass& anchor) {
    ClassQuery q;
    q.self_intersection = Int(-2);
    q.pairings.push_back(PairingConstraint::eq(anchor, Int(0)));
    return q;
}

// closed-form replay of the no-orthogonal-root argument, rank 2:
// a root d with d.D = 0 spans with D a full-rank sublattice of discriminant
// -4h, so disc Gamma = 4hj - k^2 must divide it
CertNode rank2_replay(const IntLattice& L, const LatticeFamilyParams& p, bool& ruled_out) {
    const Int disc = 4 * p.h * p.j - p.k * p.k;
    const Int sub = -4 * p.h;
    const Divisibility d =
        divisibility_obstruction(L, {{2 * p.h, Int(0)}, {Int(0), Int(-2)}});
    ruled_out = d == Divisibility::RuledOut;
    return CertNode::divisibility(
        "a root orthogonal to D would span a full-rank sublattice with disc(D,d) = -4h; "
        "the index relation forces disc Gamma | disc(D,d)",
        disc, sub, ruled_out);
}

// closed-form replay, rank 3: eliminating the R-coordinate through d.D = 0
// turns d^2 = -2 into a quadratic in alpha whose discriminant is
// C*beta^2 + 4h(h+1); C + 4h(h+1) < 0 kills beta != 0, and beta = 0 would
// need h(h+1) to be a perfect square
CertNode rank3_replay(const LatticeFamilyParams& p, bool& ruled_out) {
    const Int &j = p.j, &k = p.k, &h = p.h;
    const Int C = h * h * (k + j) * (k + j) - h * (h + 1) * (2 * j * k + k * k + 4 - 8 * j);
    const Int beta1 = C + 4 * h * (h + 1);
    const bool square = is_perfect_square(h * (h + 1));
    ruled_out = beta1 < 0 && !square;
    return CertNode::quadratic(
        "no rational solution of the orthogonal-root quadratic",
        ruled_out,
        {"discriminant in alpha: C*beta^2 + 4h(h+1) with C = " + C.str(),
         "C + 4h(h+1) = " + beta1.str() + (beta1 < 0 ? " < 0: no root for beta != 0"
                                                     : " >= 0: inconclusive"),
         "beta = 0 needs h(h+1) = " + Int(h * (h + 1)).str() +
             (square ? " to be a square: it is (inconclusive)" : ", not a perfect square")});
}

} // namespace

FamilyBuild build_family_checked(const LatticeFamilyParams& p, bool explore) {
    IntLattice L = family_lattice(p, explore);

    Certificate cert;
    cert.claim_id = "Claim3.3";
    cert.params = p;

    const Int disc = discriminant(L);
    cert.add(CertNode::inequality("lattice is nondegenerate: disc = " + disc.str(), disc, "!=",
                                  Int(0), disc != 0));
    const auto sig = signature(L);
    cert.add(CertNode::finding(
        "signature (" + std::to_string(sig.first) + "," + std::to_string(sig.second) + ")", {},
        sig.first == 1 && sig.second == L.rank() - 1));

    const DivisorClass D = *L.basis_class("D");
    EnumerationResult roots = enumerate_classes(L, orthogonal_root_query(D));
    const bool empty = roots.solutions.empty();
    cert.add(CertNode::enumeration_empty("no root orthogonal to the ample class D",
                                         query_description(L, orthogonal_root_query(D)),
                                         roots.bound_note, empty));

    if (in_family_range(p)) {
        bool ruled_out = false;
        cert.add(p.shape == FamilyShape::Rank2 ? rank2_replay(L, p, ruled_out)
                                               : rank3_replay(p, ruled_out));
        cert.add(CertNode::finding("enumeration and closed-form argument agree", {},
                                   empty == ruled_out && ruled_out));
    } else {
        cert.add(CertNode::finding("parameters outside the catalogued ranges; "
                                   "closed-form replay skipped"));
    }

    if (!empty)
        throw std::invalid_argument("build_family: validation failed, root orthogonal to D in " +
                                    family_name(p) + ": " + L.class_name(roots.solutions.front()));
    PolarizedLattice P = PolarizedLattice::validate(std::move(L), D);
    return FamilyBuild{std::move(P), std::move(cert)};
}

PolarizedLattice build_family(const LatticeFamilyParams& p, bool explore) {
    return build_family_checked(p, explore).P;
}

std::vector<std::string> claim_catalog() {
    return {"3.3", "3.6", "3.7", "3.8", "3.9", "3.10", "3.11", "3.12"};
}

std::string normalize_claim_id(const std::string& id) {
    std::string s = id;
    if (s.rfind("Claim", 0) == 0) s = s.substr(5);
    for (const auto& c : claim_catalog())
        if (s == c) return s;
    return "";
}

FamilyShape infer_shape(const Int& j, const Int& k, const Int& h) {
    if (j == 0) return FamilyShape::Rank3;
    if (j == 1 && k == 4 && h == 1) return FamilyShape::Rank3;
    return FamilyShape::Rank2;
}

bool claim_accepts(const std::string& raw, const LatticeFamilyParams& p) {
    const std::string id = normalize_claim_id(raw);
    const Int &j = p.j, &k = p.k, &h = p.h;
    const bool r2 = p.shape == FamilyShape::Rank2;
    if (id == "3.3") return in_family_range(p);
    if (id == "3.6") return r2 && j == -1 && k == 1 && h >= 3;
    if (id == "3.7") return r2 && j == -1 && k == 2 && h >= 1;
    if (id == "3.8") return !r2 && j == 0 && k == 1 && h >= 3;
    if (id == "3.9") return !r2 && j == 0 && k == 2 && h >= 1;
    if (id == "3.10") return r2 && j == 1 && k == 5 && h == 2;
    if (id == "3.11") return !r2 && j == 1 && k == 4 && h == 1;
    if (id == "3.12")
        return r2 && (((j == 1 || j == 2) && k >= j + 4 && h == 2) || (j == 1 && k == 5 && h == 3));
    return false;
}

namespace {

// shared plumbing for claim replays
struct Replay {
    FamilyBuild fb;
    Certificate cert;
    const IntLattice& L;
    const PolarizedLattice& P;

    explicit Replay(const std::string& id, const LatticeFamilyParams& p)
        : fb(build_family_checked(p)), L(fb.P.lattice()), P(fb.P) {
        cert.claim_id = "Claim" + id;
        cert.params = p;
        cert.add(CertNode::subcertificate("family polarization validated", fb.polarization));
    }

    DivisorClass cl(std::initializer_list<long long> cs) const {
        DivisorClass x;
        for (long long c : cs) x.coords.emplace_back(c);
        if (x.rank() != static_cast<size_t>(L.rank()))
            throw std::logic_error("replay: coordinate arity mismatch");
        return x;
    }

    LinearSystemProfile classify_step(const DivisorClass& x, Verdict expected,
                                      const std::optional<ExternalFact>& nef_assumption = {}) {
        LinearSystemProfile pr = classify_linear_system(P, x, nef_assumption);
        CertNode n = CertNode::subcertificate(
            L.class_name(x) + ": expected " + to_string(expected) + ", classified " +
                to_string(pr.verdict) + (pr.blocking.empty() ? "" : " (" + pr.blocking + ")"),
            pr.evidence);
        n.ok = pr.verdict == expected && !pr.evidence.failed();
        cert.add(std::move(n));
        return pr;
    }

    void contracted_exactly(const LinearSystemProfile& pr, const std::vector<DivisorClass>& want) {
        std::vector<DivisorClass> got = pr.contracted;
        std::vector<DivisorClass> expect = want;
        std::sort(got.begin(), got.end());
        std::sort(expect.begin(), expect.end());
        std::vector<std::string> names;
        for (const auto& z : got) names.push_back(L.class_name(z));
        cert.add(CertNode::finding(L.class_name(pr.cls) + " contracts exactly the listed classes",
                                   names, got == expect));
    }

    void effective_step(const DivisorClass& x) {
        const Int x2 = pair(L, x, x);
        const Int deg = pair(L, x, P.ample());
        const bool ok = is_effective(P, x) == Effectivity::Effective;
        cert.add(CertNode::inequality(L.class_name(x) + " is effective (x^2 = " + x2.str() +
                                          " >= -2 and the degree is positive)",
                                      deg, ">=", Int(1), ok));
    }

    IrreducibilityCheck irreducible_step(const DivisorClass& x, bool expect_certified) {
        IrreducibilityCheck irr = certify_irreducible(P, x);
        CertNode n = CertNode::subcertificate(
            L.class_name(x) + " irreducibility: " +
                (irr.status == IrrStatus::CertifiedIrreducible ? "certified by exhaustion"
                                                               : "decomposition witnesses exist"),
            irr.evidence);
        if (expect_certified) n.ok = irr.status == IrrStatus::CertifiedIrreducible;
        else n.ok = true;  // caller supplies the covering argument
        cert.add(std::move(n));
        return irr;
    }

    void decomposition_step(const std::string& label, const DivisorClass& sum,
                            std::array<DivisorClass, 3> A,
                            std::array<LinearSystemProfile, 3> profs) {
        DecompositionCase dc{sum, std::move(A), std::move(profs)};
        cert.add(CertNode::subcertificate(label, validate_decomposition(P, dc)));
    }
};

Certificate claim_3_6(const LatticeFamilyParams& p) {
    Replay r("3.6", p);
    const bool cover = p.h == 3;
    const auto D = r.cl({1, 0}), Lc = r.cl({0, 1}), DmL = r.cl({1, -1}), H = r.cl({2, -1});
    auto prD = r.classify_step(D, Verdict::VeryAmple);
    r.effective_step(Lc);
    r.irreducible_step(Lc, true);
    auto prA3 = r.classify_step(DmL, cover ? Verdict::DoubleCoverP2 : Verdict::VeryAmple);
    auto prH = r.classify_step(H, Verdict::VeryAmple);
    r.decomposition_step("decomposition 2H = H + D + (D-L)", r.cl({4, -2}), {H, D, DmL},
                         {prH, prD, prA3});
    return r.cert;
}

Certificate claim_3_7(const LatticeFamilyParams& p) {
    Replay r("3.7", p);
    const bool cover = p.h == 1;
    const auto D = r.cl({1, 0}), Lc = r.cl({0, 1}), DpL = r.cl({1, 1}), H = r.cl({2, 1});
    auto prD = r.classify_step(D, cover ? Verdict::DoubleCoverP2 : Verdict::VeryAmple);
    r.effective_step(Lc);
    r.irreducible_step(Lc, true);
    auto prA3 = r.classify_step(DpL, Verdict::BirationalContracting);
    r.contracted_exactly(prA3, {Lc});
    auto prH = r.classify_step(H, Verdict::VeryAmple);
    r.decomposition_step("decomposition 2H = H + D + (D+L)", r.cl({4, 2}), {H, D, DpL},
                         {prH, prD, prA3});
    return r.cert;
}

Certificate claim_3_8(const LatticeFamilyParams& p) {
    Replay r("3.8", p);
    const auto D = r.cl({1, 0, 0}), Rc = r.cl({0, 0, 1});
    const auto A3 = r.cl({1, -1, 1}), H = r.cl({2, -1, 1});
    auto prD = r.classify_step(D, Verdict::VeryAmple);
    if (p.h == 6) {
        // the one degree where the index argument on (D, L, F) degenerates;
        // the isotropic degree-2 configuration is excluded geometrically, and
        // its arithmetic shadow is checked below (the direct enumeration above
        // is independently empty)
        CertNode n = CertNode::external_assumption(
            "isotropic F with F.D = 2, F.L = 1 is excluded by the scroll geometry of the "
            "degree-6 model",
            "such an F moving on the surface would force D = 5F + 2L",
            "geometric argument on the rational normal scroll; not decidable from the "
            "intersection lattice");
        const Int dr = pair(r.L, D, Rc);
        n.children.push_back(CertNode::divisibility(
            "D = 5F + 2L would give 5(F.R) = D.R with L.R = 0", Int(5), dr, dr % 5 != 0));
        r.cert.add(std::move(n));
    }
    r.effective_step(Rc);
    r.irreducible_step(Rc, true);
    auto prA3 = r.classify_step(A3, Verdict::BirationalContracting);
    r.contracted_exactly(prA3, {Rc});
    auto prH = r.classify_step(H, Verdict::VeryAmple);
    r.decomposition_step("decomposition 2H = H + D + (D-L+R)", r.cl({4, -2, 2}), {H, D, A3},
                         {prH, prD, prA3});
    return r.cert;
}

Certificate claim_3_9(const LatticeFamilyParams& p) {
    Replay r("3.9", p);
    const auto D = r.cl({1, 0, 0}), Lc = r.cl({0, 1, 0}), Rc = r.cl({0, 0, 1});
    const auto DpL = r.cl({1, 1, 0}), DpR = r.cl({1, 0, 1}), H = r.cl({2, 1, 1});
    r.effective_step(Lc);
    r.irreducible_step(Lc, true);
    r.effective_step(Rc);
    r.irreducible_step(Rc, true);
    auto prH = r.classify_step(H, Verdict::VeryAmple);
    auto prA2 = r.classify_step(DpL, Verdict::BirationalContracting);
    r.contracted_exactly(prA2, {Lc});
    auto prA3 = r.classify_step(DpR, Verdict::BirationalContracting);
    r.contracted_exactly(prA3, {Rc});
    r.decomposition_step("decomposition 2H = H + (D+L) + (D+R)", r.cl({4, 2, 2}), {H, DpL, DpR},
                         {prH, prA2, prA3});
    return r.cert;
}

Certificate claim_3_10(const LatticeFamilyParams& p) {
    Replay r("3.10", p);
    const auto D = r.cl({1, 0}), Lc = r.cl({0, 1}), H = r.cl({1, 1});
    auto prD = r.classify_step(D, Verdict::VeryAmple);
    auto prL = r.classify_step(Lc, Verdict::DoubleCoverP2);
    auto prH = r.classify_step(H, Verdict::VeryAmple);
    r.decomposition_step("decomposition 2H = H + D + L", r.cl({2, 2}), {H, D, Lc},
                         {prH, prD, prL});
    return r.cert;
}

Certificate claim_3_11(const LatticeFamilyParams& p) {
    Replay r("3.11", p);
    const auto D = r.cl({1, 0, 0}), Lc = r.cl({0, 1, 0}), Rc = r.cl({0, 0, 1});
    const auto H = r.cl({1, 1, 0});
    auto prD = r.classify_step(D, Verdict::DoubleCoverP2);
    r.effective_step(Rc);
    r.irreducible_step(Rc, true);
    r.effective_step(Lc - Rc);

    // the lattice admits genuine decomposition witnesses for L; the covering
    // argument is geometric and enters as an assumption with its arithmetic
    // consequences replayed
    IrreducibilityCheck irrL = r.irreducible_step(Lc, false);
    {
        CertNode fixed = CertNode::external_assumption(
            "R is not a fixed component of |L|",
            "the linear system of L is 3-dimensional while that of L-R is a point, so a "
            "member avoiding R exists",
            "section count on the double plane; not decidable from the intersection lattice");
        r.cert.add(std::move(fixed));
        CertNode dim = CertNode::external_assumption(
            "any splitting of such a member has both parts rational of self-intersection -2",
            "each part has degree 2 and moves in a 2-dimensional series cut out by |D|",
            "linear-system dimension argument; not decidable from the intersection lattice");
        const Int disc = discriminant(r.L);
        auto div_case = [&](const std::string& what, Int sub) {
            dim.children.push_back(CertNode::divisibility(what, disc, sub, sub % disc != 0));
        };
        div_case("degree-1 part with R-pairing 0: disc(D,L1,R) = 18", Int(18));
        div_case("degree-1 part with R-pairing 1: disc(D,L1,R) = 20", Int(20));
        div_case("rational parts with R-pairing 0: disc(D,L1,R) = 24", Int(24));
        r.cert.add(std::move(dim));
        r.cert.add(CertNode::finding(
            "every lattice witness is covered by the assumptions above",
            {}, irrL.status != IrrStatus::Unknown));
    }

    auto prL = r.classify_step(Lc, Verdict::DoubleCoverP2);
    auto prH = r.classify_step(H, Verdict::VeryAmple);
    r.decomposition_step("decomposition 2H = H + D + L", r.cl({2, 2, 0}), {H, D, Lc},
                         {prH, prD, prL});
    return r.cert;
}

Certificate claim_3_12(const LatticeFamilyParams& p) {
    Replay r("3.12", p);
    const bool cover = p.j == 1;
    const auto D = r.cl({1, 0}), Lc = r.cl({0, 1});
    const auto H1 = r.cl({2, 1}), H2 = r.cl({1, 2});
    auto prD = r.classify_step(D, Verdict::VeryAmple);
    r.effective_step(Lc);
    if (p.h == 2) {
        r.cert.add(CertNode::external_assumption(
            "L may be taken irreducible and base point free",
            "on a smooth quartic model a curve class of this degree and genus has an "
            "irreducible base-point-free representative",
            "Mori, Nagoya Math. J. 96 (1984); the exhaustive decomposition search below "
            "confirms the lattice finds no splitting either"));
        r.irreducible_step(Lc, false);
    } else {
        r.effective_step(D - Lc);  // the line class of the degree-6 model
        r.irreducible_step(Lc, true);
    }
    auto prL = r.classify_step(Lc, cover ? Verdict::DoubleCoverP2 : Verdict::VeryAmple);
    auto prH1 = r.classify_step(H1, Verdict::VeryAmple);
    auto prH2 = r.classify_step(H2, Verdict::VeryAmple);
    (void)prH2;
    r.decomposition_step("decomposition (2D+L) = D + D + L", H1, {D, D, Lc}, {prD, prD, prL});
    r.decomposition_step("decomposition (D+2L) = D + L + L", H2, {D, Lc, Lc}, {prD, prL, prL});
    return r.cert;
}

} // namespace

Certificate verify_claim(const std::string& raw, const LatticeFamilyParams& p) {
    const std::string id = normalize_claim_id(raw);
    if (id.empty()) throw std::invalid_argument("unknown claim id: " + raw);
    if (!claim_accepts(id, p))
        throw std::invalid_argument("claim " + id + " does not cover " + family_name(p));
    if (id == "3.3") return build_family_checked(p).polarization;
    if (id == "3.6") return claim_3_6(p);
    if (id == "3.7") return claim_3_7(p);
    if (id == "3.8") return claim_3_8(p);
    if (id == "3.9") return claim_3_9(p);
    if (id == "3.10") return claim_3_10(p);
    if (id == "3.11") return claim_3_11(p);
    return claim_3_12(p);
}

std::vector<std::pair<std::string, LatticeFamilyParams>> claim_suite(const Int& h_max,
                                                                     const Int& k_max) {
    std::vector<std::pair<std::string, LatticeFamilyParams>> out;
    auto add = [&](const char* id, FamilyShape s, Int j, Int k, Int h) {
        out.emplace_back(id, LatticeFamilyParams{s, std::move(j), std::move(k), std::move(h)});
    };
    for (Int h = 3; h <= h_max; ++h) add("3.6", FamilyShape::Rank2, -1, 1, h);
    for (Int h = 1; h <= h_max; ++h) add("3.7", FamilyShape::Rank2, -1, 2, h);
    for (Int h = 3; h <= h_max; ++h) add("3.8", FamilyShape::Rank3, 0, 1, h);
    for (Int h = 1; h <= h_max; ++h) add("3.9", FamilyShape::Rank3, 0, 2, h);
    add("3.10", FamilyShape::Rank2, 1, 5, 2);
    add("3.11", FamilyShape::Rank3, 1, 4, 1);
    for (Int j = 1; j <= 2; ++j)
        for (Int k = j + 4; k <= k_max; ++k) add("3.12", FamilyShape::Rank2, j, k, 2);
    add("3.12", FamilyShape::Rank2, 1, 5, 3);
    return out;
}

// ---------------------------------------------------------------------------
// table reproduction
// ---------------------------------------------------------------------------

namespace {

struct RowTask {
    int row;
    int i;
    LatticeFamilyParams params;
};

std::vector<RowTask> table_instances(const Int& h_max, const Int& k_max) {
    std::vector<RowTask> out;
    auto add = [&](int row, int i, FamilyShape s, Int j, Int k, Int h) {
        out.push_back({row, i, LatticeFamilyParams{s, std::move(j), std::move(k), std::move(h)}});
    };
    for (Int j = 1; j <= 2; ++j)
        for (Int k = j + 4; k <= k_max; ++k) add(1, 1, FamilyShape::Rank2, j, k, 2);
    for (Int k = 5; k <= 7; ++k) add(2, 1, FamilyShape::Rank2, 1, k, 2);
    add(3, 1, FamilyShape::Rank2, 1, 5, 3);
    for (Int h = 3; h <= h_max; ++h) add(4, 2, FamilyShape::Rank2, -1, 1, h);
    for (Int h = 1; h <= h_max; ++h) add(5, 2, FamilyShape::Rank2, -1, 2, h);
    for (Int h = 3; h <= h_max; ++h) add(6, 2, FamilyShape::Rank3, 0, 1, h);
    for (Int h = 1; h <= h_max; ++h) add(7, 2, FamilyShape::Rank3, 0, 2, h);
    add(8, 2, FamilyShape::Rank2, 1, 5, 2);
    add(9, 2, FamilyShape::Rank3, 1, 4, 1);
    return out;
}

struct RowPlan {
    std::vector<long long> H;
    std::array<std::vector<long long>, 3> A;
    std::string disc_formula, genus_formula;
    std::function<Int(const Int&, const Int&, const Int&)> disc_value, genus_value;
    std::function<std::array<Verdict, 3>(const Int& h, const Int& j)> verdicts;
    // which A entries are birational, and onto which basis label they contract
    std::array<const char*, 3> contracts = {nullptr, nullptr, nullptr};
};

RowPlan row_plan(int row) {
    auto V = [](Verdict a, Verdict b, Verdict c) { return std::array<Verdict, 3>{a, b, c}; };
    const Verdict VA = Verdict::VeryAmple, DC = Verdict::DoubleCoverP2,
                  BC = Verdict::BirationalContracting;
    RowPlan r;
    switch (row) {
        case 1:
            r = {{2, 1}, {{{1, 0}, {1, 0}, {0, 1}}}, "8j-k^2", "2k+j+9",
                 [](const Int& j, const Int& k, const Int&) { return 8 * j - k * k; },
                 [](const Int& j, const Int& k, const Int&) { return 2 * k + j + 9; },
                 [V, VA, DC](const Int&, const Int& j) { return V(VA, VA, j == 1 ? DC : VA); }};
            break;
        case 2:
            r = {{1, 2}, {{{1, 0}, {0, 1}, {0, 1}}}, "8-k^2", "2k+7",
                 [](const Int&, const Int& k, const Int&) { return 8 - k * k; },
                 [](const Int&, const Int& k, const Int&) { return 2 * k + 7; },
                 [V, VA, DC](const Int&, const Int&) { return V(VA, DC, DC); }};
            break;
        case 3:
            r = {{1, 2}, {{{1, 0}, {0, 1}, {0, 1}}}, "-13", "18",
                 [](const Int&, const Int&, const Int&) { return Int(-13); },
                 [](const Int&, const Int&, const Int&) { return Int(18); },
                 [V, VA, DC](const Int&, const Int&) { return V(VA, DC, DC); }};
            break;
        case 4:
            r = {{2, -1}, {{{2, -1}, {1, 0}, {1, -1}}}, "-4h-1", "4h-2",
                 [](const Int&, const Int&, const Int& h) { return -4 * h - 1; },
                 [](const Int&, const Int&, const Int& h) { return 4 * h - 2; },
                 [V, VA, DC](const Int& h, const Int&) { return V(VA, VA, h == 3 ? DC : VA); }};
            break;
        case 5:
            r = {{2, 1}, {{{2, 1}, {1, 0}, {1, 1}}}, "-4h-4", "4h+4",
                 [](const Int&, const Int&, const Int& h) { return -4 * h - 4; },
                 [](const Int&, const Int&, const Int& h) { return 4 * h + 4; },
                 [V, VA, DC, BC](const Int& h, const Int&) {
                     return V(VA, h == 1 ? DC : VA, BC);
                 }};
            r.contracts = {nullptr, nullptr, "L"};
            break;
        case 6:
            r = {{2, -1, 1}, {{{2, -1, 1}, {1, 0, 0}, {1, -1, 1}}}, "8h+10", "4h+1",
                 [](const Int&, const Int&, const Int& h) { return 8 * h + 10; },
                 [](const Int&, const Int&, const Int& h) { return 4 * h + 1; },
                 [V, VA, BC](const Int&, const Int&) { return V(VA, VA, BC); }};
            r.contracts = {nullptr, nullptr, "R"};
            break;
        case 7:
            r = {{2, 1, 1}, {{{2, 1, 1}, {1, 1, 0}, {1, 0, 1}}}, "8h+16", "4h+7",
                 [](const Int&, const Int&, const Int& h) { return 8 * h + 16; },
                 [](const Int&, const Int&, const Int& h) { return 4 * h + 7; },
                 [V, VA, BC](const Int&, const Int&) { return V(VA, BC, BC); }};
            r.contracts = {nullptr, "L", "R"};
            break;
        case 8:
            r = {{1, 1}, {{{1, 1}, {1, 0}, {0, 1}}}, "-17", "9",
                 [](const Int&, const Int&, const Int&) { return Int(-17); },
                 [](const Int&, const Int&, const Int&) { return Int(9); },
                 [V, VA, DC](const Int&, const Int&) { return V(VA, VA, DC); }};
            break;
        case 9:
            r = {{1, 1, 0}, {{{1, 1, 0}, {1, 0, 0}, {0, 1, 0}}}, "30", "7",
                 [](const Int&, const Int&, const Int&) { return Int(30); },
                 [](const Int&, const Int&, const Int&) { return Int(7); },
                 [V, VA, DC](const Int&, const Int&) { return V(VA, DC, DC); }};
            break;
        default:
            throw std::logic_error("row_plan: no such row");
    }
    return r;
}

DivisorClass to_class(const std::vector<long long>& cs) {
    DivisorClass x;
    for (long long c : cs) x.coords.emplace_back(c);
    return x;
}

TableVerification verify_row(const RowTask& t) {
    const RowPlan plan = row_plan(t.row);
    FamilyBuild fb = build_family_checked(t.params);
    const IntLattice& L = fb.P.lattice();
    const PolarizedLattice& P = fb.P;

    TableVerification out;
    TableRow& row = out.row;
    row.row = t.row;
    row.i = t.i;
    row.params = t.params;
    row.rank = L.rank();
    row.H = to_class(plan.H);
    row.H_name = L.class_name(row.H);
    row.disc = discriminant(L);
    row.disc_formula = plan.disc_formula;
    row.disc_formula_value = plan.disc_value(t.params.j, t.params.k, t.params.h);
    row.genus_value = genus(P, row.H);
    row.genus_formula = plan.genus_formula;
    row.genus_formula_value = plan.genus_value(t.params.j, t.params.k, t.params.h);
    for (size_t a = 0; a < 3; ++a) {
        row.A[a] = to_class(plan.A[a]);
        row.A_names[a] = L.class_name(row.A[a]);
    }

    Certificate& cert = out.cert;
    cert.claim_id = "Row" + std::to_string(t.row);
    cert.params = t.params;
    cert.add(CertNode::subcertificate("family polarization validated", fb.polarization));
    cert.add(CertNode::inequality("disc column: computed " + row.disc.str() + " vs formula " +
                                      row.disc_formula,
                                  row.disc, "=", row.disc_formula_value,
                                  row.disc == row.disc_formula_value));
    cert.add(CertNode::inequality("genus column: computed " + row.genus_value.str() +
                                      " vs formula " + row.genus_formula,
                                  row.genus_value, "=", row.genus_formula_value,
                                  row.genus_value == row.genus_formula_value));
    cert.add(CertNode::finding("H = " + row.H_name + " is indivisible", {},
                               is_indivisible(P, row.H)));

    const auto expected = plan.verdicts(t.params.h, t.params.j);
    std::array<LinearSystemProfile, 3> profs;
    std::vector<std::pair<DivisorClass, LinearSystemProfile>> cache;
    auto classify_cached = [&](const DivisorClass& x, Verdict want) {
        for (const auto& [c, pr] : cache)
            if (c == x) return pr;
        LinearSystemProfile pr = classify_linear_system(P, x);
        CertNode n = CertNode::subcertificate(L.class_name(x) + ": expected " + to_string(want) +
                                                  ", classified " + to_string(pr.verdict),
                                              pr.evidence);
        n.ok = pr.verdict == want && !pr.evidence.failed();
        cert.add(std::move(n));
        cache.emplace_back(x, pr);
        return pr;
    };

    // the polarization of the row must itself embed
    classify_cached(row.H, Verdict::VeryAmple);
    for (size_t a = 0; a < 3; ++a) {
        profs[a] = classify_cached(row.A[a], expected[a]);
        if (plan.contracts[a]) {
            const DivisorClass Z = *L.basis_class(plan.contracts[a]);
            std::vector<std::string> names;
            for (const auto& z : profs[a].contracted) names.push_back(L.class_name(z));
            cert.add(CertNode::finding(row.A_names[a] + " contracts exactly " + plan.contracts[a],
                                       names,
                                       profs[a].contracted == std::vector<DivisorClass>{Z}));
        }
    }

    DivisorClass sum = row.H;
    if (t.i == 2) sum = Int(2) * row.H;
    DecompositionCase dc{sum, row.A, profs};
    cert.add(CertNode::subcertificate("three-bundle decomposition hypotheses",
                                      validate_decomposition(P, dc)));
    return out;
}

} // namespace

std::vector<TableVerification> verify_table(const Int& h_max, const Int& k_max, int jobs) {
    const std::vector<RowTask> tasks = table_instances(h_max, k_max);
    std::vector<TableVerification> out(tasks.size());
    std::vector<std::exception_ptr> errs(tasks.size());

    if (jobs < 1) jobs = 1;
    const size_t workers = std::min<size_t>(static_cast<size_t>(jobs), tasks.size());
    if (workers <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) out[i] = verify_row(tasks[i]);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
                try {
                    out[i] = verify_row(tasks[i]);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace k3lat
