#include "test_util.hpp"

#include <doctest.h>

using namespace k3lat;
using testutil::cl;

namespace {

PolarizedLattice polarized(const LatticeFamilyParams& p) { return build_family(p); }

} // namespace

TEST_CASE("polarization validation") {
    // gram diag(2, -2) has the root (0, 1) orthogonal to (1, 0)
    IntLattice L = IntLattice::create({"D", "E"}, {{Int(2), Int(0)}, {Int(0), Int(-2)}});
    CHECK_THROWS_AS(PolarizedLattice::validate(L, cl({1, 0})), std::invalid_argument);
    CHECK_THROWS_AS(PolarizedLattice::validate(family_lattice(testutil::rank2(-1, 2, 1)),
                                               cl({0, 1})),
                    std::invalid_argument);  // candidate with negative square
    PolarizedLattice P = polarized(testutil::rank2(1, 5, 2));
    // construction invariant re-check
    CHECK(enumerate_classes(P, testutil::root_query(P.ample())).solutions.empty());
}

TEST_CASE("genus") {
    PolarizedLattice P141 = polarized(testutil::rank3(1, 4, 1));
    CHECK(genus(P141, cl({1, 1, 0})) == 7);
    for (long long h = 3; h <= 10; ++h) {
        PolarizedLattice P = polarized(testutil::rank2(-1, 1, h));
        CHECK(genus(P, cl({2, -1})) == 4 * h - 2);
    }
    PolarizedLattice P = polarized(testutil::rank2(-1, 2, 1));
    CHECK(genus(P, cl({1, 0})) == 2);  // D^2 = 2

    // algebraic identity g(iH) = i^2 (g-1) + 1
    const DivisorClass H = cl({1, 1, 0});
    const Int g = genus(P141, H);
    for (long long i = 1; i <= 3; ++i)
        CHECK(genus(P141, Int(i) * H) == i * i * (g - 1) + 1);
}

TEST_CASE("effectivity via the Riemann-Roch sign") {
    PolarizedLattice P = polarized(testutil::rank2(-1, 2, 3));
    CHECK(is_effective(P, cl({0, 1})) == Effectivity::Effective);    // L^2=-2, L.D=2
    CHECK(is_effective(P, -P.ample()) == Effectivity::NotEffective);
    CHECK(is_effective(P, cl({0, 0})) == Effectivity::NotEffective);

    PolarizedLattice P141 = polarized(testutil::rank3(1, 4, 1));
    CHECK(is_effective(P141, cl({0, 1, -1})) == Effectivity::Effective);  // L-R
    CHECK(is_effective(P141, cl({1, -1, 0})) == Effectivity::Unknown);    // (D-L)^2 = -4
}

TEST_CASE("nef certification") {
    PolarizedLattice P = polarized(testutil::rank2(-1, 1, 3));
    CHECK(is_nef(P, P.ample()).status == NefStatus::NefCertified);
    CHECK(is_nef(P, cl({1, -1})).status == NefStatus::NefCertified);

    PolarizedLattice P013 = polarized(testutil::rank3(0, 1, 3));
    CHECK(is_nef(P013, cl({1, -1, 1})).status == NefStatus::NefCertified);

    // not nef: D+2L in the (j=-1, k=2, h=1) family, L is a violating root
    PolarizedLattice P121 = polarized(testutil::rank2(-1, 2, 1));
    NefCheck bad = is_nef(P121, cl({1, 2}));
    CHECK(bad.status == NefStatus::NotNef);
    REQUIRE(!bad.search.solutions.empty());

    // outside the positive cone the check is Unknown
    CHECK(is_nef(P121, cl({0, 1})).status == NefStatus::Unknown);
}

TEST_CASE("classification ladder: golden verdicts") {
    PolarizedLattice P113 = polarized(testutil::rank2(-1, 1, 3));
    CHECK(classify_linear_system(P113, cl({1, -1})).verdict == Verdict::DoubleCoverP2);
    CHECK(classify_linear_system(P113, cl({1, 0})).verdict == Verdict::VeryAmple);

    PolarizedLattice P122 = polarized(testutil::rank2(-1, 2, 2));
    LinearSystemProfile pr = classify_linear_system(P122, cl({1, 1}));
    CHECK(pr.verdict == Verdict::BirationalContracting);
    REQUIRE(pr.contracted.size() == 1);
    CHECK(pr.contracted[0] == cl({0, 1}));

    PolarizedLattice P141 = polarized(testutil::rank3(1, 4, 1));
    CHECK(classify_linear_system(P141, cl({1, 1, 0})).verdict == Verdict::VeryAmple);
    CHECK(classify_linear_system(P141, cl({1, 0, 0})).verdict == Verdict::DoubleCoverP2);

    CHECK_THROWS_AS(classify_linear_system(P141, cl({0, 0, 1})), std::invalid_argument);
}

TEST_CASE("classification ladder: divisible classes") {
    PolarizedLattice P113 = polarized(testutil::rank2(-1, 1, 3));
    LinearSystemProfile pr = classify_linear_system(P113, cl({2, 0}));
    CHECK(pr.verdict == Verdict::Unknown);  // 2D with D^2 = 6

    // a Veronese class: 2B with B^2 = 2
    IntLattice L = IntLattice::create({"B"}, {{Int(2)}});
    PolarizedLattice P = PolarizedLattice::validate(L, cl({1}));
    LinearSystemProfile v = classify_linear_system(P, cl({2}));
    CHECK(v.verdict == Verdict::DoubleCoverVeronese);
    REQUIRE(v.half);
    CHECK(*v.half == cl({1}));
}

TEST_CASE("classification ladder: not nef is reported with a witness") {
    PolarizedLattice P121 = polarized(testutil::rank2(-1, 2, 1));
    LinearSystemProfile pr = classify_linear_system(P121, cl({1, 2}));
    CHECK(pr.verdict == Verdict::NotNefCertified);
    CHECK(pr.evidence.failed());
}

TEST_CASE("very ample verdicts imply empty contracted-root searches") {
    // soundness cross-check on a spread of classified classes
    std::vector<std::pair<LatticeFamilyParams, DivisorClass>> cases = {
        {testutil::rank2(-1, 1, 5), cl({1, -1})},
        {testutil::rank2(1, 5, 2), cl({1, 1})},
        {testutil::rank3(0, 2, 3), cl({2, 1, 1})},
        {testutil::rank3(1, 4, 1), cl({1, 1, 0})},
    };
    for (const auto& [p, x] : cases) {
        PolarizedLattice P = polarized(p);
        LinearSystemProfile pr = classify_linear_system(P, x);
        REQUIRE(pr.verdict == Verdict::VeryAmple);
        ClassQuery q = testutil::root_query(x);
        q.pairings.push_back(PairingConstraint::ge(P.ample(), Int(1)));
        CHECK(enumerate_classes(P, q).solutions.empty());
        CHECK(pr.evidence.status == CertStatus::Verified);
    }
}

TEST_CASE("irreducibility certification") {
    PolarizedLattice P121 = polarized(testutil::rank2(-1, 2, 1));
    CHECK(certify_irreducible(P121, cl({0, 1})).status == IrrStatus::CertifiedIrreducible);

    // degree 1 cannot split
    PolarizedLattice P115 = polarized(testutil::rank2(-1, 1, 5));
    CHECK(certify_irreducible(P115, cl({0, 1})).status == IrrStatus::CertifiedIrreducible);

    PolarizedLattice P141 = polarized(testutil::rank3(1, 4, 1));
    CHECK(certify_irreducible(P141, cl({0, 0, 1})).status == IrrStatus::CertifiedIrreducible);

    // L = R + (L-R) is a genuine lattice witness in this family
    IrreducibilityCheck irr = certify_irreducible(P141, cl({0, 1, 0}));
    CHECK(irr.status == IrrStatus::DecompositionExists);
    REQUIRE(irr.witnesses.size() == 1);
    std::vector<DivisorClass> w = irr.witnesses[0];
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<DivisorClass>{cl({0, 0, 1}), cl({0, 1, -1})});

    CHECK_THROWS_AS(certify_irreducible(P141, -P141.ample()), std::invalid_argument);
}

TEST_CASE("decomposition validation reproduces the catalogued inequality values") {
    // rank-2 family (j=-1, k=1, h=3): triple (H, D, D-L) against 2H = 4D-2L
    PolarizedLattice P = polarized(testutil::rank2(-1, 1, 3));
    auto prH = classify_linear_system(P, cl({2, -1}));
    auto prD = classify_linear_system(P, cl({1, 0}));
    auto prA3 = classify_linear_system(P, cl({1, -1}));
    REQUIRE(prA3.verdict == Verdict::DoubleCoverP2);
    DecompositionCase dc{cl({4, -2}), {cl({2, -1}), cl({1, 0}), cl({1, -1})}, {prH, prD, prA3}};
    Certificate cert = validate_decomposition(P, dc);
    CHECK(cert.status == CertStatus::Verified);
    bool saw14 = false;
    cert.visit([&](const CertNode& n) {
        if (n.kind == CertNode::Kind::InequalityChecked && n.lhs && *n.lhs == 14 && n.rhs &&
            *n.rhs == 9)
            saw14 = true;
    });
    CHECK(saw14);

    // rank-3 family (j=0, k=2, h=1): both contracted curves meet 2H in 4
    PolarizedLattice P7 = polarized(testutil::rank3(0, 2, 1));
    auto prH7 = classify_linear_system(P7, cl({2, 1, 1}));
    auto prA2 = classify_linear_system(P7, cl({1, 1, 0}));
    auto prA3b = classify_linear_system(P7, cl({1, 0, 1}));
    DecompositionCase dc7{cl({4, 2, 2}),
                          {cl({2, 1, 1}), cl({1, 1, 0}), cl({1, 0, 1})},
                          {prH7, prA2, prA3b}};
    Certificate cert7 = validate_decomposition(P7, dc7);
    CHECK(cert7.status == CertStatus::Verified);
    int fours = 0;
    cert7.visit([&](const CertNode& n) {
        if (n.kind == CertNode::Kind::InequalityChecked && n.lhs && *n.lhs == 4 && n.rhs &&
            *n.rhs == 3)
            ++fours;
    });
    CHECK(fours == 2);
}

TEST_CASE("decomposition validation: three very ample summands, and failures") {
    IntLattice L = IntLattice::create({"A"}, {{Int(4)}});
    PolarizedLattice P = PolarizedLattice::validate(L, cl({1}));
    auto pr = classify_linear_system(P, cl({1}));
    REQUIRE(pr.verdict == Verdict::VeryAmple);
    DecompositionCase good{cl({3}), {cl({1}), cl({1}), cl({1})}, {pr, pr, pr}};
    CHECK(validate_decomposition(P, good).status == CertStatus::Verified);

    DecompositionCase bad{cl({4}), {cl({1}), cl({1}), cl({1})}, {pr, pr, pr}};
    CHECK(validate_decomposition(P, bad).status == CertStatus::Failed);  // sum mismatch

    // an A1 that is not very ample fails the hypothesis
    PolarizedLattice P113 = polarized(testutil::rank2(-1, 1, 3));
    auto cover = classify_linear_system(P113, cl({1, -1}));
    auto va = classify_linear_system(P113, cl({1, 0}));
    DecompositionCase swap{cl({3, -1}), {cl({1, -1}), cl({1, 0}), cl({1, 0})}, {cover, va, va}};
    CHECK(validate_decomposition(P113, swap).status == CertStatus::Failed);
}

TEST_CASE("indivisibility") {
    PolarizedLattice P = polarized(testutil::rank2(-1, 2, 2));
    CHECK(is_indivisible(P, cl({2, 1})));
    CHECK(!is_indivisible(P, cl({2, 0})));
    PolarizedLattice P7 = polarized(testutil::rank3(0, 2, 1));
    CHECK(is_indivisible(P7, cl({2, 1, 1})));
}
