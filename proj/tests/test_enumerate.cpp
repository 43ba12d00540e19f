#include "test_util.hpp"

#include <doctest.h>

using namespace k3lat;
using testutil::cl;
using testutil::root_query;

TEST_CASE("orthogonal-root searches on the families are empty") {
    IntLattice G = family_lattice(testutil::rank2(-1, 1, 5));
    EnumerationResult r = enumerate_classes(G, root_query(cl({1, 0})));
    CHECK(r.solutions.empty());
    CHECK(r.stats.nodes > 0);

    IntLattice G152 = family_lattice(testutil::rank2(1, 5, 2));
    CHECK(enumerate_classes(G152, root_query(cl({1, 0}))).solutions.empty());
    // brute-force confirmation over the documented box
    CHECK(oracle_enumerate(G152, root_query(cl({1, 0})), Int(50)).solutions.empty());

    IntLattice G013 = family_lattice(testutil::rank3(0, 1, 3));
    CHECK(oracle_enumerate(G013, root_query(cl({1, 0, 0})), Int(30)).solutions.empty());
}

TEST_CASE("rank-1 enumeration") {
    IntLattice L = IntLattice::create({"A"}, {{Int(2)}});
    ClassQuery q;
    q.self_intersection = Int(2);
    q.pairings.push_back(PairingConstraint::eq(cl({1}), Int(2)));
    EnumerationResult r = enumerate_classes(L, q);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0] == cl({1}));
}

TEST_CASE("oracle on a definite lattice") {
    IntLattice L = IntLattice::create({"a"}, {{Int(-2)}});
    ClassQuery q;
    q.self_intersection = Int(-2);
    EnumerationResult r = oracle_enumerate(L, q, Int(3));
    REQUIRE(r.solutions.size() == 2);
    CHECK(r.solutions[0] == cl({-1}));
    CHECK(r.solutions[1] == cl({1}));

    IntLattice M = IntLattice::create({"a", "b"}, {{Int(-2), Int(0)}, {Int(0), Int(-2)}});
    CHECK(oracle_enumerate(M, q, Int(3)).solutions.size() == 4);
}

TEST_CASE("finiteness is refused without a positive anchor") {
    IntLattice G = family_lattice(testutil::rank2(1, 5, 2));
    ClassQuery q;  // no self-intersection at all
    q.pairings.push_back(PairingConstraint::eq(cl({1, 0}), Int(0)));
    CHECK_THROWS_AS(enumerate_classes(G, q), finiteness_not_certified);

    ClassQuery q2;  // x^2 fixed but only an inequality constraint
    q2.self_intersection = Int(-2);
    q2.pairings.push_back(PairingConstraint::ge(cl({1, 0}), Int(1)));
    CHECK_THROWS_AS(enumerate_classes(G, q2), finiteness_not_certified);

    ClassQuery q3;  // anchored on a negative class
    q3.self_intersection = Int(-2);
    q3.pairings.push_back(PairingConstraint::eq(cl({0, 1}), Int(0)));
    CHECK_THROWS_AS(enumerate_classes(G, q3), finiteness_not_certified);
}

TEST_CASE("primitive_only and exclude filters") {
    IntLattice L = IntLattice::create({"D", "B"}, {{Int(2), Int(0)}, {Int(0), Int(-2)}});
    ClassQuery q;
    q.self_intersection = Int(0);
    q.pairings.push_back(PairingConstraint::eq(cl({1, 0}), Int(4)));
    EnumerationResult r = enumerate_classes(L, q);
    REQUIRE(r.solutions.size() == 2);  // (2, +-2)
    q.primitive_only = true;
    CHECK(enumerate_classes(L, q).solutions.empty());
    q.primitive_only = false;
    q.exclude.push_back(cl({2, 2}));
    EnumerationResult r2 = enumerate_classes(L, q);
    REQUIRE(r2.solutions.size() == 1);
    CHECK(r2.solutions[0] == cl({2, -2}));
}

TEST_CASE("roots violating nef on the catalogued cases") {
    IntLattice G = family_lattice(testutil::rank2(-1, 2, 2));
    CHECK(roots_violating_nef(G, cl({1, 0}), cl({1, 1})).solutions.empty());
    CHECK(roots_violating_nef(G, cl({1, 0}), cl({1, 0})).solutions.empty());

    IntLattice G021 = family_lattice(testutil::rank3(0, 2, 1));
    CHECK(roots_violating_nef(G021, cl({1, 0, 0}), cl({2, 1, 1})).solutions.empty());

    // a genuinely non-nef class: D+2L in the (j=-1, k=2, h=1) family
    IntLattice G121 = family_lattice(testutil::rank2(-1, 2, 1));
    EnumerationResult v = roots_violating_nef(G121, cl({1, 0}), cl({1, 2}));
    REQUIRE(!v.solutions.empty());
    CHECK(std::find(v.solutions.begin(), v.solutions.end(), cl({0, 1})) != v.solutions.end());

    CHECK_THROWS_AS(roots_violating_nef(G, cl({1, 0}), cl({0, 1})), anchor_not_positive);
}

namespace {

ClassQuery random_query(std::mt19937_64& rng, const IntLattice& L, const DivisorClass& W) {
    std::uniform_int_distribution<int> si(-4, 4);
    std::uniform_int_distribution<int> val(-12, 12);
    ClassQuery q;
    q.self_intersection = Int(2 * si(rng));
    q.pairings.push_back(PairingConstraint::eq(W, Int(val(rng))));
    return q;
}

DivisorClass random_positive_class(std::mt19937_64& rng, const IntLattice& L) {
    std::uniform_int_distribution<int> coord(-3, 3);
    while (true) {
        DivisorClass W;
        for (int i = 0; i < L.rank(); ++i) W.coords.emplace_back(coord(rng));
        if (!W.is_zero() && pair(L, W, W) > 0) return W;
    }
}

} // namespace

TEST_CASE("oracle equivalence on random hyperbolic lattices") {
    std::mt19937_64 rng(123456);
    int done = 0;
    while (done < 250) {
        const int n = 2 + (done % 2);
        IntLattice L = testutil::random_hyperbolic_lattice(rng, n);
        DivisorClass W = random_positive_class(rng, L);
        ClassQuery q = random_query(rng, L, W);
        EnumerationResult exact = enumerate_classes(L, q);
        const Int radius = exact.box_radius();
        const Int cap = n == 2 ? 40 : 18;
        if (radius > cap) continue;  // derived box must fit the oracle box
        EnumerationResult brute = oracle_enumerate(L, q, cap);
        CHECK(exact.solutions == brute.solutions);
        // post-hoc recheck by pure Gram arithmetic
        for (const auto& x : exact.solutions) {
            CHECK(pair(L, x, x) == *q.self_intersection);
            CHECK(pair(L, q.pairings[0].anchor, x) == q.pairings[0].value);
        }
        ++done;
    }
}

TEST_CASE("symmetry: zero-pairing queries are stable under negation") {
    std::mt19937_64 rng(98765);
    int done = 0;
    while (done < 60) {
        const int n = 2 + (done % 2);
        IntLattice L = testutil::random_hyperbolic_lattice(rng, n);
        DivisorClass W = random_positive_class(rng, L);
        ClassQuery q;
        std::uniform_int_distribution<int> si(-4, 0);
        q.self_intersection = Int(2 * si(rng));
        q.pairings.push_back(PairingConstraint::eq(W, Int(0)));
        EnumerationResult r = enumerate_classes(L, q);
        for (const auto& x : r.solutions)
            CHECK(std::find(r.solutions.begin(), r.solutions.end(), -x) != r.solutions.end());
        ++done;
    }
}

TEST_CASE("range-anchored queries agree with the oracle") {
    std::mt19937_64 rng(5150);
    int done = 0;
    while (done < 60) {
        const int n = 2 + (done % 2);
        IntLattice L = testutil::random_hyperbolic_lattice(rng, n);
        DivisorClass W = random_positive_class(rng, L);
        std::uniform_int_distribution<int> si(-3, 3);
        std::uniform_int_distribution<int> lo(-6, 4);
        ClassQuery q;
        q.self_intersection = Int(2 * si(rng));
        const int l = lo(rng);
        q.pairings.push_back(PairingConstraint::range(W, Int(l), Int(l + 3)));
        EnumerationResult exact = enumerate_classes(L, q);
        if (exact.box_radius() > 18) continue;
        EnumerationResult brute = oracle_enumerate(L, q, Int(18));
        CHECK(exact.solutions == brute.solutions);
        ++done;
    }
}

TEST_CASE("derived nef bound is sound against the oracle") {
    std::mt19937_64 rng(4242);
    int done = 0;
    while (done < 60) {
        const int n = 2 + (done % 2);
        IntLattice L = testutil::random_hyperbolic_lattice(rng, n);
        auto ample = testutil::find_ample(L);
        if (!ample) continue;
        DivisorClass delta = random_positive_class(rng, L);
        if (pair(L, delta, *ample) <= 0) delta = -delta;
        if (pair(L, delta, *ample) <= 0) continue;
        const Rat bound = nef_violation_bound_sq(L, *ample, delta);
        // generous box scan for violating roots
        ClassQuery q;
        q.self_intersection = Int(-2);
        q.pairings.push_back(PairingConstraint::ge(*ample, Int(1)));
        q.pairings.push_back(PairingConstraint::le(delta, Int(-1)));
        for (const auto& C : oracle_enumerate(L, q, Int(n == 2 ? 30 : 12)).solutions) {
            const Int cd = pair(L, delta, C);
            CHECK(Rat(cd * cd) < bound);
        }
        // and the structured search finds exactly the in-box violating roots
        EnumerationResult direct = roots_violating_nef(L, *ample, delta);
        for (const auto& C : direct.solutions) CHECK(pair(L, delta, C) < 0);
        ++done;
    }
}

TEST_CASE("enumeration output is deterministic and sorted") {
    IntLattice G = family_lattice(testutil::rank2(-1, 2, 1));
    ClassQuery q;
    q.self_intersection = Int(-2);
    q.pairings.push_back(PairingConstraint::range(cl({1, 0}), Int(0), Int(6)));
    EnumerationResult a = enumerate_classes(G, q);
    EnumerationResult b = enumerate_classes(G, q);
    CHECK(a.solutions == b.solutions);
    CHECK(std::is_sorted(a.solutions.begin(), a.solutions.end()));
    CHECK(a.bound_note == b.bound_note);
}
