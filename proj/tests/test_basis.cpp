#include <doctest.h>

#include "cpic/basis.hpp"
#include "cpic/lambda.hpp"
#include "cpic/notation.hpp"
#include "fixtures.hpp"

using namespace cpic;
using namespace cpic::testing;

TEST_CASE("golden picture: greedy sequence, exponents, differentials") {
    ClusterPicture pic = golden_picture();
    NodeId top = pic.top();
    NodeId t1 = find_cluster(pic, 6, Rational(4));
    NodeId t2 = find_cluster(pic, 3, Rational(6));
    NodeId t3 = find_cluster(pic, 4, Rational(8));

    BasisResult b = basis_sequence(pic);
    REQUIRE(b.steps.size() == 5);
    CHECK(b.steps[0].cluster == t2);
    CHECK(b.steps[1].cluster == t3);
    CHECK(b.steps[2].cluster == t1);
    CHECK(b.steps[3].cluster == top);
    CHECK(b.steps[4].cluster == top);

    CHECK(b.steps[0].exponent == Rational(9));
    CHECK(b.steps[1].exponent == Rational(8));
    CHECK(b.steps[2].exponent == Rational(4));
    CHECK(b.steps[3].exponent == Rational(0));
    CHECK(b.steps[4].exponent == Rational(0));

    CHECK(b.steps[0].centre.value == Rational(0));
    CHECK(b.steps[1].centre.value == Rational(1));
    CHECK(b.steps[2].centre.value == Rational(0));
    CHECK(b.steps[3].centre.value == Rational(0));

    REQUIRE(b.differentials.size() == 5);
    CHECK(b.differentials[0].render() == "p^9 * dx/2y");
    CHECK(b.differentials[1].render() == "p^8 * (x-0) * dx/2y");
    CHECK(b.differentials[2].render() == "p^4 * (x-0) * (x-1) * dx/2y");
    CHECK(b.differentials[3].render() == "(x-0) * (x-1) * (x-0) * dx/2y");
    CHECK(b.differentials[4].render() == "(x-0) * (x-1) * (x-0) * (x-0) * dx/2y");

    CHECK(b.sum_e() == Rational(21));
    CHECK(b.warnings.empty());
}

TEST_CASE("single cluster: everything is zero") {
    ClusterPicture pic = parse_picture("(* * * * * *)_0", Rational(0));
    BasisResult b = basis_sequence(pic);
    REQUIRE(b.steps.size() == 2);
    CHECK(b.steps[0].cluster == pic.top());
    CHECK(b.steps[1].cluster == pic.top());
    CHECK(b.steps[0].exponent == Rational(0));
    CHECK(b.steps[1].exponent == Rational(0));
    CHECK(b.differentials[0].render() == "dx/2y");
    CHECK(b.differentials[1].render() == "(x-z(R)) * dx/2y");
}

TEST_CASE("six roots with one size-4 child") {
    ClusterPicture pic = parse_picture("((* * * *)_1 * *)_0", Rational(0));
    NodeId s = pic.node_by_path("R/0");
    BasisResult b = basis_sequence(pic);
    REQUIRE(b.steps.size() == 2);
    CHECK(b.steps[0].cluster == s);
    CHECK(b.steps[0].exponent == Rational(1));
    CHECK(b.steps[1].cluster == pic.top());  // nested tie resolves outward
    CHECK(b.steps[1].exponent == Rational(0));

    // step values enumerated by hand: {R: 0, s: 1}, then {R: 0, s: 0}
    REQUIRE(b.trace.size() == 2);
    for (const auto& [node, v] : b.trace[0].values)
        CHECK(v == (node == s ? Rational(1) : Rational(0)));
    for (const auto& [node, v] : b.trace[1].values)
        CHECK(v == Rational(0));
}

TEST_CASE("incomparable tie goes to the larger cluster") {
    // step-0 values: R: 0, A(size 4, delta 1): 1, B(size 3, delta 2): 1
    ClusterPicture pic = parse_picture("((* * * *)_1 (* * *)_2)_0", Rational(0));
    BasisResult b = basis_sequence(pic);
    CHECK(pic.path_label(b.steps[0].cluster) == "R/0");
    CHECK(pic.size(b.steps[0].cluster) == 4);
    CHECK(b.steps[0].exponent == Rational(1));
}

TEST_CASE("incomparable tie between equal sizes goes to the smaller root index") {
    ClusterPicture pic = parse_picture("((* * *)_2 (* * *)_2)_0", Rational(0));
    BasisResult b = basis_sequence(pic);
    CHECK(pic.min_leaf_index(b.steps[0].cluster) == 0);
    // either choice leaves the invariants unchanged
    BasisResult r1 = basis_sequence(pic, TieBreak::Randomized, 1);
    BasisResult r2 = basis_sequence(pic, TieBreak::Randomized, 99);
    CHECK(r1.sum_e() == b.sum_e());
    CHECK(r2.sum_e() == b.sum_e());
    CHECK(gamma_counts(pic, r1) == gamma_counts(pic, b));
    CHECK(gamma_counts(pic, r2) == gamma_counts(pic, b));
}

TEST_CASE("gamma counts follow the floor law") {
    ClusterPicture pic = golden_picture();
    BasisResult b = basis_sequence(pic);
    std::map<NodeId, int> g = gamma_counts(pic, b);
    CHECK(g[pic.top()] == 5);
    CHECK(g[find_cluster(pic, 6, Rational(4))] == 2);
    CHECK(g[find_cluster(pic, 3, Rational(6))] == 1);
    CHECK(g[find_cluster(pic, 4, Rational(8))] == 1);
    for (NodeId s : pic.proper_clusters())
        CHECK(g[s] == (pic.size(s) - 1) / 2);

    ClusterPicture single = parse_picture("(* * * * * *)_0", Rational(0));
    std::map<NodeId, int> gs = gamma_counts(single, basis_sequence(single));
    CHECK(gs[single.top()] == 2);

    ClusterPicture child = parse_picture("((* * * *)_1 * *)_0", Rational(0));
    std::map<NodeId, int> gc = gamma_counts(child, basis_sequence(child));
    CHECK(gc[child.node_by_path("R/0")] == 1);
}

TEST_CASE("vanishing bounds on the golden picture") {
    ClusterPicture pic = golden_picture();
    BasisResult b = basis_sequence(pic);
    CHECK(vanishing_bound(pic, find_cluster(pic, 6, Rational(4)), 0, b) == Rational(8));
    CHECK(vanishing_bound(pic, find_cluster(pic, 3, Rational(6)), 0, b) == Rational(9));
    CHECK(vanishing_bound(pic, pic.top(), 0, b) == Rational(0));
    CHECK(vanishing_bound(pic, pic.top(), 4, b) == Rational(0));
    // e_i dominates the bound for every principal cluster and step
    for (NodeId s : pic.proper_clusters())
        if (pic.is_principal(s))
            for (int i = 0; i < 5; ++i)
                CHECK(b.steps[static_cast<size_t>(i)].exponent >=
                      vanishing_bound(pic, s, i, b));

    ClusterPicture single = parse_picture("(* * * * * *)_0", Rational(0));
    BasisResult bs = basis_sequence(single);
    CHECK(vanishing_bound(single, single.top(), 1, bs) == Rational(0));

    ClusterPicture pairs = parse_picture("((* *)_1 (* *)_1 * *)_0", Rational(0));
    BasisResult bp = basis_sequence(pairs);
    CHECK_THROWS_AS(vanishing_bound(pairs, pairs.node_by_path("R/0"), 0, bp),
                    ValidationError);
    CHECK_THROWS_AS(vanishing_bound(pic, pic.top(), 7, b), ValidationError);
}

TEST_CASE("exponents decrease along the sequence") {
    for (const std::string& text : notation_corpus()) {
        ClusterPicture pic = parse_picture(text, Rational(0));
        if (pic.genus() < 2)
            continue;
        bool nonneg = pic.depth(pic.top()).sign() >= 0;
        for (NodeId s : pic.proper_clusters())
            nonneg = nonneg && pic.depth(s).sign() >= 0;
        if (!nonneg)
            continue;
        BasisResult b = basis_sequence(pic);
        for (size_t i = 1; i < b.steps.size(); ++i)
            CHECK(b.steps[i].exponent <= b.steps[i - 1].exponent);
    }
}

TEST_CASE("non-integral exponents are a warning, not an error") {
    ClusterPicture pic = parse_picture("(* * * * *)_0", Rational(1));
    BasisResult b = basis_sequence(pic);
    CHECK(b.steps[0].exponent == Rational::parse("1/2"));
    bool warned = false;
    for (const std::string& w : b.warnings)
        if (w.find("not an integer") != std::string::npos)
            warned = true;
    CHECK(warned);
    CHECK(b.differentials[0].render() == "p^(1/2) * dx/2y");
}

TEST_CASE("basis preconditions") {
    CHECK_THROWS_AS(basis_sequence(parse_picture("(* * * *)_0", Rational(0))),
                    ValidationError);
    CHECK_THROWS_WITH_AS(
        basis_sequence(parse_picture("(* * * * *)_-1", Rational(0))),
        doctest::Contains("non-integral equation"), ValidationError);
    CHECK_THROWS_WITH_AS(
        basis_sequence(parse_picture("(* * * * *)_0", Rational(-2))),
        doctest::Contains("non-integral equation"), ValidationError);
}

TEST_CASE("nine roots at p = 11, worked by hand") {
    // A = {0, p, 2p, p^2} of depth 1 with child {0, p^2} of depth 2,
    // C = {1, 1+p} of depth 1; step 0 ties A and its child, resolved to A.
    std::vector<Rational> roots;
    for (const char* e : {"0", "p", "2*p", "p^2", "1", "1+p", "2", "3", "4"})
        roots.push_back(PExpr::parse(e).eval(11));
    ClusterPicture pic = build_picture_from_roots(roots, Rational(1), 11);
    CHECK(pic.canonical_text() == "(((* *)_1 * *)_1 (* *)_1 * * *)_0");
    CHECK(pic.nu(pic.node_by_path("R/0")) == Rational(4));
    CHECK(pic.nu(pic.node_by_path("R/0/0")) == Rational(6));
    CHECK(pic.nu(pic.node_by_path("R/1")) == Rational(2));

    BasisResult b = basis_sequence(pic);
    CHECK(b.steps[0].cluster == pic.node_by_path("R/0"));
    CHECK(b.steps[0].exponent == Rational(1));
    for (int i = 1; i < 4; ++i) {
        CHECK(b.steps[static_cast<size_t>(i)].cluster == pic.top());
        CHECK(b.steps[static_cast<size_t>(i)].exponent == Rational(0));
    }
    CHECK(b.sum_e() == Rational(1));
    CHECK(lambda8(pic) == Rational(8));
    CHECK(disc_valuation_from_picture(pic) == Rational(16));
    CHECK(hyperdisc_order(pic) == Rational(28));
}

TEST_CASE("exponent of one renders without a caret") {
    ClusterPicture pic = parse_picture("((* * * *)_1 * *)_0", Rational(0));
    BasisResult b = basis_sequence(pic);
    CHECK(b.differentials[0].render() == "p * dx/2y");
}
