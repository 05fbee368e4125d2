#include <doctest.h>

#include "cpic/notation.hpp"
#include "fixtures.hpp"

using namespace cpic;
using namespace cpic::testing;

TEST_CASE("parse reconstructs absolute depths from relative subscripts") {
    ClusterPicture pic =
        parse_picture("(((* * *)_2 * * *)_4 (* * * *)_8 * *)_0", Rational(0));
    CHECK(pic.root_count() == 12);
    CHECK(pic.depth(pic.top()) == Rational(0));
    CHECK(pic.depth(pic.node_by_path("R/0")) == Rational(4));
    CHECK(pic.depth(pic.node_by_path("R/0/0")) == Rational(6));
    CHECK(pic.depth(pic.node_by_path("R/1")) == Rational(8));
    // identical structure to the root-built golden picture
    CHECK(pic.canonical_text() == golden_picture().canonical_text());
}

TEST_CASE("parse basics") {
    ClusterPicture single = parse_picture("(* * * * * *)_0", Rational(0));
    CHECK(single.root_count() == 6);
    CHECK(single.proper_clusters().size() == 1);

    ClusterPicture frac = parse_picture("((* *)_3/2 * * *)_1", Rational(0));
    CHECK(frac.depth(frac.top()) == Rational(1));
    CHECK(frac.depth(frac.node_by_path("R/0")) == Rational::parse("5/2"));

    ClusterPicture neg = parse_picture("(* * * * *)_-2", Rational(0));
    CHECK(neg.depth(neg.top()) == Rational(-2));

    ClusterPicture vcf = parse_picture("(* * * * *)_0", Rational::parse("7/2"));
    CHECK(vcf.vcf() == Rational::parse("7/2"));
}

TEST_CASE("print emits the canonical child order") {
    // size descending
    CHECK(parse_picture("((* *)_1 (* * *)_2 *)_0", Rational(0)).canonical_text() ==
          "((* * *)_2 (* *)_1 *)_0");
    // then relative depth descending
    CHECK(parse_picture("((* *)_1 (* *)_2 * *)_0", Rational(0)).canonical_text() ==
          "((* *)_2 (* *)_1 * *)_0");
    // then text ascending
    CHECK(parse_picture("(((* *)_2 * *)_1 ((* *)_1 * *)_1 *)_0", Rational(0))
              .canonical_text() == "(((* *)_1 * *)_1 ((* *)_2 * *)_1 *)_0");
    // leaves sort after proper clusters
    CHECK(parse_picture("(* (* *)_1 *)_0", Rational(0)).canonical_text() ==
          "((* *)_1 * *)_0");
}

TEST_CASE("parse of print is the identity on the corpus") {
    for (const std::string& text : notation_corpus()) {
        ClusterPicture pic = parse_picture(text, Rational::parse("2"));
        ClusterPicture back = parse_picture(print_picture(pic), Rational::parse("2"));
        CHECK(picture_equal(pic, back));
    }
}

TEST_CASE("print of parse is idempotent on the corpus") {
    for (const std::string& text : notation_corpus()) {
        std::string canon = print_picture(parse_picture(text, Rational(0)));
        CHECK(print_picture(parse_picture(canon, Rational(0))) == canon);
    }
}

TEST_CASE("parse errors carry a position") {
    auto check_error = [](const char* text, const char* needle) {
        try {
            parse_picture(text, Rational(0));
            std::string missing = std::string("expected a parse error for ") + text;
            FAIL_CHECK(missing);
        } catch (const InputError& e) {
            std::string msg = e.what();
            CHECK(msg.find("position") != std::string::npos);
            CHECK_MESSAGE(msg.find(needle) != std::string::npos, msg);
        }
    };
    check_error("* * *", "top-level item must be a cluster");
    check_error("(* *", "expected");
    check_error("(* *)", "expected '_'");
    check_error("(* *)_", "rational");
    check_error("(*)_1", "at least two items");
    check_error("()_1", "at least two items");
    check_error("((* *)_0 * *)_1", "non-positive relative depth");
    check_error("((* *)_-1 * *)_0", "non-positive relative depth");
    check_error("(* *)_1 extra", "trailing");
    check_error("(* x *)_1", "expected");
}

TEST_CASE("vcf is carried alongside the notation") {
    ClusterPicture pic = parse_picture("(* * * * *)_1", Rational::parse("4"));
    nlohmann::ordered_json j = picture_to_json(pic);
    CHECK(j["vcf"] == "4");
    CHECK(j["picture"] == "(* * * * *)_1");
    ClusterPicture back = picture_from_json(j);
    CHECK(picture_equal(pic, back));
}

TEST_CASE("json ingestion accepts all three schemas") {
    ClusterPicture from_roots = picture_from_json(nlohmann::json::parse(golden_json()));
    CHECK(from_roots.canonical_text() == golden_picture().canonical_text());
    CHECK(from_roots.prime().has_value());
    CHECK(*from_roots.prime() == 5);
    CHECK(from_roots.root_values().has_value());

    auto abstract = nlohmann::json::parse(
        R"({"vcf": "2", "picture": "((* * * *)_1 * *)_0"})");
    ClusterPicture from_text = picture_from_json(abstract);
    CHECK(from_text.vcf() == Rational(2));
    CHECK(from_text.canonical_text() == "((* * * *)_1 * *)_0");

    auto tree = nlohmann::json::parse(R"({
        "vcf": "2",
        "tree": {"depth": "0", "children": [
            {"depth": "1", "children": ["*", "*", "*", "*"]},
            "*", "*"]}})");
    ClusterPicture from_tree = picture_from_json(tree);
    CHECK(picture_equal(from_tree, from_text));
}

TEST_CASE("json ingestion rejects malformed input") {
    CHECK_THROWS_AS(picture_from_json(nlohmann::json::parse("[]")), InputError);
    CHECK_THROWS_AS(picture_from_json(nlohmann::json::parse("{}")), InputError);
    CHECK_THROWS_AS(
        picture_from_json(nlohmann::json::parse(R"({"roots": ["0"], "p": 5})")),
        InputError);
    CHECK_THROWS_AS(picture_from_json(nlohmann::json::parse(
                        R"({"roots": ["0","1","2","3","4"], "leading_coeff": "1"})")),
                    InputError);
    CHECK_THROWS_AS(picture_from_json(nlohmann::json::parse(
                        R"({"p": 4, "leading_coeff": "1",
                            "roots": ["0","1","2","3","4"]})")),
                    InputError);
    CHECK_THROWS_AS(picture_from_json(nlohmann::json::parse(
                        R"({"vcf": "1.5", "picture": "(* * * * *)_0"})")),
                    InputError);
}

TEST_CASE("roots given as plain rational strings still parse") {
    auto j = nlohmann::json::parse(
        R"({"p": 5, "leading_coeff": "1",
            "roots": ["1/5", "2/5", "0", "1", "2"]})");
    ClusterPicture pic = picture_from_json(j);
    CHECK(pic.depth(pic.top()) == Rational(-1));
}
