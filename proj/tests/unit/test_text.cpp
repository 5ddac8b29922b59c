#include <doctest.h>

#include "grantrec/text.hpp"

using namespace grantrec::text;

TEST_CASE("utf-8 validation")
{
    CHECK(is_valid_utf8("plain ascii"));
    CHECK(is_valid_utf8("機械学習"));
    CHECK(is_valid_utf8(""));
    CHECK_FALSE(is_valid_utf8("\xff\xfe"));
    CHECK_FALSE(is_valid_utf8("abc\xe6\x9c"));  // truncated sequence
    CHECK_FALSE(is_valid_utf8("\xc0\xaf"));     // overlong '/'
}

TEST_CASE("nfc composes and leaves composed text alone")
{
    CHECK(nfc("e\xcc\x81") == "\xc3\xa9");  // e + combining acute → é
    CHECK(nfc("\xc3\xa9") == "\xc3\xa9");
    // Half-width katakana is a compatibility form: NFC keeps it.
    CHECK(nfc("ｶ") == "ｶ");
}

TEST_CASE("case folding")
{
    CHECK(fold_case("Machine Learning") == "machine learning");
    CHECK(fold_case("ÉCOLE") == "école");
    CHECK(fold_case("Straße") == "strasse");
    CHECK(fold_case("機械学習") == "機械学習");
}

TEST_CASE("white-space collapse and trim")
{
    CHECK(collapse_whitespace("  a \t\n b  ") == "a b");
    CHECK(collapse_whitespace("a　b") == "a b");  // ideographic space
    CHECK(collapse_whitespace("") == "");
    CHECK(collapse_whitespace(" \n ") == "");
    CHECK(trim("  x y \n") == "x y");
    CHECK(trim("　全角　") == "全角");
    CHECK(trim("   ").empty());
}

TEST_CASE("match key folds case and collapses space")
{
    CHECK(match_key("  Neural   NETWORK ") == "neural network");
}

TEST_CASE("utf-32 round trip")
{
    const std::string s = "mixed ASCII と日本語 ✓";
    CHECK(to_utf8(to_u32(s)) == s);
    CHECK(to_u32("日本").size() == 2);
}

TEST_CASE("character classes")
{
    CHECK(classify(U'a') == CharClass::word);
    CHECK(classify(U'7') == CharClass::word);
    CHECK(classify(U'é') == CharClass::word);
    CHECK(classify(U'漢') == CharClass::cjk);
    CHECK(classify(U'ひ') == CharClass::cjk);
    CHECK(classify(U'カ') == CharClass::cjk);
    CHECK(classify(U'ー') == CharClass::cjk);
    CHECK(classify(U' ') == CharClass::other);
    CHECK(classify(U'.') == CharClass::other);
    CHECK(classify(U'。') == CharClass::other);
}

TEST_CASE("boundaries sit between word and non-word characters")
{
    const std::u32string t = U"ab cd機械";
    CHECK(is_boundary(t, 0));
    CHECK_FALSE(is_boundary(t, 1));
    CHECK(is_boundary(t, 2));
    CHECK(is_boundary(t, 3));
    CHECK(is_boundary(t, 5));  // d | 機
    CHECK(is_boundary(t, 6));  // inside a CJK run every position is a boundary
    CHECK(is_boundary(t, t.size()));
}

TEST_CASE("phrase matcher prefers the longest phrase and respects word boundaries")
{
    PhraseMatcher m({"Neural Network", "network", "neural network models", "Neural Network"});
    REQUIRE(m.phrases().size() == 3);  // duplicate after folding dropped

    const auto text = to_u32("new neural network models and a network");
    const auto spans = m.scan(text);
    REQUIRE(spans.size() == 2);
    CHECK(m.phrases()[spans[0].phrase] == "neural network models");
    CHECK(m.phrases()[spans[1].phrase] == "network");
    CHECK(spans[1].end == text.size());

    CHECK(m.scan(to_u32("networks")).empty());
    CHECK(m.scan(to_u32("subnetwork")).empty());
    CHECK_FALSE(m.match_at(to_u32("a network"), 1).has_value());
    CHECK(m.match_at(to_u32("a network"), 2).has_value());
}

TEST_CASE("phrase matcher inside CJK text ignores word boundaries")
{
    PhraseMatcher m({"機械学習"});
    const auto spans = m.scan(to_u32("深層機械学習の研究"));
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].begin == 2);
    CHECK(spans[0].end == 6);
}

TEST_CASE("empty matcher and empty text")
{
    PhraseMatcher empty;
    CHECK(empty.empty());
    CHECK(empty.scan(to_u32("anything")).empty());
    PhraseMatcher m({"x"});
    CHECK(m.scan(U"").empty());
    CHECK(PhraseMatcher({"", "  "}).empty());
}
