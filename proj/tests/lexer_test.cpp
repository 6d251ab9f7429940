#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "green/token.hpp"

#include <random>
#include <string>

using namespace green;

namespace {

LexResult L(const std::string& text) {
    return lex(SourceFile{"t.green", text});
}

// invariant: concatenating lead+lexeme over all tokens reproduces the source
bool round_trips(const std::string& text) {
    auto r = L(text);
    std::string rebuilt;
    for (auto& t : r.tokens) rebuilt += t.lead + t.lexeme;
    return rebuilt == text && !r.tokens.empty() && r.tokens.back().kind == Tok::Eof;
}

const Token& only(const LexResult& r) {
    REQUIRE(r.tokens.size() == 2);   // token + Eof
    return r.tokens[0];
}

int errors_with(const LexResult& r, const std::string& code) {
    int n = 0;
    for (auto& d : r.diags)
        if (d.code == code && d.severity == Severity::Error) n++;
    return n;
}

} // namespace

TEST_CASE("integer literals and suffixes") {
    auto r = L("3200i");
    CHECK(only(r).kind == Tok::IntLit);
    CHECK(only(r).ival == 3200);
    CHECK(r.diags.empty());

    r = L("3L");
    CHECK(only(r).kind == Tok::LongLit);
    CHECK(only(r).ival == 3);

    r = L("2b");
    CHECK(only(r).kind == Tok::ByteLit);
    CHECK(only(r).ival == 2);

    r = L("2147483647");
    CHECK(only(r).ival == 2147483647);
    CHECK(r.diags.empty());

    r = L("2147483648");
    CHECK(errors_with(r, "bad-number") == 1);

    r = L("255b");
    CHECK(only(r).ival == 255);
    CHECK(r.diags.empty());

    r = L("256b");
    CHECK(errors_with(r, "bad-number") == 1);

    r = L("9223372036854775807L");
    CHECK(only(r).ival == 9223372036854775807LL);
    CHECK(r.diags.empty());

    r = L("9223372036854775808L");
    CHECK(errors_with(r, "bad-number") == 1);
}

TEST_CASE("float literals") {
    auto r = L("2.5");
    CHECK(only(r).kind == Tok::RealLit);
    CHECK(only(r).fval == doctest::Approx(2.5));

    r = L("1d");
    CHECK(only(r).kind == Tok::DoubleLit);
    CHECK(only(r).fval == 1.0);

    r = L("1r");
    CHECK(only(r).kind == Tok::RealLit);

    r = L("320E+5");
    CHECK(only(r).kind == Tok::RealLit);
    CHECK(only(r).fval == doctest::Approx(3.2e7));

    r = L("1e-10");
    CHECK(only(r).kind == Tok::RealLit);
    CHECK(only(r).fval == doctest::Approx(1e-10));

    r = L("2.5d");
    CHECK(only(r).kind == Tok::DoubleLit);
    CHECK(only(r).fval == 2.5);

    // integer suffix on a float is an error
    r = L("2.5L");
    CHECK(errors_with(r, "bad-number") == 1);

    // real literals decode through float precision
    r = L("0.1r");
    CHECK(only(r).fval == static_cast<double>(0.1f));
}

TEST_CASE("dot only joins a number when a digit follows") {
    auto r = L("2.d");
    REQUIRE(r.tokens.size() == 4);
    CHECK(r.tokens[0].kind == Tok::IntLit);
    CHECK(r.tokens[1].kind == Tok::Dot);
    CHECK(r.tokens[2].kind == Tok::Ident);

    r = L("5.toString()");
    CHECK(r.tokens[0].kind == Tok::IntLit);
    CHECK(r.tokens[1].kind == Tok::Dot);
    CHECK(r.tokens[2].sval == "toString");

    // exponent needs a digit too: 1e .. stays an error, 2e+x is not an exponent
    r = L("1.2e");
    CHECK(errors_with(r, "bad-number") == 1);
}

TEST_CASE("malformed numbers") {
    CHECK(errors_with(L("12abc"), "bad-number") == 1);
    CHECK(errors_with(L("1e"), "bad-number") == 1);
    CHECK(errors_with(L("3x"), "bad-number") == 1);
}

TEST_CASE("keywords") {
    auto r = L("class subclassOf subtypeOf init proc endif");
    CHECK(r.tokens[0].kind == Tok::KwClass);
    CHECK(r.tokens[1].kind == Tok::KwSubclassOf);
    CHECK(r.tokens[2].kind == Tok::KwSubtypeOf);
    CHECK(r.tokens[3].kind == Tok::KwInit);
    CHECK(r.tokens[4].kind == Tok::KwProc);
    CHECK(r.tokens[5].kind == Tok::KwEndif);

    // both spellings accepted, lexeme preserved
    r = L("assert assertion");
    CHECK(r.tokens[0].kind == Tok::KwAssert);
    CHECK(r.tokens[1].kind == Tok::KwAssert);
    CHECK(r.tokens[0].lexeme == "assert");
    CHECK(r.tokens[1].lexeme == "assertion");

    // keywords are case-sensitive: Class is an identifier
    r = L("Class");
    CHECK(r.tokens[0].kind == Tok::Ident);

    for (int t = 0; t <= static_cast<int>(Tok::KwXor); t++) {
        auto tok = static_cast<Tok>(t);
        bool named = std::string(tok_name(tok)).front() == '\'';
        if (is_keyword(tok)) CHECK(named);
    }
}

TEST_CASE("identifier case collision warns once per spelling") {
    auto r = L("value Value value Value vaLue");
    int warns = 0;
    for (auto& d : r.diags)
        if (d.code == "case-collision") {
            CHECK(d.severity == Severity::Warning);
            warns++;
        }
    CHECK(warns == 2);   // Value and vaLue each warn once
}

TEST_CASE("char literals") {
    auto r = L("'A'");
    CHECK(only(r).kind == Tok::CharLit);
    CHECK(only(r).cval == 'A');

    r = L("'\\n'");
    CHECK(only(r).cval == '\n');

    r = L("'\\x41'");
    CHECK(only(r).cval == 0x41);

    r = L("'\\0'");
    CHECK(only(r).cval == 0);

    CHECK(errors_with(L("''"), "bad-char") == 1);
    CHECK(errors_with(L("'AB'"), "bad-char") == 1);
    CHECK(errors_with(L("'A"), "bad-char") == 1);
    CHECK(errors_with(L("'\\q'"), "bad-escape") == 1);
}

TEST_CASE("string literals") {
    auto r = L("\"hello, world\"");
    CHECK(only(r).kind == Tok::StrLit);
    CHECK(only(r).sval == "hello, world");

    r = L("\"a\\tb\\\\c\\\"d\"");
    CHECK(only(r).sval == "a\tb\\c\"d");

    r = L("\"bad");
    CHECK(errors_with(r, "unterminated-string") == 1);

    r = L("\"line\nbreak\"");
    CHECK(errors_with(r, "unterminated-string") >= 1);
}

TEST_CASE("comments") {
    auto r = L("a // rest of line\nb");
    REQUIRE(r.tokens.size() == 3);
    CHECK(r.tokens[1].sval == "b");

    r = L("a /* one /* nested */ two */ b");
    REQUIRE(r.tokens.size() == 3);
    CHECK(r.tokens[1].sval == "b");
    CHECK(r.diags.empty());

    r = L("/* open /* still open */");
    CHECK(errors_with(r, "unterminated-comment") == 1);
}

TEST_CASE("operators") {
    auto r = L("<< >> <= >= <> == = ++ -- ... # @ & | ^ ~");
    Tok want[] = {Tok::Shl,   Tok::Shr,   Tok::Le,         Tok::Ge,
                  Tok::Ne,    Tok::EqEq,  Tok::Assign,     Tok::PlusPlus,
                  Tok::MinusMinus, Tok::Ellipsis, Tok::Hash, Tok::At,
                  Tok::Amp,   Tok::Pipe,  Tok::Caret,      Tok::Tilde};
    REQUIRE(r.tokens.size() == 17);
    for (size_t i = 0; i < 16; i++) CHECK(r.tokens[i].kind == want[i]);
}

TEST_CASE("positions count unicode scalar values") {
    auto r = L("ab\ncd");
    CHECK(r.tokens[0].span.line == 1);
    CHECK(r.tokens[0].span.col == 1);
    CHECK(r.tokens[1].span.line == 2);
    CHECK(r.tokens[1].span.col == 1);

    // two-byte scalar before x: column advances by one, not two
    r = L("\"\xC3\xA9\" x");
    CHECK(r.tokens[1].span.col == 5);
}

TEST_CASE("round-trip over programs") {
    CHECK(round_trips(""));
    CHECK(round_trips("   \n\t  "));
    CHECK(round_trips("class Point\npublic:\n  proc getX() : integer\n"
                      "  begin\n    return x;  // field\n  end\nprivate:\n"
                      "  var x : integer;\nend\n"));
    CHECK(round_trips("a = #(1, 2, 3); b[i] = \"s\"; c = 'q'; /* t */"));
    CHECK(round_trips("x = 320E+5 + 2.5d - 3L * 2b % 'A';"));
    // error inputs still round-trip
    CHECK(round_trips("12abc 'AB' \"open"));
    CHECK(round_trips("$ ? ` \xE2\x82\xAC"));
}

TEST_CASE("round-trip over random inputs") {
    std::mt19937 rng(20260816);
    const std::string alphabet =
        "abcXYZ019 \t\n+-*/%&|^~<>=()[].,;:#@'\"\\_{}$";
    for (int iter = 0; iter < 2000; iter++) {
        std::string text;
        int n = static_cast<int>(rng() % 60);
        for (int i = 0; i < n; i++) text += alphabet[rng() % alphabet.size()];
        CAPTURE(text);
        REQUIRE(round_trips(text));
    }
    // raw byte fuzz, including invalid UTF-8
    for (int iter = 0; iter < 500; iter++) {
        std::string text;
        int n = static_cast<int>(rng() % 40);
        for (int i = 0; i < n; i++) text += static_cast<char>(rng() % 256);
        REQUIRE(round_trips(text));
    }
}

TEST_CASE("diagnostic rendering") {
    auto r = L("  256b");
    REQUIRE(!r.diags.empty());
    CHECK(render(r.diags[0]) ==
          "t.green:1:3: error[bad-number]: byte literal out of range 0..255");
}
