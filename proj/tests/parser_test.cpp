#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "green/ast.hpp"

#include <random>
#include <string>

using namespace green;

namespace {

ParseResult P(const std::string& text) {
    return parse(SourceFile{"t.green", text});
}

int errors_of(const ParseResult& r) {
    int n = 0;
    for (auto& d : r.diags)
        if (d.severity == Severity::Error) n++;
    return n;
}

bool has_error(const ParseResult& r, const std::string& needle) {
    for (auto& d : r.diags)
        if (d.severity == Severity::Error &&
            d.message.find(needle) != std::string::npos)
            return true;
    return false;
}

// Parse one expression by planting it in a minimal program.
struct ExprHolder {
    ParseResult result;
    Expr* expr = nullptr;
};

ExprHolder E(const std::string& text) {
    ExprHolder h;
    h.result = P("object M\npublic:\nproc run()\nbegin\nt = " + text + ";\nend\nend\n");
    auto& prog = h.result.program;
    REQUIRE(prog.objects.size() == 1);
    for (auto& m : prog.objects[0].methods)
        if (m.name == "run") {
            REQUIRE(m.body.size() == 1);
            REQUIRE(m.body[0]->kind == StmtKind::ExprStat);
            REQUIRE(m.body[0]->expr->kind == ExprKind::Assign);
            h.expr = m.body[0]->expr->b.get();
        }
    REQUIRE(h.expr != nullptr);
    return h;
}

std::string canon(const std::string& text) {
    auto h = E(text);
    CHECK(errors_of(h.result) == 0);
    return print_expr(*h.expr);
}

} // namespace

TEST_CASE("arithmetic precedence") {
    auto h = E("1 + 2 * 3");
    auto& e = *h.expr;
    REQUIRE(e.kind == ExprKind::Binary);
    CHECK(e.op == Tok::Plus);
    CHECK(e.b->op == Tok::Star);

    CHECK(canon("1 + 2 * 3") == "1 + 2 * 3");
    CHECK(canon("(1 + 2) * 3") == "(1 + 2) * 3");
    CHECK(canon("1 - 2 - 3") == "1 - 2 - 3");   // left assoc
    auto g = E("1 - 2 - 3");
    CHECK(g.expr->a->op == Tok::Minus);
}

TEST_CASE("bitwise binds tighter than multiplication") {
    auto h = E("2 * 3 & 1");
    auto& e = *h.expr;
    CHECK(e.op == Tok::Star);
    CHECK(e.b->op == Tok::Amp);

    // & tighter than ^ tighter than |
    h = E("a & b ^ c | d");
    CHECK(h.expr->op == Tok::Pipe);
    CHECK(h.expr->a->op == Tok::Caret);
    CHECK(h.expr->a->a->op == Tok::Amp);

    // shifts tighter still
    h = E("a | b << c");
    CHECK(h.expr->op == Tok::Pipe);
    CHECK(h.expr->b->op == Tok::Shl);
}

TEST_CASE("relational and logical layers") {
    auto h = E("a + b < c + d");
    CHECK(h.expr->op == Tok::Lt);
    CHECK(h.expr->a->op == Tok::Plus);

    h = E("a or b and c");
    CHECK(h.expr->op == Tok::KwOr);
    CHECK(h.expr->b->op == Tok::KwAnd);

    h = E("a xor b or c");
    CHECK(h.expr->op == Tok::KwOr);
    CHECK(h.expr->a->op == Tok::KwXor);

    h = E("not a and b");
    CHECK(h.expr->op == Tok::KwAnd);
    CHECK(h.expr->a->kind == ExprKind::Unary);
}

TEST_CASE("non-associative operators reject chains") {
    auto h = E("a < b < c");
    CHECK(has_error(h.result, "non-associative"));
    h = E("a << b << c");
    CHECK(has_error(h.result, "non-associative"));
    h = E("a == b <> c");
    CHECK(has_error(h.result, "non-associative"));
    // parenthesized is fine
    h = E("(a < b) == (c < d)");
    CHECK(errors_of(h.result) == 0);
}

TEST_CASE("assignment") {
    auto h = E("b = c");   // nested inside t = ...
    CHECK(h.expr->kind == ExprKind::Assign);

    auto r = P("object M\npublic:\nproc run()\nbegin\n1 = 2;\nend\nend\n");
    CHECK(has_error(r, "not assignable"));

    r = P("object M\npublic:\nproc run()\nbegin\na[i] = b.f = 5;\nend\nend\n");
    CHECK(errors_of(r) == 0);
}

TEST_CASE("postfix chains") {
    auto h = E("a.b.c(1)[2]");
    auto& e = *h.expr;
    REQUIRE(e.kind == ExprKind::Index);
    REQUIRE(e.a->kind == ExprKind::Call);
    CHECK(e.a->name == "c");
    REQUIRE(e.a->a->kind == ExprKind::Member);
    CHECK(e.a->a->name == "b");

    h = E("x.init(1)");   // init usable as a selector
    CHECK(h.expr->kind == ExprKind::Call);
    CHECK(h.expr->name == "init");

    h = E("f(1, 2)");     // bare call is a self-send
    CHECK(h.expr->kind == ExprKind::Call);
    CHECK(h.expr->a == nullptr);
    CHECK(h.expr->args.size() == 2);

    h = E("array(any)[].new(10)");
    REQUIRE(h.expr->kind == ExprKind::Call);
    CHECK(h.expr->name == "new");
    CHECK(h.expr->a->kind == ExprKind::ArrayTypeX);

    h = E("integer.getMaxValue()");
    CHECK(h.expr->a->kind == ExprKind::BasicTypeX);
}

TEST_CASE("super calls") {
    auto r = P("object M\npublic:\nproc run()\nbegin\nsuper.run(1);\nend\nend\n");
    CHECK(errors_of(r) == 0);
    auto& m = r.program.objects[0].methods;
    for (auto& mm : m)
        if (mm.name == "run") {
            auto& e = *mm.body[0]->expr;
            CHECK(e.kind == ExprKind::Call);
            CHECK(e.recv_super);
        }
}

TEST_CASE("array initializer") {
    auto h = E("#(1, 2 + 3, x)");
    CHECK(h.expr->kind == ExprKind::ArrayInit);
    CHECK(h.expr->args.size() == 3);

    auto r = P("object M\npublic:\nproc run()\nbegin\nt = # 5;\nend\nend\n");
    CHECK(errors_of(r) >= 1);
}

TEST_CASE("statements") {
    const char* prog = R"(object M
public:
proc run()
var i : integer; s : integer;
begin
  if i < 10 then s = 1; else s = 2; endif
  while i < 10 do begin ++i; end
  repeat --i; until i == 0;
  loop if i > 3 then break; endif ++i; end
  for k = 1 to 10 do begin s = s + k; end
  for k : long = 1L to 9L do begin ; end
  case i of
    1, 2 : begin s = 1; end
    3 : begin s = 2; end
    otherwise begin s = 3; end
  end
  try(c)
    s = c.f();
  end
  return;
end
end
)";
    auto r = P(prog);
    CHECK(errors_of(r) == 0);
    for (auto& m : r.program.objects[0].methods)
        if (m.name == "run") {
            REQUIRE(m.body.size() == 9);
            CHECK(m.body[0]->kind == StmtKind::If);
            CHECK(m.body[1]->kind == StmtKind::While);
            CHECK(m.body[2]->kind == StmtKind::Repeat);
            CHECK(m.body[3]->kind == StmtKind::Loop);
            CHECK(m.body[4]->kind == StmtKind::For);
            CHECK(m.body[5]->kind == StmtKind::For);
            CHECK(m.body[5]->for_declares);
            CHECK(m.body[6]->kind == StmtKind::Case);
            CHECK(m.body[6]->arms.size() == 2);
            CHECK(m.body[6]->has_otherwise);
            CHECK(m.body[7]->kind == StmtKind::Try);
            CHECK(m.body[8]->kind == StmtKind::Return);
        }
}

TEST_CASE("init call statement") {
    auto r = P("object M\npublic:\nproc run()\nvar p : @Point;\n"
               "begin\np#init(1, 2);\nend\nend\n");
    CHECK(errors_of(r) == 0);
    for (auto& m : r.program.objects[0].methods)
        if (m.name == "run") {
            CHECK(m.body[0]->kind == StmtKind::InitCall);
            CHECK(m.body[0]->args.size() == 2);
            CHECK(m.locals.size() == 1);
            CHECK(m.locals[0].type->expanded);
        }
}

TEST_CASE("classes and sections") {
    const char* prog = R"(object Point
proc init()
begin
end
public:
  const origin : integer = 0;
  enum(north, south = 5);
  proc make(x, y : integer) : Point
  begin
    return Point.new(x, y);
  end
private:
  var count : integer = 0;
end

class Point
proc init(px, py : integer)
begin
  x = px;
  y = py;
end
public:
  proc getX() : integer
  begin
    return x;
  end
subclass:
  proc reset()
  begin
    x = 0;
  end
private:
  var x, y : integer;
end
)";
    auto r = P(prog);
    CHECK(errors_of(r) == 0);
    REQUIRE(r.program.classes.size() == 1);
    auto& c = r.program.classes[0];
    CHECK(c.name == "Point");
    REQUIRE(c.object != nullptr);
    CHECK(c.object->consts.size() == 1);
    CHECK(c.object->enums.size() == 1);
    CHECK(c.object->enums[0].items.size() == 2);
    CHECK(c.vars.size() == 2);
    REQUIRE(c.methods.size() == 3);
    CHECK(c.methods[0].vis == Visibility::Constructor);
    CHECK(c.methods[1].vis == Visibility::Public);
    CHECK(c.methods[2].vis == Visibility::Subclass);
}

TEST_CASE("instance variables cannot have initializers") {
    auto r = P("class C\nprivate:\nvar x : integer = 5;\nend\n");
    CHECK(has_error(r, "instance variables cannot have initializers"));
}

TEST_CASE("class object public vars rejected") {
    auto r = P("object C\npublic:\nvar x : integer;\nend\nclass C\nend\n");
    CHECK(errors_of(r) >= 1);
}

TEST_CASE("inheritance and modifiers") {
    auto r = P("abstract class Shape\npublic:\nabstract proc area() : real;\nend\n"
               "class Circle subclassOf Shape\npublic:\nproc area() : real\n"
               "begin\nreturn 3.14;\nend\nend\n");
    CHECK(errors_of(r) == 0);
    CHECK(r.program.classes[0].is_abstract);
    CHECK(r.program.classes[0].methods[0].is_abstract);
    CHECK(r.program.classes[1].super_name == "Shape");

    r = P("reflective class Account\nend\n");
    CHECK(r.program.classes[0].is_reflective);

    r = P("shell class Logger( Account )\npublic:\nproc getBalance() : integer\n"
          "begin\nreturn super.getBalance();\nend\nend\n");
    CHECK(errors_of(r) == 0);
    CHECK(r.program.classes[0].is_shell);

    r = P("class List( T )\npublic:\nproc get(i : integer) : T\nbegin\n"
          "return nil;\nend\nend\n");
    CHECK(errors_of(r) == 0);
    CHECK(r.program.classes[0].type_params.size() == 1);
}

TEST_CASE("method headers") {
    auto r = P("class C\npublic:\n"
               "proc f(a, b : integer; c : real) ( exception : CatchAll ) : boolean\n"
               "begin\nreturn true;\nend\n"
               "proc g(xs : ...integer) : integer\nbegin\nreturn 0;\nend\nend\n");
    CHECK(errors_of(r) == 0);
    auto& ms = r.program.classes[0].methods;
    REQUIRE(ms.size() == 2);
    CHECK(ms[0].params.size() == 3);
    CHECK(ms[0].params[0].type->name == "integer");
    CHECK(ms[0].params[2].type->name == "real");
    REQUIRE(ms[0].exc_type != nullptr);
    CHECK(ms[0].exc_type->name == "CatchAll");
    CHECK(ms[0].ret_type->name == "boolean");
    CHECK(ms[1].params[0].variadic);
}

TEST_CASE("assertion clauses") {
    auto r = P(R"(class Stack
public:
  proc push(x : integer)
  assert
    before x > 0;
    var oldSize : integer = getSize();
    after getSize() == oldSize + 1;
  end
  begin
    ;
  end
  proc getSize() : integer
  begin
    return 0;
  end
end
)");
    CHECK(errors_of(r) == 0);
    auto& m = r.program.classes[0].methods[0];
    CHECK(m.assertion.present);
    CHECK(m.assertion.before != nullptr);
    CHECK(m.assertion.after != nullptr);
    CHECK(m.assertion.vars.size() == 1);
}

TEST_CASE("types") {
    auto r = P("class C\npublic:\n"
               "proc f(a : array(integer)[]; b : array(array(real)[])[];\n"
               "       c : type(Point); d : @Point; e : Pair(integer, Point))\n"
               "begin\n;\nend\nend\n");
    CHECK(errors_of(r) == 0);
    auto& ps = r.program.classes[0].methods[0].params;
    REQUIRE(ps.size() == 5);
    CHECK(ps[0].type->kind == TypeAST::Array);
    CHECK(ps[0].type->elem->name == "integer");
    CHECK(ps[1].type->elem->kind == TypeAST::Array);
    CHECK(ps[2].type->kind == TypeAST::TypeOf);
    CHECK(ps[3].type->expanded);
    CHECK(ps[4].type->args.size() == 2);
    CHECK(print_type(*ps[0].type) == "array(integer)[]");
    CHECK(print_type(*ps[1].type) == "array(array(real)[])[]");
}

TEST_CASE("array type with dimensions") {
    auto r = P("object M\npublic:\nproc run()\n"
               "var a : array(integer)[10]; b : array(real)[3][4];\n"
               "begin\n;\nend\nend\n");
    CHECK(errors_of(r) == 0);
    for (auto& m : r.program.objects[0].methods)
        if (m.name == "run") {
            CHECK(m.locals[0].type->dims == std::vector<long long>{10});
            CHECK(m.locals[1].type->dims == std::vector<long long>{3, 4});
        }
}

TEST_CASE("statement errors recover") {
    auto r = P("object M\npublic:\nproc run()\nbegin\n"
               "a + b;\nx = 1;\nend\nend\n");
    CHECK(has_error(r, "statement"));
    // the next statement still parses
    for (auto& m : r.program.objects[0].methods)
        if (m.name == "run") CHECK(m.body.size() >= 1);
}

TEST_CASE("print-parse idempotence") {
    const char* samples[] = {
        "object M\npublic:\nproc run()\nbegin\nt = 1 + 2 * (3 - 4);\nend\nend\n",
        "object M\npublic:\nproc run()\nbegin\nt = -(-x) + (not (a and b)).f();\nend\nend\n",
        "object M\npublic:\nproc run()\nbegin\nt = #(1.5, 2.5d, 'x', \"s\\n\", 3L, 4b);\nend\nend\n",
        "class A subclassOf B\nproc init()\nbegin\nend\npublic:\n"
        "proc f(x : integer) : integer\nassert\nbefore x > 0;\nafter result >= 0;\nend\n"
        "var y : integer;\nbegin\ny = x;\nwhile y > 0 do begin --y; end\nreturn y;\nend\n"
        "private:\nvar s : integer;\nend\n",
        "object E\npublic:\nenum(a, b = 3, c);\nconst k : integer = 9;\nend\nclass E\nend\n",
    };
    for (auto* s : samples) {
        CAPTURE(s);
        auto r1 = P(s);
        REQUIRE(errors_of(r1) == 0);
        std::string p1 = print_program(r1.program);
        auto r2 = P(p1);
        CAPTURE(p1);
        REQUIRE(errors_of(r2) == 0);
        std::string p2 = print_program(r2.program);
        CHECK(p1 == p2);
    }
}

TEST_CASE("unary printing never glues tokens") {
    CHECK(canon("-(-x)") == "-(-x)");
    CHECK(canon("~(~x)") == "~(~x)");
    CHECK(canon("not (not a)") == "not (not a)");
    CHECK(canon("-(x + y)") == "-(x + y)");
    // re-parse of each canonical form must preserve meaning
    for (const char* s : {"-(-x)", "~(~x)", "not (not a)"}) {
        auto h = E(s);
        CHECK(h.expr->kind == ExprKind::Unary);
        CHECK(h.expr->a->kind == ExprKind::Unary);
    }
}

TEST_CASE("parser survives random input") {
    std::mt19937 rng(98123);
    const char* bits[] = {"class",  "object", "proc", "begin", "end",   "if",
                          "then",   "endif",  "(",    ")",     "[",     "]",
                          ";",      ":",      "=",    "+",     "x",     "42",
                          "\"s\"",  "'c'",    ".",    ",",     "#",     "@",
                          "array",  "var",    "try",  "case",  "super", "init",
                          "public:", "repeat", "until", "loop", "for",  "<>"};
    for (int iter = 0; iter < 1500; iter++) {
        std::string text;
        int n = static_cast<int>(rng() % 50);
        for (int i = 0; i < n; i++) {
            text += bits[rng() % (sizeof bits / sizeof *bits)];
            text += ' ';
        }
        CAPTURE(text);
        auto r = P(text);   // must not crash or hang
        CHECK(r.diags.size() <= 220);
    }
}
