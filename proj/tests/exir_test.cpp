#include "doctest.h"

#include "exlife/exir.hpp"

using namespace exlife;

namespace {

const char* kMoveFileish = R"(// minimal mover
field FileUtils.BUF_SIZE := 4096

method FileUtils::moveFile(File,File) {
  src := param 0
  dest := param 1
  if src != null goto L1
  throw NullPointerException "src must not be null"
L1:
  if dest != null goto L2
  throw NullPointerException "dest must not be null"
L2:
  ok := call FileUtils::renameTo(src, dest)
  if ok goto L3
  msg := "cannot move " ++ src ++ " to " ++ dest
  throw IOException msg
L3:
  return
}

private method FileUtils::renameTo(File,File) {
  a := param 0
  b := param 1
  r := call File::renameTo(a, b)
  return r
}
)";

ExirProgram parse(const std::string& text) { return parse_program(text, "t"); }

int err_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

std::string err_msg(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("exir parses a representative program") {
    ExirProgram p = parse(kMoveFileish);
    REQUIRE(p.methods.size() == 2);
    REQUIRE(p.fields.size() == 1);
    CHECK(p.fields[0].field.display() == "FileUtils.BUF_SIZE");
    CHECK(p.fields[0].initial.int_value == 4096);

    const ExirMethod& mf = p.methods[0];
    CHECK(mf.id.signature() == "FileUtils::moveFile(File,File)");
    CHECK_FALSE(mf.is_private);
    REQUIRE(mf.statements.size() == 11);
    CHECK(mf.statements[0].kind() == "param-bind");
    CHECK(mf.statements[3].kind() == "throw");
    CHECK(mf.statements[4].label == "L1");
    CHECK(mf.statements[6].kind() == "assign-call");
    CHECK(mf.statements[8].kind() == "assign-strcat");
    CHECK(mf.label_target("L3") == 10);

    CHECK(p.methods[1].is_private);
    CHECK(p.resolve("FileUtils", "renameTo", 2) == 1);
    CHECK_FALSE(p.resolve("File", "renameTo", 2).has_value());  // external
}

TEST_CASE("exir print then parse is the identity") {
    ExirProgram p = parse(kMoveFileish);
    std::string printed = print_program(p);
    ExirProgram again = parse(printed);
    CHECK(again == p);
    // and printing is a fixed point
    CHECK(print_program(again) == printed);
}

TEST_CASE("exir statement forms round-trip") {
    const char* text =
        "method A::f(int) {\n"
        "  x := param 0\n"
        "  y := -3\n"
        "  z := x + y\n"
        "  n := !z\n"
        "  m := - x\n"
        "  f := field A.LIMIT\n"
        "  field A.LIMIT := 7\n"
        "  s := \"a\\n\\\"b\\\"\" ++ x\n"
        "  if x <= 0 goto L1\n"
        "  throw E format(\"bad %s and %d%%\", s, x)\n"
        "L1:\n"
        "  call A::g(x, null, true)\n"
        "  return x\n"
        "}\n"
        "\n"
        "method A::g(int,Object,boolean) {\n"
        "  return\n"
        "}\n"
        "\n"
        "field A.LIMIT := 9\n";
    ExirProgram p = parse(text);
    CHECK(parse(print_program(p)) == p);
    const auto& st = p.methods[0].statements;
    CHECK(st[1].as<StAssignConst>()->value.int_value == -3);
    CHECK(st[4].as<StAssignUnop>()->op == "-");
    CHECK(st[7].as<StAssignStrcat>()->parts[0].text == "a\n\"b\"");
    const auto* th = st[9].as<StThrow>();
    REQUIRE(th != nullptr);
    CHECK(th->message.is_format);
    CHECK(th->message.format == "bad %s and %d%%");
    REQUIRE(th->message.parts.size() == 2);
}

TEST_CASE("exir varargs parameter type") {
    ExirProgram p = parse(
        "method F::move(File,File,CopyOption...) {\n  return\n}\n");
    REQUIRE(p.methods[0].id.params.size() == 3);
    CHECK(p.methods[0].id.params[2] == "CopyOption...");
    CHECK(p.methods[0].id.signature() == "F::move(File,File,CopyOption...)");
}

TEST_CASE("exir rejects a plain variable copy") {
    std::string msg = err_msg("method A::f() {\n  x := 1\n  y := x\n  return\n}\n");
    CHECK(msg.find("plain variable copy") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
}

TEST_CASE("exir rejects reserved words as variables") {
    CHECK(err_msg("method A::f() {\n  x := goto\n  return\n}\n")
              .find("reserved") != std::string::npos);
    CHECK(err_msg("method A::f() {\n  x := 1 + call\n  return\n}\n")
              .find("reserved") != std::string::npos);
    CHECK(err_msg("method A::f() {\n  format := 1\n  return\n}\n")
              .find("unexpected keyword") != std::string::npos);
}

TEST_CASE("exir label rules") {
    // two labels on one statement
    CHECK(err_msg("method A::f() {\nL1:\nL2:\n  return\n}\n")
              .find("already has a label") != std::string::npos);
    // duplicate label in a method
    CHECK(err_msg("method A::f() {\nL1:\n  x := 1\nL1:\n  return\n}\n")
              .find("duplicate label") != std::string::npos);
    // goto to a missing label
    CHECK(err_msg("method A::f() {\n  goto L9\n}\n").find("unresolved label")
          != std::string::npos);
    // inline and own-line labels are equivalent
    ExirProgram a = parse("method A::f() {\nL1: return\n}\n");
    ExirProgram b = parse("method A::f() {\nL1:\n  return\n}\n");
    CHECK(a == b);
}

TEST_CASE("exir error positions are 1-based line and column") {
    try {
        parse("method A::f() {\n  x := @\n  return\n}\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.col() == 8);
        CHECK(std::string(e.what()).find("line 2, col 8") != std::string::npos);
    }
    CHECK(err_line("method A::f() {\n  x := \"abc\n  return\n}\n") == 2);
    CHECK(err_line("method A::f() {\n  return\n") == 3);  // missing }
}

TEST_CASE("exir duplicate and ambiguous declarations") {
    CHECK(err_msg("method A::f() {\n  return\n}\nmethod A::f() {\n  return\n}\n")
              .find("duplicate method signature") != std::string::npos);
    CHECK(err_msg("field A.X := 1\nfield A.X := 2\n")
              .find("duplicate field") != std::string::npos);
    // same (class, name, arity) with different types: calls cannot resolve
    std::string msg = err_msg(
        "method A::f(int) {\n  return\n}\n"
        "method A::f(File) {\n  return\n}\n"
        "method B::g() {\n  call A::f(null)\n  return\n}\n");
    CHECK(msg.find("ambiguous call") != std::string::npos);
}

TEST_CASE("exir parameter index must be in range") {
    CHECK(err_msg("method A::f(int) {\n  x := param 1\n  return\n}\n")
              .find("parameter index") != std::string::npos);
}

TEST_CASE("exir field reads keep dotted class names") {
    ExirProgram p = parse(
        "method A::f() {\n  x := field java.nio.StandardCopyOption.ATOMIC_MOVE\n  return\n}\n");
    const auto* get = p.methods[0].statements[0].as<StAssignFieldGet>();
    REQUIRE(get != nullptr);
    CHECK(get->field.class_name == "java.nio.StandardCopyOption");
    CHECK(get->field.field_name == "ATOMIC_MOVE");
    CHECK(parse(print_program(p)) == p);
}

TEST_CASE("exir comments and blank lines are ignored") {
    ExirProgram p = parse(
        "// header\n\nmethod A::f() {\n  // inside\n  x := 1  // trailing\n\n  return\n}\n");
    REQUIRE(p.methods[0].statements.size() == 2);
    CHECK(p.methods[0].statements[0].as<StAssignConst>()->value.int_value == 1);
}
