#include "doctest.h"

#include <algorithm>

#include "exlife/summary.hpp"

using namespace exlife;

namespace {

// Reduced move-file chain: public entry, public worker, two private checks.
const char* kMoveChain = R"(
method FileUtils::moveFile(File,File) {
  src := param 0
  dest := param 1
  if src != null goto L0
  throw NullPointerException "src must not be null"
L0:
  opts := field StandardCopyOption.COPY_ATTRIBUTES
  call FileUtils::moveFile3(src, dest, opts)
  return
}

method FileUtils::moveFile3(File,File,CopyOption...) {
  src := param 0
  dest := param 1
  options := param 2
  call FileUtils::requireFile(src)
  call FileUtils::requireAbsent(dest)
  ok := call FileUtils::renameImpl(src, dest, options)
  if ok goto L1
  throw IOException "cannot move " ++ src ++ " to " ++ dest
L1:
  return
}

private method FileUtils::requireFile(File) {
  f := param 0
  if f != null goto L1
  throw NullPointerException "file must not be null"
L1:
  e := call File::exists(f)
  if e goto L2
  throw FileNotFoundException "source " ++ f ++ " does not exist"
L2:
  isf := call File::isFile(f)
  if isf goto L3
  throw IllegalArgumentException "not a file: " ++ f
L3:
  return
}

private method FileUtils::requireAbsent(File) {
  f := param 0
  if f != null goto L1
  throw NullPointerException "destination must not be null"
L1:
  e := call File::exists(f)
  if e == false goto L2
  throw FileExistsException format("destination %s already exists", f)
L2:
  return
}
)";

const ThrowSummary* find(const std::vector<ThrowSummary>& v, const std::string& type,
                         const std::string& msg_part = "") {
    for (const auto& s : v) {
        if (s.exception_type != type) continue;
        if (!msg_part.empty() && s.message_pattern.find(msg_part) == std::string::npos)
            continue;
        return &s;
    }
    return nullptr;
}

std::string pre(const ThrowSummary& s) { return dnf_fold_render(s.precondition); }
std::string key(const ThrowSummary& s) { return dnf_fold_render(s.key_precondition); }

}  // namespace

TEST_CASE("inter extraction lifts the whole chain") {
    ExirProgram p = parse_program(kMoveChain, "2.9");
    ExtractionResult r = extract_summaries(p, {Mode::Inter, 256, 16, 64});

    REQUIRE(r.per_method.size() == 4);
    const auto& mv = r.per_method[0];    // moveFile
    const auto& mv3 = r.per_method[1];   // moveFile3
    CHECK(r.per_method[2].size() == 3);  // requireFile
    CHECK(r.per_method[3].size() == 2);  // requireAbsent
    CHECK(mv3.size() == 6);
    CHECK(mv.size() == 7);

    // every method is analyzed exactly once
    for (int visits : r.stats.method_visits) CHECK(visits == 1);

    // the wrapper's own null check
    const ThrowSummary* own = find(mv, "NullPointerException", "src must");
    REQUIRE(own != nullptr);
    CHECK(own->call_chain.empty());
    CHECK(own->origin_method == "FileUtils::moveFile(File,File)");
    CHECK(pre(*own) == "(parameter0 == null)");
    CHECK(key(*own) == "(parameter0 == null)");

    // the helper's null check becomes infeasible after the wrapper's guard
    const ThrowSummary* dup = find(mv, "NullPointerException", "file must");
    REQUIRE(dup != nullptr);
    CHECK(dup->precondition.is_false());
    CHECK_FALSE(dup->unreachable);
    CHECK(key(*dup) == "(parameter0 == null)");  // key survives on its own
    CHECK(r.infeasible_clauses_dropped >= 1);

    // two-hop chain with origin bookkeeping
    const ThrowSummary* fnf = find(mv, "FileNotFoundException");
    REQUIRE(fnf != nullptr);
    CHECK(fnf->message_pattern == "source .* does not exist");
    REQUIRE(fnf->call_chain.size() == 2);
    CHECK(fnf->call_chain[0] == "FileUtils::moveFile3(File,File,CopyOption...)");
    CHECK(fnf->call_chain[1] == "FileUtils::requireFile(File)");
    CHECK(fnf->origin_method == "FileUtils::requireFile(File)");
    CHECK(fnf->origin_stmt == 5);
    CHECK(pre(*fnf) == "(parameter0 != null && !parameter0.exists())");
    CHECK(key(*fnf) == "(!parameter0.exists())");

    // call order shows up as negated earlier exception conditions
    const ThrowSummary* fee = find(mv, "FileExistsException");
    REQUIRE(fee != nullptr);
    CHECK(fee->message_pattern == "destination .* already exists");
    CHECK(pre(*fee) ==
          "(parameter0 != null && parameter0.exists() && parameter0.isFile()"
          " && parameter1 != null && parameter1.exists())");
    CHECK(key(*fee) == "(parameter1.exists())");

    // the worker's own throw: rename result plus negated helper conditions
    const ThrowSummary* ioe = find(mv, "IOException");
    REQUIRE(ioe != nullptr);
    CHECK(ioe->message_pattern == "cannot move .* to .*");
    CHECK(pre(*ioe) ==
          "(parameter0 != null && parameter0.exists() && parameter0.isFile() && "
          "!parameter0.renameImpl(parameter1, StandardCopyOption.COPY_ATTRIBUTES) && "
          "parameter1 != null && !parameter1.exists())");
    REQUIRE(ioe->call_chain.size() == 1);
    CHECK_FALSE(ioe->imprecise);

    // at the worker itself the rename result is still parameter2
    const ThrowSummary* ioe3 = find(mv3, "IOException");
    REQUIRE(ioe3 != nullptr);
    CHECK(pre(*ioe3) ==
          "(parameter0 != null && parameter0.exists() && parameter0.isFile() && "
          "!parameter0.renameImpl(parameter1, parameter2) && "
          "parameter1 != null && !parameter1.exists())");
    CHECK(ioe3->call_chain.empty());
}

TEST_CASE("intra extraction sees only local throws") {
    ExirProgram p = parse_program(kMoveChain, "2.9");
    ExtractionResult r = extract_summaries(p, {Mode::Intra, 256, 16, 64});
    REQUIRE(r.per_method.size() == 4);
    CHECK(r.per_method[0].size() == 1);
    CHECK(r.per_method[1].size() == 1);
    CHECK(r.per_method[2].size() == 3);
    CHECK(r.per_method[3].size() == 2);
    for (const auto& per : r.per_method)
        for (const auto& s : per) CHECK(s.call_chain.empty());
}

TEST_CASE("message patterns escape, trace and collapse") {
    ExirProgram p = parse_program(
        "method M::msgs(File) {\n"
        "  p := param 0\n"
        "  n := 42\n"
        "  s := \"count: \" ++ n ++ \" done\"\n"
        "  t := p ++ p ++ \"]\"\n"
        "  if p != null goto L1\n"
        "  throw E1 s\n"
        "L1:\n"
        "  if n == 0 goto L2\n"
        "  throw E2 t\n"
        "L2:\n"
        "  throw E3 format(\"%d%% of %s\", n, p)\n"
        "}\n"
        "method M::bare() {\n"
        "  throw E4\n"
        "}\n"
        "method M::special() {\n"
        "  throw E5 \"a.b[*]+(c)\"\n"
        "}\n",
        "t");
    ExtractionResult r = extract_summaries(p, {Mode::Intra, 256, 16, 64});
    CHECK(find(r.per_method[0], "E1")->message_pattern == "count: 42 done");
    CHECK(find(r.per_method[0], "E2")->message_pattern == ".*\\]");
    CHECK(find(r.per_method[0], "E3")->message_pattern == ".*% of .*");
    CHECK(find(r.per_method[1], "E4")->message_pattern == "");
    CHECK(find(r.per_method[2], "E5")->message_pattern == "a\\.b\\[\\*\\]\\+\\(c\\)");
}

TEST_CASE("recursive cycles degrade to approximation flags") {
    ExirProgram p = parse_program(
        "method R::a(int) {\n"
        "  n := param 0\n"
        "  if n < 9 goto L1\n"
        "  throw AErr \"a\"\n"
        "L1:\n"
        "  call R::b(n)\n"
        "  return\n"
        "}\n"
        "method R::b(int) {\n"
        "  m := param 0\n"
        "  if m > 0 goto L1\n"
        "  throw BErr \"b\"\n"
        "L1:\n"
        "  call R::a(m)\n"
        "  return\n"
        "}\n",
        "t");
    ExtractionResult r = extract_summaries(p, {Mode::Inter, 256, 16, 64});
    const auto& a = r.per_method[0];
    const auto& b = r.per_method[1];
    // a is analyzed first in the cycle: its call to b is dropped
    REQUIRE(a.size() == 1);
    CHECK(a[0].recursive_approx);
    // b lifts a's summary and inherits the flag
    REQUIRE(b.size() == 2);
    const ThrowSummary* own = find(b, "BErr");
    const ThrowSummary* lifted = find(b, "AErr");
    REQUIRE(own != nullptr);
    REQUIRE(lifted != nullptr);
    CHECK(lifted->recursive_approx);
    CHECK(lifted->call_chain == std::vector<std::string>{"R::a(int)"});
    for (int visits : r.stats.method_visits) CHECK(visits == 1);
}

TEST_CASE("unreachable throws are kept and flagged") {
    ExirProgram p = parse_program(
        "method U::u() {\n  return\n  throw E \"never\"\n}\n", "t");
    ExtractionResult r = extract_summaries(p, {Mode::Inter, 256, 16, 64});
    REQUIRE(r.per_method[0].size() == 1);
    const ThrowSummary& s = r.per_method[0][0];
    CHECK(s.unreachable);
    CHECK(s.precondition.is_false());
    CHECK(s.key_precondition.is_false());
}

TEST_CASE("unreachable call sites are skipped") {
    ExirProgram p = parse_program(
        "method U::v() {\n  return\n  call U::w()\n}\n"
        "method U::w() {\n  throw E \"x\"\n}\n",
        "t");
    ExtractionResult r = extract_summaries(p, {Mode::Inter, 256, 16, 64});
    CHECK(r.per_method[0].empty());
    CHECK(r.per_method[1].size() == 1);
}

TEST_CASE("unknown atoms mark summaries imprecise") {
    ExirProgram p = parse_program(
        "field M.COUNTER := 0\n"
        "method M::unk() {\n"
        "  x := field M.COUNTER\n"
        "  if x > 0 goto L1\n"
        "  throw E \"u\"\n"
        "L1:\n"
        "  return\n"
        "}\n"
        "method M::bump() {\n"
        "  field M.COUNTER := 1\n"
        "  return\n"
        "}\n",
        "t");
    ExtractionResult r = extract_summaries(p, {Mode::Inter, 256, 16, 64});
    REQUIRE(r.per_method[0].size() == 1);
    CHECK(r.per_method[0][0].imprecise);
    // folding complements the comparison even over an unknown
    CHECK(pre(r.per_method[0][0]) == "(? <= 0)");
}
