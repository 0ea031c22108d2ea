#include <doctest.h>

#include "polaris/core/text.hpp"
#include "polaris/policylang/patch.hpp"

using namespace polaris;
using namespace polaris::policylang;

namespace {
const std::string kFive = "l1\nl2\nl3\nl4\nl5\n";
}

TEST_CASE("empty patch is byte identity") {
  CHECK(apply_patch(kFive, {}) == kFive);
  CHECK(apply_patch("no newline", {}) == "no newline");
}

TEST_CASE("replace one line") {
  const auto out = apply_patch(kFive, {{ReplaceOp{3, 3, {"LET retries = 2"}}}});
  CHECK(out == "l1\nl2\nLET retries = 2\nl4\nl5\n");
}

TEST_CASE("delete then insert in one patch keeps length") {
  const AnchoredPatch p{{DeleteOp{2, 3}, InsertAfterOp{1, {"a", "b"}}}};
  const auto out = apply_patch(kFive, p);
  // independent splice: keep line 1, add a and b, drop 2-3, keep 4-5
  CHECK(out == "l1\na\nb\nl4\nl5\n");
  CHECK(text::split_lines(out).size() == 5);
}

TEST_CASE("insert at the top and after the last line") {
  CHECK(apply_patch("x\n", {{InsertAfterOp{0, {"top"}}}}) == "top\nx\n");
  CHECK(apply_patch("x\n", {{InsertAfterOp{1, {"end"}}}}) == "x\nend\n");
  CHECK(apply_patch("x", {{InsertAfterOp{1, {"end"}}}}) == "x\nend");
}

TEST_CASE("bounds and overlap are enforced") {
  CHECK_THROWS_AS(check_patch({{ReplaceOp{4, 6, {"x"}}}}, 5), PatchError);
  CHECK_THROWS_AS(check_patch({{DeleteOp{0, 1}}}, 5), PatchError);
  CHECK_THROWS_AS(check_patch({{DeleteOp{3, 2}}}, 5), PatchError);
  CHECK_THROWS_AS(check_patch({{InsertAfterOp{6, {"x"}}}}, 5), PatchError);
  CHECK_THROWS_AS(check_patch({{ReplaceOp{1, 3, {"x"}}, DeleteOp{3, 4}}}, 5), PatchError);
  CHECK_THROWS_AS(check_patch({{InsertAfterOp{2, {"x"}}, InsertAfterOp{2, {"y"}}}}, 5), PatchError);
  CHECK_THROWS_AS(check_patch({{ReplaceOp{2, 3, {"x"}}, InsertAfterOp{2, {"y"}}}}, 5), PatchError);
  // touching spans do not overlap
  CHECK_NOTHROW(check_patch({{ReplaceOp{1, 2, {"x"}}, DeleteOp{3, 4}, InsertAfterOp{4, {"y"}}}}, 5));
  CHECK_NOTHROW(check_patch({{InsertAfterOp{2, {"y"}}, ReplaceOp{3, 3, {"x"}}}}, 5));
  CHECK_THROWS_AS(apply_patch(kFive, {{DeleteOp{5, 6}}}), PatchError);
}

TEST_CASE("patch body parsing and formatting") {
  const auto p = parse_patch_body(
      "@ REPLACE 2-3\n"
      "new two\n"
      "new three\n"
      "@ INSERT AFTER 5\n"
      "tail\n"
      "@ DELETE 1-1\n");
  REQUIRE(p.ops.size() == 3);
  CHECK(std::get<ReplaceOp>(p.ops[0]) == ReplaceOp{2, 3, {"new two", "new three"}});
  CHECK(std::get<InsertAfterOp>(p.ops[1]) == InsertAfterOp{5, {"tail"}});
  CHECK(std::get<DeleteOp>(p.ops[2]) == DeleteOp{1, 1});
  CHECK(parse_patch_body(format_patch_body(p)) == p);
  CHECK(std::get<ReplaceOp>(parse_patch_body("@ REPLACE 4\nx\n").ops[0]) == ReplaceOp{4, 4, {"x"}});
}

TEST_CASE("malformed patch bodies") {
  CHECK_THROWS_AS(parse_patch_body(""), PatchError);
  CHECK_THROWS_AS(parse_patch_body("text first\n@ DELETE 1-1\n"), PatchError);
  CHECK_THROWS_AS(parse_patch_body("@ REPLACE 1-2\n"), PatchError);
  CHECK_THROWS_AS(parse_patch_body("@ MOVE 1-2\nx\n"), PatchError);
  CHECK_THROWS_AS(parse_patch_body("@ DELETE 1-2\nstray\n"), PatchError);
  CHECK_THROWS_AS(parse_patch_body("@ REPLACE a-b\nx\n"), PatchError);
}

TEST_CASE("merged patches from one cycle") {
  const auto merged = merge_patches({parse_patch_body("@ REPLACE 1\nx\n"), parse_patch_body("@ DELETE 4-5\n")});
  CHECK(merged.ops.size() == 2);
  CHECK(apply_patch(kFive, merged) == "x\nl2\nl3\n");
}

TEST_CASE("response sections") {
  const std::string response =
      "Here you go.\n"
      "### Strategy: Keep the sign\n"
      "### Patch:\n"
      "```\n"
      "@ REPLACE 2\n"
      "x\n"
      "```\n"
      "**### Strategy:** Accept decimals\n"
      "### Patch:\n"
      "@ DELETE 3-3\n";
  const auto s = parse_patch_sections(response);
  REQUIRE(s.size() == 2);
  CHECK(s[0].strategy == "Keep the sign");
  CHECK(parse_patch_body(s[0].body) == parse_patch_body("@ REPLACE 2\nx\n"));
  CHECK(s[1].strategy == "Accept decimals");
  CHECK(parse_patch_sections(format_patch_sections(s)).size() == 2);
}

TEST_CASE("number_lines") { CHECK(number_lines("a\nb\n") == "  1| a\n  2| b\n"); }
