#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fcat/commands.hpp"

#include <fstream>
#include <sstream>

using namespace fcat;

namespace {

Config builtin(const std::string& name) {
  const std::string* text = find_builtin_config(name);
  REQUIRE_UNARY(text != nullptr);
  return parse_config_text(*text, name);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_UNARY(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("shipped configs parse and define the expected objects") {
  const Config cfg = builtin("a2_tilt_pos");
  CHECK(cfg.quiver->num_vertices() == 2);
  CHECK(cfg.find_rep("S1") != nullptr);
  CHECK(cfg.find_rep("P1") != nullptr);
  CHECK(cfg.torsion_pairs.size() == 1);
  CHECK(cfg.torsion_pairs[0].first == "TILT_POS");
  CHECK(cfg.tstructure.kind == TStructureSpec::Kind::tilt);
  CHECK(cfg.probes.size() == 3);
  CHECK(cfg.probes[2].name == "S2[1]");
  CHECK(cfg.generators.size() == 3);
  CHECK(cfg.find_heart_complex("K") != nullptr);
}

TEST_CASE("unresolved torsion generator names are rejected precisely") {
  const std::string text = R"(
quiver { vertices = [ "1", "2" ]  arrow "a" { from = "1"  to = "2" } }
rep "S1" { dim "1" = 1 }
torsion "T" { generators = [ "S9" ] }
)";
  try {
    parse_config_text(text, "bad");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(
              "unresolved name S9 at torsion.generators[0]") !=
          std::string::npos);
  }
}

TEST_CASE("matrix shape errors name the offending arrow") {
  const std::string text = R"(
quiver { vertices = [ "1", "2" ]  arrow "a" { from = "1"  to = "2" } }
rep "B" { dim "1" = 3  dim "2" = 2  map "a" = [ [ 1, 0 ], [ 0, 1 ] ] }
)";
  try {
    parse_config_text(text, "bad");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("arrow a") != std::string::npos);
    CHECK(msg.find("2x3") != std::string::npos);
  }
}

TEST_CASE("missing files and syntax errors are distinct failures") {
  CHECK_THROWS_AS(parse_config_file("/nonexistent/path.cfg"), Error);
  CHECK_THROWS_AS(parse_config_text("quiver {", "bad"), ParseError);
  CHECK_THROWS_AS(parse_config_text("= 3", "bad"), ParseError);
  CHECK_THROWS_AS(parse_config_text("rep \"X\" { dim \"1\" = }", "bad"),
                  ParseError);
}

TEST_CASE("embedded configs mirror the files shipped under tools/configs") {
  for (const auto& [name, text] : builtin_configs()) {
    const std::string path =
        std::string(FCAT_SOURCE_DIR) + "/tools/configs/" + name + ".cfg";
    CHECK(slurp(path) == text);
  }
}

TEST_CASE("machine reports parse under the same grammar and stay stable") {
  const Config cfg = builtin("a2_standard");
  RunOptions opts;
  opts.samples = 3;
  const Report r1 = run_command("check-axioms", cfg, opts);
  const Report r2 = run_command("check-axioms", cfg, opts);
  CHECK(r1.machine_text() == r2.machine_text());
  CHECK_NOTHROW(parse_config_syntax(r1.machine_text()));
  // Human report differs only in presentation.
  CHECK(r1.human_text().find("summary:") != std::string::npos);
}

TEST_CASE("seed overrides change the machine report") {
  const Config cfg = builtin("a2_standard");
  RunOptions a, b;
  a.samples = b.samples = 3;
  a.seed = 11;
  b.seed = 12;
  CHECK(run_command("check-axioms", cfg, a).machine_text() !=
        run_command("check-axioms", cfg, b).machine_text());
}

TEST_CASE("verify-equivalence exit codes reflect the verdict") {
  CHECK(run_command("verify-equivalence", builtin("a2_tilt_pos")).exit_code(false) == 0);
  CHECK(run_command("verify-equivalence", builtin("a2_tilt_neg")).exit_code(false) == 1);
}

TEST_CASE("realize demo recovers the documented quasi-isomorphism classes") {
  {
    const Report rep = run_command("realize", builtin("a2_standard"));
    // [P1 -> S1] realizes to S2.
    bool found = false;
    for (const CheckResult& c : rep.checks)
      if (c.name == "realize/H^0" && c.witness == "dims = (0,1)") found = true;
    CHECK(found);
  }
  {
    const Report rep = run_command("realize", builtin("a2_tilt_pos"));
    bool found = false;
    for (const CheckResult& c : rep.checks)
      if (c.name == "realize/H^0" && c.witness == "dims = (1,1)") found = true;
    CHECK(found);
  }
}

TEST_CASE("unknown command and missing sections raise errors") {
  const Config cfg = builtin("a2_standard");
  CHECK_THROWS_AS(run_command("frobnicate", cfg), Error);
  const std::string no_probes = R"(
quiver { vertices = [ "1" ] }
rep "S" { dim "1" = 1 }
tstructure { kind = "standard" }
)";
  const Config cfg2 = parse_config_text(no_probes, "min");
  CHECK_THROWS_AS(run_command("ext-table", cfg2), Error);
  CHECK_THROWS_AS(run_command("realize", cfg2), Error);
  CHECK_THROWS_AS(run_command("functoriality", cfg2), Error);
}

TEST_CASE("parser survives truncated and mangled inputs") {
  const std::string* base = find_builtin_config("a2_tilt_pos");
  REQUIRE_UNARY(base != nullptr);
  // Truncations at every prefix length step: must throw, never crash.
  for (std::size_t len = 0; len < base->size(); len += 37) {
    try {
      parse_config_text(base->substr(0, len), "fuzz");
    } catch (const Error&) {
      // expected for most prefixes
    }
  }
  // Character smudges.
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    std::string s = *base;
    const std::size_t at = static_cast<std::size_t>(
        rng.range(0, static_cast<long>(s.size()) - 1));
    s[at] = static_cast<char>("{}[]=\"#x7"[rng.range(0, 8)]);
    try {
      parse_config_text(s, "fuzz");
    } catch (const Error&) {
    }
  }
  CHECK(true);  // reached without crashing
}

TEST_CASE("ext-table on a2_standard matches the resolution computations") {
  const Report rep = run_command("ext-table", builtin("a2_standard"));
  auto dim_of = [&](const std::string& name) -> std::string {
    for (const CheckResult& c : rep.checks)
      if (c.name == name) return c.witness;
    return "missing";
  };
  CHECK(dim_of("ext/S1/S2/1") == "dim = 1");
  CHECK(dim_of("ext/S2/S1/1") == "dim = 0");
  CHECK(dim_of("ext/S1/S1/0") == "dim = 1");
  for (const CheckResult& c : rep.checks)
    if (c.name.size() > 2 && c.name.back() == '2')
      CHECK(c.witness == "dim = 0");
}
