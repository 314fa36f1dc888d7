#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dglakit/cli.hpp"

using namespace dglakit;

namespace {

CommandOutput run(std::initializer_list<std::string> args) { return run_command(std::vector<std::string>(args)); }

}  // namespace

TEST_CASE("dgla check passes on heisenberg") {
  auto out = run({"dgla", "check", "heisenberg", "--json"});
  CHECK(out.exit_code == 0);
  CHECK(out.report["verdict"] == "pass");
  CHECK(out.report["checks"].size() == 4);
}

TEST_CASE("kuranishi on the nonformal control") {
  auto out = run({"kuranishi", "--order", "3", "nonformal"});
  CHECK(out.exit_code == 0);
  REQUIRE(out.report["ideal_generators"].size() == 1);
  CHECK(out.report["ideal_generators"][0] == "x1^2*x2");
  CHECK(out.report["quadraticity"] == "NotEqualAtOrder(3)");
  CHECK(out.report["gauge_spot_check"]["passed"] == true);
}

TEST_CASE("formality bmm verdicts") {
  auto ok = run({"formality", "bmm", "commuting", "--pairing", "trace"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.report["verdict"] == "Certified");
  auto na = run({"formality", "bmm", "nonformal-control"});
  CHECK(na.exit_code == 1);
  CHECK(na.report["verdict"] == "NotApplicable");
}

TEST_CASE("quiver and homalg commands") {
  CHECK(run({"quiver", "compare", "point-model"}).exit_code == 0);
  auto eq = run({"quiver", "equations", "loop-n2"});
  CHECK(eq.report["span_dim"] == 3);
  CHECK(run({"quiver", "moment", "two-vertex", "--seed", "7", "--samples", "5"}).exit_code == 0);
  auto res = run({"homalg", "resolve", "a2-simple"});
  CHECK(res.exit_code == 0);
  CHECK(res.report["term_count"] == 2);
  CHECK(run({"homalg", "pairing", "q-three-term"}).exit_code == 0);
  CHECK(run({"homalg", "endo-dgla", "a2-swap-equivariant"}).exit_code == 0);
}

TEST_CASE("errors exit with code 2") {
  auto unknown = run({"sheaf", "check"});
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.report["error"]["kind"] == "UnknownCommand");
  CHECK(run({"dgla", "frobnicate", "heisenberg"}).exit_code == 2);
  auto missing = run({"dgla", "check", "no-such-fixture"});
  CHECK(missing.exit_code == 2);
  CHECK(missing.report["error"]["kind"] == "InvalidArgument");
  auto arity = run({"formality", "transfer", "--arity", "7", "heisenberg"});
  CHECK(arity.exit_code == 2);
  CHECK(arity.report["error"]["kind"] == "UnsupportedArity");
  CHECK(run({"dgla", "split", "abelian", "--equivariant"}).report["error"]["kind"] == "NoAction");
  CHECK(run({"quiver", "build", "heisenberg"}).exit_code == 2);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  for (auto args : {std::vector<std::string>{"quiver", "moment", "loop-n2", "--seed", "11", "--json"},
                    std::vector<std::string>{"kuranishi", "--order", "4", "commuting", "--seed", "5"}}) {
    const auto a = run_command(args), b = run_command(args);
    CHECK(a.text == b.text);
  }
  CHECK(run({"fixtures", "emit", "heisenberg"}).text == run({"fixtures", "emit", "heisenberg.json"}).text);
}

TEST_CASE("text output is aligned") {
  auto out = run({"dgla", "cohomology", "heisenberg"});
  CHECK(out.text.find("dims.1") != std::string::npos);
  const std::string text = out.text;
  std::size_t col = std::string::npos;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string line = text.substr(start, end - start);
    const std::size_t key_end = line.find("  ");
    const std::size_t value = line.find_first_not_of(' ', key_end);
    if (col == std::string::npos) col = value;
    CHECK(value == col);
    start = end + 1;
  }
}
