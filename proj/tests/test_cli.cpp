#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dqa/cli.hpp"
#include "dqa/parser.hpp"

using namespace dqa;

namespace {

std::string fixture(const std::string &name) {
  std::ifstream in(std::string(DQA_FIXTURE_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto &entry : std::filesystem::directory_iterator(DQA_FIXTURE_DIR))
    if (entry.path().extension() == ".endo")
      out.push_back(entry.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

cli::Result run_text(const std::string &command, const std::string &text) {
  cli::Args args;
  args.input_text = text;
  return cli::run(command, args);
}

} // namespace

TEST_CASE("endo file examples") {
  EndoFile w = parse_endo_file("ring=F2 kind=weyl n=1\nY1 -> Y1\nY2 -> Y2 + Y1^2");
  CHECK(w.kind == EndoKind::weyl);
  CHECK(w.weyl_endo().degree() == 2);
  EndoFile p = parse_endo_file("ring=Q kind=poisson n=1\nX1 -> X1 + X2^2\nX2 -> X2");
  CHECK(p.nvars == 2);
  CHECK(p.poly_endo().image(0).to_string() == "X1 + X2^2");
  CHECK_THROWS_AS(parse_endo_file("ring=F4 kind=poly n=1\nX1 -> X1\n"), ParseError);
}

TEST_CASE("endo file errors carry positions") {
  try {
    parse_endo_file("ring=Q kind=poly n=2\n# comment\nX1 -> X1 + * X2\nX2 -> X2\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 12);
  }
  CHECK_THROWS_AS(parse_endo_file("ring=Q kind=poly n=2\nX1 -> X1\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring=Q kind=poly n=2\nX1 -> X3\nX2 -> X2\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring=Q kind=poly n=1\nX1 -> X1\nX1 -> X1\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring=Q kind=weyl n=1\nY1 -> X1\nY2 -> Y2\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring=Q kind=poly n=1\nX1 -> 2X1\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring=Z kind=poly n=1\nX1 -> X1/2\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file("ring=Q kind=poly n=1\nX1 -> X1/X1\n"), ParseError);
  CHECK_THROWS_AS(parse_endo_file(""), ParseError);
}

TEST_CASE("round trip over the fixture corpus") {
  for (const auto &name : fixture_names()) {
    CAPTURE(name);
    EndoFile file;
    try {
      file = parse_endo_file(fixture(name));
    } catch (const ParseError &) {
      continue;
    }
    std::string printed = print_endo_file(file);
    CHECK(parse_endo_file(printed) == file);
    CHECK(print_endo_file(parse_endo_file(printed)) == printed);
  }
}

TEST_CASE("reduce golden output") {
  cli::Result r = run_text("reduce", fixture("f2_shear.endo"));
  CHECK(r.exit_code == 0);
  CHECK(r.report["payload"]["phi0"] == cli::Json({"X1 -> X1", "X2 -> X2 + X1^2"}));
  CHECK(r.report["flags"]["symplectic"] == true);
}

TEST_CASE("check-symplectic on a scaling is not a falsification") {
  cli::Result r = run_text("check-symplectic", fixture("q_scaling.endo"));
  CHECK(r.exit_code == 0);
  CHECK(r.report["flags"]["symplectic"] == false);
  CHECK(r.report["verdict"] == "not-symplectic");
}

TEST_CASE("input errors exit with 2") {
  cli::Result r = run_text("reduce", fixture("bad_modulus.endo"));
  CHECK(r.exit_code == 2);
  CHECK(r.report["verdict"] == "input-error");
  CHECK(cli::run("no-such-command", {}).exit_code == 2);
  CHECK(cli::run("check-instance", {}).exit_code == 2);
  cli::Args args;
  args.input_text = fixture("f2_shear.endo");
  args.tag = "NJC";
  CHECK(cli::run("check-instance", args).exit_code == 2);
  args.tag = "BOGUS";
  CHECK(cli::run("check-instance", args).exit_code == 2);
}

TEST_CASE("check-instance finds the naive counterexamples") {
  cli::Args args;
  args.input_text = fixture("f2_naive_dixmier.endo");
  args.tag = "NDC";
  cli::Result r = cli::run("check-instance", args);
  CHECK(r.exit_code == 1);
  CHECK(r.report["tag"] == "NDC");
  CHECK(r.report["verdict"] == "counterexample");
  CHECK(r.report["flags"]["automorphism"] == "proven-no");
}

TEST_CASE("suite golden verdicts") {
  cli::Result r = cli::run("suite", {});
  CHECK(r.exit_code == 0);
  const auto &entries = r.report["payload"]["entries"];
  CHECK(entries.size() == 12);
  for (const auto &e : entries) {
    CHECK(e["automorphism"] == "proven-no");
    CHECK(e["ok"] == true);
  }
  CHECK(r.report["payload"]["kraus"]["all_reducible"] == true);
}

TEST_CASE("identical inputs give byte-identical reports") {
  for (const auto &command : {"reduce", "probe-chain", "invert-weyl"}) {
    std::string a = run_text(command, fixture("f2_shear.endo")).report.dump();
    std::string b = run_text(command, fixture("f2_shear.endo")).report.dump();
    CHECK(a == b);
  }
  cli::Args args;
  args.input_text = fixture("f3_cjc_instance.endo");
  args.tag = "CJC";
  args.seed = 9;
  CHECK(cli::run("check-instance", args).report.dump() == cli::run("check-instance", args).report.dump());
}

TEST_CASE("sha256") {
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
