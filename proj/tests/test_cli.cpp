#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "pats/cli.hpp"
#include "pats/identities.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pats;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run pats_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pats-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("usage errors") {
  CHECK(pats_run({}).code == cli::kUsage);
  CHECK(pats_run({"bogus"}).code == cli::kUsage);
  CHECK(pats_run({"identities"}).code == cli::kUsage);
  CHECK(pats_run({"identities", "--degree", "4"}).code == cli::kUsage);
  CHECK(pats_run({"straighten", "(a,b"}).code == cli::kUsage);
  CHECK(pats_run({"ranks", "--partition", "52", "--degree", "9"}).code == cli::kUsage);
  CHECK(pats_run({"types", "--degree", "5", "--format", "xml"}).code == cli::kUsage);
  CHECK(pats_run({"reproduce", "table9"}).code == cli::kUsage);
}

TEST_CASE("straighten") {
  const Run r = pats_run({"straighten", "(a,c,b)"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "-(a,b,c)\n");
  CHECK(pats_run({"straighten", "(a,b,b)"}).out == "0\n");
}

TEST_CASE("types as csv") {
  const Run r = pats_run({"types", "--degree", "5", "--format", "csv"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("kind,index,type,countsymmetry,monomials\n", 0) == 0);
}

TEST_CASE("identities round-trip through json") {
  const Run r = pats_run({"identities", "--degree", "5", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const json j = json::parse(r.out);
  CHECK(j.at("field") == "Q");
  REQUIRE(j.at("identities").size() == 40u);
  for (const auto& rec : j.at("identities")) {
    TernaryPolynomial p(5);
    for (const auto& t : rec.at("terms"))
      p.add(TernaryMonomial::parse(t.at("monomial").get<std::string>()), parse_rational(t.at("coefficient").get<std::string>()));
    CHECK(p.size() == rec.at("term_count").get<std::size_t>());
    CHECK(is_identity(p));
  }
  // deterministic
  CHECK(pats_run({"identities", "--degree", "5", "--format", "json"}).out == r.out);
}

TEST_CASE("manifest") {
  const fs::path dir = scratch("manifest");
  const std::string path = (dir / "m.json").string();
  const Run a = pats_run({"identities", "--degree", "3", "--manifest", path});
  REQUIRE(a.code == cli::kOk);
  json first;
  std::ifstream(path) >> first;
  CHECK(first.at("command") == "identities");
  CHECK(first.at("version") == "0.1.0");
  CHECK(first.at("parameters").at("degree") == 3);
  CHECK(first.at("digest").get<std::string>().size() == 64u);

  pats_run({"identities", "--degree", "3", "--format", "json", "--manifest", path});
  json second;
  std::ifstream(path) >> second;
  CHECK(second.at("digest") == first.at("digest"));
  fs::remove_all(dir);
}

TEST_CASE("reproduce detects a mismatch") {
  CHECK(pats_run({"reproduce", "table1"}).code == cli::kOk);

  const fs::path dir = scratch("golden");
  json golden;
  std::ifstream(fs::path(PATS_GOLDEN_DIR) / "table2.json") >> golden;
  golden["expected"]["5"]["pa"].push_back("(a,b,(c,d,e))");
  std::ofstream(dir / "table2.json") << golden.dump(2);
  const Run r = pats_run({"reproduce", "table2", "--golden-dir", dir.string()});
  CHECK(r.code == cli::kMismatch);
  fs::remove_all(dir);
}

TEST_CASE("degree9 resumes from its output directory") {
  const fs::path dir = scratch("degree9");
  const std::vector<std::string> args{"degree9", "--partition", "9", "--out-dir", dir.string()};
  REQUIRE(pats_run(args).code == cli::kOk);
  const fs::path file = dir / "partition-9.json";
  REQUIRE(fs::exists(file));

  json row;
  std::ifstream(file) >> row;
  CHECK(row.at("symlifrank") == 12);
  // a cached row is trusted, so a corrupted value surfaces as a mismatch
  row["symlifrank"] = 11;
  std::ofstream(file) << row.dump();
  const Run again = pats_run(args);
  CHECK(again.code == cli::kMismatch);
  CHECK(again.out.find("resumed 1 partition") != std::string::npos);

  // a truncated file is recomputed
  std::ofstream(file) << "{\"dimension\": ";
  CHECK(pats_run(args).code == cli::kOk);
  fs::remove_all(dir);
}
