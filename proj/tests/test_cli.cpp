#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"

#include "json.hpp"
#include "maxclust/cli.hpp"

namespace {

  struct Result {
    int         code;
    std::string out;
    std::string err;
  };

  Result run(std::vector<std::string> const& args) {
    std::ostringstream out;
    std::ostringstream err;
    int const          code = maxclust::cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  nlohmann::json run_json(std::vector<std::string> args, std::string const& kind) {
    args.emplace_back("--format");
    args.emplace_back("json");
    auto r = run(args);
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["schema"] == "maxclust/" + kind);
    REQUIRE(j["version"] == 1);
    return j;
  }

  bool contains(std::string const& hay, std::string const& needle) {
    return hay.find(needle) != std::string::npos;
  }

}  // namespace

TEST_CASE("cli classify", "[cli]") {
  auto r = run({"classify", "--graph", "A2", "--word", "1,2,1"});
  REQUIRE(r.code == 0);
  REQUIRE(contains(r.out, "MC=yes FB=yes FC=no"));
  REQUIRE(contains(r.out, "N=1 N~=1"));

  auto j = run_json({"classify", "--graph", "A2", "--word", "1,2,1"}, "triples");
  REQUIRE(j["n_w"] == 1);
  REQUIRE(j["n_tilde_w"] == 1);
  REQUIRE(j["flags"]["maximally_clustered"] == true);
  REQUIRE(j["flags"]["freely_braided"] == true);
  REQUIRE(j["flags"]["fully_commutative"] == false);

  auto l = run({"classify", "--graph", "A3", "--word", "1 2 1 3 2 1"});
  REQUIRE(l.code == 0);
  REQUIRE(contains(l.out, "MC=no"));
  REQUIRE(contains(l.out, "N=4 N~=3"));
}

TEST_CASE("cli mc-all and census", "[cli]") {
  auto r = run({"mc-all", "--graph", "A3", "--count"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "21\n");

  auto j = run_json({"mc-all", "--graph", "A2"}, "mc-all");
  REQUIRE(j["count"] == 6);
  REQUIRE(j["elements"].size() == 6);
  REQUIRE(j["frontier_empty"] == true);

  auto tri = R"({"vertices":[1,2,3],"edges":[[1,2],[2,3],[1,3]]})";
  auto refused = run({"mc-all", "--graph", tri, "--count"});
  REQUIRE(refused.code == 1);
  REQUIRE(contains(refused.err, "error:"));
  auto forced = run({"mc-all", "--graph", tri, "--count", "--override-finiteness",
                     "--max-length", "4"});
  REQUIRE(forced.code == 0);

  auto c = run_json({"census", "--graph", "A3", "--max-length", "6"}, "census");
  std::size_t total = 0, mc = 0;
  for (auto const& row : c["rows"]) {
    total += row["total"].get<std::size_t>();
    mc += row["mc"].get<std::size_t>();
  }
  REQUIRE(total == 24);
  REQUIRE(mc == 21);
  auto text = run({"census", "--graph", "A2", "--max-length", "3"});
  REQUIRE(text.code == 0);
  REQUIRE(contains(text.out, "length"));
}

TEST_CASE("cli graph", "[cli]") {
  auto r = run({"graph", "E6"});
  REQUIRE(r.code == 0);
  REQUIRE(contains(r.out, "mc_finite=true"));
  auto j = run_json({"graph", "--graph", "E6"}, "finiteness");
  REQUIRE(j["mc_finite"] == true);
  auto s = run({"graph", "vertices: [0,1,2,3,4,5,6]\nedges: [[0,1],[1,2],[0,3],[3,4],[0,5],[5,6]]"});
  REQUIRE(s.code == 0);
  REQUIRE(contains(s.out, "mc_finite=false"));
  REQUIRE(run({"graph"}).code == 2);
  REQUIRE(run({"graph", "Q7"}).code == 1);
}

TEST_CASE("cli word commands", "[cli]") {
  auto rs = run_json({"rootseq", "--graph", "A3", "--word", "1,2"}, "rootseq");
  REQUIRE(rs["roots"] == nlohmann::json::parse("[[0,1,0],[1,1,0]]"));

  auto mv = run_json({"moves", "--graph", "A2", "--word", "1,2,1"}, "moves");
  REQUIRE(mv["moves"].size() == 1);
  auto cl = run({"moves", "--graph", "A3", "--word", "1,2,1,3,2,1", "--closure", "--count"});
  REQUIRE(cl.code == 0);
  REQUIRE(cl.out == "16\n");
  auto sh = run_json({"moves", "--graph", "A3", "--word", "1,3", "--short-only"}, "words");
  REQUIRE(sh["count"] == 2);

  auto ct = run({"contract", "--graph", "A3", "--word", "1,2,3,1"});
  REQUIRE(ct.code == 0);
  REQUIRE(ct.out == "[1 2 1] 3\n");
  auto cj = run_json({"contract", "--graph", "A3", "--word", "3,1,2,1"}, "contracted");
  REQUIRE(cj["bracketed"] == "3 [1 2 1]");

  auto pi = run({"pi", "--graph", "A3", "--word", "3,1,2,1"});
  REQUIRE(pi.code == 0);
  REQUIRE(pi.out == "3,2,1\nN~=0\n");
  auto pf = run_json({"pi", "--graph", "D4", "--word", "2,1,3,4,2,4,3,1"}, "pi");
  REQUIRE(pf["image"] == nlohmann::json::parse("[2,4,3,1]"));
  auto full = run_json({"pi", "--graph", "A3", "--word", "1,2,3,2,1", "--full"}, "pi");
  REQUIRE(full["image"] == nlohmann::json::parse("[3,2,1]"));
  REQUIRE(full["n_w"] == 0);
}

TEST_CASE("cli exit codes", "[cli]") {
  REQUIRE(run({}).code == 2);
  REQUIRE(run({"bogus"}).code == 2);
  REQUIRE(run({"classify", "--graph", "A2"}).code == 2);
  REQUIRE(run({"classify", "--graph", "A2", "--word", "1", "--format", "xml"}).code == 2);
  REQUIRE(run({"--help"}).code == 0);

  auto bad_letter = run({"classify", "--graph", "A2", "--word", "1,7"});
  REQUIRE(bad_letter.code == 1);
  REQUIRE(contains(bad_letter.err, "error:"));
  REQUIRE(run({"classify", "--graph", "A2", "--word", "1,1"}).code == 1);
  REQUIRE(run({"contract", "--graph", "A3", "--word", "1,2,1,3,2,1"}).code == 1);
  REQUIRE(run({"pi", "--graph", "A2", "--word", "1,2,1", "--index", "2"}).code == 1);
  auto tri = R"({"vertices":[1,2,3],"edges":[[1,2],[2,3],[1,3]]})";
  REQUIRE(run({"pi", "--graph", tri, "--word", "1,2,1"}).code == 1);
}

TEST_CASE("cli reads @file arguments", "[cli]") {
  auto dir = std::filesystem::temp_directory_path() / "maxclust_cli_test";
  std::filesystem::create_directories(dir);
  auto gpath = dir / "g.json";
  auto wpath = dir / "w.txt";
  std::ofstream(gpath) << R"({"vertices":[1,2],"edges":[[1,2]]})";
  std::ofstream(wpath) << "1 2 1\n";
  auto r = run({"classify", "--graph", "@" + gpath.string(), "--word", "@" + wpath.string()});
  REQUIRE(r.code == 0);
  REQUIRE(contains(r.out, "N=1 N~=1"));
  auto plain = run({"graph", gpath.string()});
  REQUIRE(plain.code == 0);
  REQUIRE(contains(plain.out, "mc_finite=true"));
  REQUIRE(run({"graph", "@" + (dir / "missing").string()}).code == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli output is deterministic", "[cli]") {
  std::vector<std::vector<std::string>> calls{
      {"mc-all", "--graph", "D4", "--format", "json"},
      {"census", "--graph", "E6", "--max-length", "6"},
      {"moves", "--graph", "A3", "--word", "1,2,1,3,2,1", "--closure"},
      {"classify", "--graph", "D4", "--word", "2,1,3,2,4,2,1,3,2", "--format", "json"},
  };
  for (auto const& c : calls) {
    auto first  = run(c);
    auto second = run(c);
    REQUIRE(first.code == 0);
    REQUIRE(first.out == second.out);
  }
}
