#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "catch2/catch_amalgamated.hpp"

#include "maxclust/enumerate.hpp"
#include "oracles.hpp"

using maxclust::CensusRow;
using maxclust::Word;

namespace {

  std::size_t sum(std::vector<CensusRow> const& rows, std::size_t CensusRow::*field) {
    std::size_t s = 0;
    for (auto const& r : rows) {
      s += r.*field;
    }
    return s;
  }

  std::vector<std::size_t> column(std::vector<CensusRow> const& rows,
                                  std::size_t CensusRow::*field) {
    std::vector<std::size_t> out;
    for (auto const& r : rows) {
      out.push_back(r.*field);
    }
    return out;
  }

  // Lexicographically least reduced word of every MC element, from the model.
  std::vector<Word> mc_by_filter(maxclust::CoxeterGraph const& g, oracle::Model const& m) {
    std::vector<Word> out;
    for (auto const& layer : m.all_elements()) {
      std::vector<Word> words;
      for (auto const& w : layer) {
        if (maxclust::is_maximally_clustered(g, w)) {
          words.push_back(*m.reduced_words(w).begin());
        }
      }
      std::sort(words.begin(), words.end());
      out.insert(out.end(), words.begin(), words.end());
    }
    return out;
  }

  maxclust::CoxeterGraph triangle() {
    return maxclust::parse_graph(
        R"({"vertices":[1,2,3],"edges":[[1,2],[2,3],[1,3]]})");
  }

}  // namespace

TEST_CASE("enumerate_by_length on small groups", "[enumerate]") {
  auto a2   = maxclust::parse_graph("A2");
  auto rows = maxclust::enumerate_by_length(a2, 3);
  REQUIRE(column(rows, &CensusRow::total) == std::vector<std::size_t>{1, 2, 2, 1});
  REQUIRE(column(rows, &CensusRow::mc) == column(rows, &CensusRow::total));
  REQUIRE(sum(rows, &CensusRow::fc) == 5);
  for (std::size_t l = 0; l < rows.size(); ++l) {
    REQUIRE(rows[l].length == l);
  }

  auto a3 = maxclust::parse_graph("A3");
  auto r3 = maxclust::enumerate_by_length(a3, 6);
  REQUIRE(sum(r3, &CensusRow::total) == 24);
  REQUIRE(sum(r3, &CensusRow::mc) == 21);
  REQUIRE(sum(r3, &CensusRow::fc) == 14);

  // past the longest element there are no more rows
  REQUIRE(maxclust::enumerate_by_length(a3, 20).size() == 7);
  REQUIRE(maxclust::enumerate_by_length(a3, 0).size() == 1);
}

TEST_CASE("census agrees with the permutation models", "[enumerate]") {
  for (int n = 1; n <= 4; ++n) {
    auto g     = maxclust::type_a(n);
    auto model = oracle::type_a_model(n);
    auto rows  = maxclust::enumerate_by_length(g, 100);
    auto layers = model.all_elements();
    REQUIRE(rows.size() == layers.size());
    for (std::size_t l = 0; l < rows.size(); ++l) {
      REQUIRE(rows[l].total == layers[l].size());
    }
  }
  auto d4   = maxclust::parse_graph("D4");
  auto rows = maxclust::enumerate_by_length(d4, 100);
  REQUIRE(sum(rows, &CensusRow::total) == 192);
  // fully commutative counts: Catalan for type A, 48 for D4
  REQUIRE(sum(rows, &CensusRow::fc) == 48);
  REQUIRE(sum(maxclust::enumerate_by_length(maxclust::type_a(4), 100), &CensusRow::fc) == 42);
}

TEST_CASE("census rows are nested", "[enumerate][property]") {
  for (auto const* spec : {"A4", "D4", "D5", "E6"}) {
    auto g = maxclust::parse_graph(spec);
    for (auto const& r : maxclust::enumerate_by_length(g, 8)) {
      REQUIRE(r.fc <= r.fb);
      REQUIRE(r.fb <= r.mc);
      REQUIRE(r.mc <= r.total);
    }
  }
  for (auto const& r : maxclust::enumerate_by_length(triangle(), 8)) {
    REQUIRE(r.fc <= r.fb);
    REQUIRE(r.fb <= r.mc);
    REQUIRE(r.mc <= r.total);
  }
}

TEST_CASE("triangle group grows", "[enumerate]") {
  auto t    = triangle();
  auto rows = maxclust::enumerate_by_length(t, 6);
  REQUIRE(rows.size() == 7);
  for (std::size_t l = 1; l < rows.size(); ++l) {
    REQUIRE(rows[l].total > rows[l - 1].total);
  }
  std::map<std::size_t, std::size_t> by_len;
  for (auto const& [m, len] : oracle::elements_by_words(t, 6)) {
    ++by_len[len];
  }
  for (auto const& r : rows) {
    REQUIRE(by_len[r.length] == r.total);
  }
  REQUIRE_THROWS_AS(maxclust::enumerate_by_length(t, 30, 100), maxclust::CapExceeded);
}

TEST_CASE("enumerate_all_mc", "[enumerate]") {
  auto a1 = maxclust::parse_graph("A1");
  REQUIRE(maxclust::enumerate_all_mc(a1) == std::vector<Word>{{}, {1}});
  auto a2 = maxclust::parse_graph("A2");
  REQUIRE(maxclust::enumerate_all_mc(a2).size() == 6);
  auto a3  = maxclust::parse_graph("A3");
  auto res = maxclust::enumerate_mc(a3);
  REQUIRE(res.elements.size() == 21);
  REQUIRE(res.frontier_empty);
  std::size_t total = 0;
  for (auto n : res.per_length) {
    total += n;
  }
  REQUIRE(total == 21);
}

TEST_CASE("pruned enumeration equals filtered enumeration", "[enumerate][property]") {
  for (int n = 1; n <= 4; ++n) {
    auto g = maxclust::type_a(n);
    REQUIRE(maxclust::enumerate_all_mc(g) == mc_by_filter(g, oracle::type_a_model(n)));
  }
  auto d4 = maxclust::parse_graph("D4");
  REQUIRE(maxclust::enumerate_all_mc(d4) == mc_by_filter(d4, oracle::type_d_model(4)));
}

TEST_CASE("enumerate_mc guards", "[enumerate]") {
  auto t = triangle();
  REQUIRE_THROWS_AS(maxclust::enumerate_mc(t), maxclust::PreconditionError);
  maxclust::McOptions opt;
  opt.override_finiteness = true;
  opt.max_length          = 8;
  auto res                = maxclust::enumerate_mc(t, opt);
  REQUIRE_FALSE(res.frontier_empty);
  REQUIRE(res.per_length.size() == 9);
  for (auto n : res.per_length) {
    REQUIRE(n > 0);
  }
  opt.max_length = std::nullopt;
  opt.max_nodes  = 500;
  REQUIRE_THROWS_AS(maxclust::enumerate_mc(t, opt), maxclust::CapExceeded);

  // a length limit on a finite group stops early without claiming completion
  maxclust::McOptions short_opt;
  short_opt.max_length = 2;
  auto part = maxclust::enumerate_mc(maxclust::parse_graph("A3"), short_opt);
  REQUIRE_FALSE(part.frontier_empty);
  REQUIRE(part.per_length == std::vector<std::size_t>{1, 3, 5});
}

TEST_CASE("finite graphs exhaust their frontier", "[enumerate]") {
  for (auto const* spec : {"A1", "A2", "A3", "A4", "A5", "D4", "D5"}) {
    auto res = maxclust::enumerate_mc(maxclust::parse_graph(spec));
    REQUIRE(res.frontier_empty);
    REQUIRE_FALSE(res.elements.empty());
  }
}

TEST_CASE("CensusRow JSON", "[enumerate]") {
  auto j = maxclust::to_json(CensusRow{2, 5, 3, 4, 5});
  REQUIRE(j["length"] == 2);
  REQUIRE(j["total"] == 5);
  REQUIRE(j["fc"] == 3);
  REQUIRE(j["fb"] == 4);
  REQUIRE(j["mc"] == 5);
}
