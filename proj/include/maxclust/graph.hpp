#ifndef MAXCLUST_GRAPH_HPP_
#define MAXCLUST_GRAPH_HPP_

// Simply laced Coxeter graphs and the finiteness classification.
//
// A CoxeterGraph stores its vertex labels in increasing order; every other
// part of the library addresses vertices by their position in that order
// (the "index"), and only converts back to labels at the text boundary.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "maxclust/error.hpp"

namespace maxclust {

using Label = int;

class CoxeterGraph {
 public:
  CoxeterGraph() = default;

  // Throws ParseError on self-loops, duplicate vertices or edges, negative
  // labels and edges touching unknown vertices.
  CoxeterGraph(std::vector<Label> vertices,
               std::vector<std::pair<Label, Label>> const& edges)
      : labels_(std::move(vertices)) {
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
      throw ParseError("duplicate vertex label");
    }
    if (!labels_.empty() && labels_.front() < 0) {
      throw ParseError("vertex labels must be nonnegative");
    }
    std::size_t const n = labels_.size();
    adj_.assign(n * n, 0);
    nbrs_.assign(n, {});
    for (auto [a, b] : edges) {
      if (a == b) {
        throw ParseError("self-loop on vertex " + std::to_string(a));
      }
      std::size_t const i = index_of(a);
      std::size_t const j = index_of(b);
      if (adj_[i * n + j]) {
        throw ParseError("duplicate edge " + std::to_string(a) + "-"
                         + std::to_string(b));
      }
      adj_[i * n + j] = adj_[j * n + i] = 1;
      nbrs_[i].push_back(j);
      nbrs_[j].push_back(i);
    }
    for (auto& v : nbrs_) {
      std::sort(v.begin(), v.end());
    }
  }

  [[nodiscard]] std::size_t size() const noexcept {
    return labels_.size();
  }

  [[nodiscard]] bool empty() const noexcept {
    return labels_.empty();
  }

  [[nodiscard]] std::vector<Label> const& labels() const noexcept {
    return labels_;
  }

  [[nodiscard]] Label label(std::size_t index) const {
    return labels_.at(index);
  }

  [[nodiscard]] bool contains(Label l) const {
    return std::binary_search(labels_.begin(), labels_.end(), l);
  }

  [[nodiscard]] std::size_t index_of(Label l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l) {
      throw ParseError("unknown vertex label " + std::to_string(l));
    }
    return static_cast<std::size_t>(it - labels_.begin());
  }

  // By index.
  [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const noexcept {
    return adj_[i * size() + j] != 0;
  }

  [[nodiscard]] std::vector<std::size_t> const& neighbours(
      std::size_t i) const {
    return nbrs_[i];
  }

  [[nodiscard]] std::size_t degree(std::size_t i) const {
    return nbrs_[i].size();
  }

  // Coxeter matrix entry m_ij: 1 on the diagonal, 3 on edges, 2 otherwise.
  [[nodiscard]] int m(std::size_t i, std::size_t j) const noexcept {
    return i == j ? 1 : (adjacent(i, j) ? 3 : 2);
  }

  // Integer Cartan pairing 2B(e_i, e_j).
  [[nodiscard]] int cartan(std::size_t i, std::size_t j) const noexcept {
    return i == j ? 2 : (adjacent(i, j) ? -1 : 0);
  }

  // Edges as label pairs (a < b), sorted.
  [[nodiscard]] std::vector<std::pair<Label, Label>> edges() const {
    std::vector<std::pair<Label, Label>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j : nbrs_[i]) {
        if (i < j) {
          out.emplace_back(labels_[i], labels_[j]);
        }
      }
    }
    return out;
  }

  friend bool operator==(CoxeterGraph const& a, CoxeterGraph const& b) {
    return a.labels_ == b.labels_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<Label>                    labels_;
  std::vector<char>                     adj_;
  std::vector<std::vector<std::size_t>> nbrs_;
};

////////////////////////////////////////////////////////////////////////
// Families
////////////////////////////////////////////////////////////////////////

// Path 1 - 2 - ... - n.
inline CoxeterGraph type_a(int n) {
  if (n < 1) {
    throw ParseError("A<n> requires n >= 1");
  }
  std::vector<Label>                   v(n);
  std::vector<std::pair<Label, Label>> e;
  std::iota(v.begin(), v.end(), 1);
  for (int i = 1; i < n; ++i) {
    e.emplace_back(i, i + 1);
  }
  return CoxeterGraph(std::move(v), e);
}

// Path 1 - ... - (n-1) with the extra vertex n attached to n-2.
inline CoxeterGraph type_d(int n) {
  if (n < 4) {
    throw ParseError("D<n> requires n >= 4");
  }
  std::vector<Label>                   v(n);
  std::vector<std::pair<Label, Label>> e;
  std::iota(v.begin(), v.end(), 1);
  for (int i = 1; i < n - 1; ++i) {
    e.emplace_back(i, i + 1);
  }
  e.emplace_back(n - 2, n);
  return CoxeterGraph(std::move(v), e);
}

// Vertices 0..n-1, path 1 - ... - (n-1), extra edge {0,3}. Deleting 0 leaves
// A_{n-1}; deleting 1 leaves D_{n-1}.
inline CoxeterGraph type_e(int n) {
  if (n < 6) {
    throw ParseError("E<n> requires n >= 6");
  }
  std::vector<Label>                   v(n);
  std::vector<std::pair<Label, Label>> e;
  std::iota(v.begin(), v.end(), 0);
  for (int i = 1; i < n - 1; ++i) {
    e.emplace_back(i, i + 1);
  }
  e.emplace_back(0, 3);
  return CoxeterGraph(std::move(v), e);
}

// A star with a centre (label 0) and arms of the given lengths; arm vertices
// are labelled consecutively from 1 outward, arm after arm.
inline CoxeterGraph star_graph(std::vector<int> const& arms) {
  std::vector<Label>                   v{0};
  std::vector<std::pair<Label, Label>> e;
  Label                                next = 1;
  for (int len : arms) {
    Label prev = 0;
    for (int k = 0; k < len; ++k) {
      v.push_back(next);
      e.emplace_back(prev, next);
      prev = next++;
    }
  }
  return CoxeterGraph(std::move(v), e);
}

namespace detail {

  inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
      ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
      --e;
    }
    return std::string(s.substr(b, e - b));
  }

  inline CoxeterGraph graph_from_json(nlohmann::json const& doc) {
    if (!doc.is_object() || !doc.contains("vertices")) {
      throw ParseError("graph document needs a \"vertices\" field");
    }
    try {
      auto vertices = doc.at("vertices").get<std::vector<Label>>();
      std::vector<std::pair<Label, Label>> edges;
      if (doc.contains("edges")) {
        for (auto const& e : doc.at("edges")) {
          if (!e.is_array() || e.size() != 2) {
            throw ParseError("each edge must be a pair [a, b]");
          }
          edges.emplace_back(e[0].get<Label>(), e[1].get<Label>());
        }
      }
      return CoxeterGraph(std::move(vertices), edges);
    } catch (nlohmann::json::exception const& ex) {
      throw ParseError(std::string("malformed graph document: ") + ex.what());
    }
  }

}  // namespace detail

// Accepts a family token (A<n>, D<n>, E<n>), a JSON object
// {"vertices": [...], "edges": [[a,b], ...]}, or the same two fields written
// as "key: value" lines with JSON values.
inline CoxeterGraph parse_graph(std::string_view text) {
  std::string const s = detail::trim(text);
  static std::regex const family(R"(^([ADE])([0-9]+)$)");
  std::smatch             match;
  if (std::regex_match(s, match, family)) {
    if (match[2].length() > 6) {
      throw ParseError("family parameter out of range: " + s);
    }
    int const n = std::stoi(match[2].str());
    switch (match[1].str()[0]) {
      case 'A':
        return type_a(n);
      case 'D':
        return type_d(n);
      default:
        return type_e(n);
    }
  }
  if (s.empty()) {
    throw ParseError("empty graph specification");
  }
  if (s.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(s);
    } catch (nlohmann::json::exception const& ex) {
      throw ParseError(std::string("malformed graph document: ") + ex.what());
    }
    return detail::graph_from_json(doc);
  }
  // "vertices: [...]" / "edges: [[...]]" lines
  nlohmann::json doc = nlohmann::json::object();
  std::size_t    pos = 0;
  while (pos <= s.size()) {
    std::size_t nl = s.find('\n', pos);
    if (nl == std::string::npos) {
      nl = s.size();
    }
    std::string const line = detail::trim(std::string_view(s).substr(pos, nl - pos));
    pos                    = nl + 1;
    if (line.empty() || line.front() == '#') {
      continue;
    }
    std::size_t const colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("unrecognised graph specification: " + s);
    }
    std::string const key = detail::trim(std::string_view(line).substr(0, colon));
    if (key != "vertices" && key != "edges") {
      throw ParseError("unknown graph field: " + key);
    }
    if (doc.contains(key)) {
      throw ParseError("repeated graph field: " + key);
    }
    try {
      doc[key] = nlohmann::json::parse(line.substr(colon + 1));
    } catch (nlohmann::json::exception const& ex) {
      throw ParseError("malformed value for " + key + ": " + ex.what());
    }
  }
  return detail::graph_from_json(doc);
}

inline nlohmann::json to_json(CoxeterGraph const& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : g.edges()) {
    edges.push_back({a, b});
  }
  return {{"vertices", g.labels()}, {"edges", edges}};
}

// Full subgraph on the given labels.
inline CoxeterGraph induced_subgraph(CoxeterGraph const&  g,
                                     std::set<Label> const& letters) {
  for (Label l : letters) {
    if (!g.contains(l)) {
      throw ParseError("unknown vertex label " + std::to_string(l));
    }
  }
  std::vector<std::pair<Label, Label>> edges;
  for (auto [a, b] : g.edges()) {
    if (letters.count(a) && letters.count(b)) {
      edges.emplace_back(a, b);
    }
  }
  return CoxeterGraph(std::vector<Label>(letters.begin(), letters.end()),
                      edges);
}

// Connected components as sorted index lists, ordered by smallest index.
inline std::vector<std::vector<std::size_t>> components(CoxeterGraph const& g) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<char>                     seen(g.size(), 0);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) {
      continue;
    }
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      for (std::size_t t : g.neighbours(comp[k])) {
        if (!seen[t]) {
          seen[t] = 1;
          comp.push_back(t);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

////////////////////////////////////////////////////////////////////////
// Finiteness classification
////////////////////////////////////////////////////////////////////////

enum class FinitenessReason {
  path,
  d_arm,
  e_arm,
  cycle,
  branch_degree,
  two_branches,
  long_arms
};

inline char const* to_string(FinitenessReason r) {
  switch (r) {
    case FinitenessReason::path:
      return "path";
    case FinitenessReason::d_arm:
      return "D-arm";
    case FinitenessReason::e_arm:
      return "E-arm";
    case FinitenessReason::cycle:
      return "cycle";
    case FinitenessReason::branch_degree:
      return "branch-degree";
    case FinitenessReason::two_branches:
      return "two-branches";
    case FinitenessReason::long_arms:
      return "long-arms";
  }
  return "?";
}

struct ComponentVerdict {
  std::vector<Label> vertices;
  bool               mc_finite;
  FinitenessReason   reason;
  // Arm lengths (vertex counts, centre excluded) when the component has a
  // single branch point; empty otherwise.
  std::vector<int> arms;
};

struct FinitenessReport {
  bool                          mc_finite = true;
  std::vector<ComponentVerdict> per_component;
};

namespace detail {

  inline ComponentVerdict classify_component(CoxeterGraph const&             g,
                                             std::vector<std::size_t> const& comp) {
    ComponentVerdict v;
    for (std::size_t i : comp) {
      v.vertices.push_back(g.label(i));
    }
    std::size_t degree_sum = 0;
    std::size_t branches   = 0;
    std::size_t centre     = 0;
    bool        big_degree = false;
    for (std::size_t i : comp) {
      degree_sum += g.degree(i);
      if (g.degree(i) >= 4) {
        big_degree = true;
      }
      if (g.degree(i) >= 3) {
        ++branches;
        centre = i;
      }
    }
    auto verdict = [&v](bool ok, FinitenessReason r) {
      v.mc_finite = ok;
      v.reason    = r;
      return v;
    };
    if (degree_sum / 2 != comp.size() - 1) {
      return verdict(false, FinitenessReason::cycle);
    }
    if (big_degree) {
      return verdict(false, FinitenessReason::branch_degree);
    }
    if (branches > 1) {
      return verdict(false, FinitenessReason::two_branches);
    }
    if (branches == 0) {
      return verdict(true, FinitenessReason::path);
    }
    for (std::size_t start : g.neighbours(centre)) {
      int         len  = 1;
      std::size_t prev = centre;
      std::size_t cur  = start;
      while (g.degree(cur) == 2) {
        std::size_t next = g.neighbours(cur)[0] == prev ? g.neighbours(cur)[1]
                                                        : g.neighbours(cur)[0];
        prev             = cur;
        cur              = next;
        ++len;
      }
      v.arms.push_back(len);
    }
    std::sort(v.arms.begin(), v.arms.end());
    if (v.arms[0] != 1 || v.arms[1] > 2) {
      return verdict(false, FinitenessReason::long_arms);
    }
    return verdict(true,
                   v.arms[1] == 1 ? FinitenessReason::d_arm
                                  : FinitenessReason::e_arm);
  }

}  // namespace detail

// A component is a subgraph of some E_n iff it is a tree with no vertex of
// degree >= 4, at most one vertex of degree 3, and (if it has one) the two
// shortest arms have lengths 1 and at most 2. The same verdict decides
// finiteness of the fully commutative, freely braided and maximally
// clustered elements.
inline FinitenessReport classify_graph(CoxeterGraph const& g) {
  FinitenessReport report;
  for (auto const& comp : components(g)) {
    report.per_component.push_back(detail::classify_component(g, comp));
    report.mc_finite = report.mc_finite && report.per_component.back().mc_finite;
  }
  return report;
}

inline bool is_mc_finite(CoxeterGraph const& g) {
  return classify_graph(g).mc_finite;
}

inline nlohmann::json to_json(FinitenessReport const& r) {
  nlohmann::json comps = nlohmann::json::array();
  for (auto const& c : r.per_component) {
    nlohmann::json j = {{"vertices", c.vertices},
                        {"mc_finite", c.mc_finite},
                        {"reason", to_string(c.reason)}};
    if (!c.arms.empty()) {
      j["arms"] = c.arms;
    }
    comps.push_back(std::move(j));
  }
  return {{"mc_finite", r.mc_finite}, {"per_component", comps}};
}

}  // namespace maxclust

#endif  // MAXCLUST_GRAPH_HPP_
