#ifndef MAXCLUST_CLUSTERS_HPP_
#define MAXCLUST_CLUSTERS_HPP_

// Braid clusters, contracted decompositions and the contraction operators.
//
// A braid cluster is a palindrome i_1 ... i_n i_{n+1} i_n ... i_1 on distinct
// letters in which every i_q (q <= n) has exactly one neighbour among the
// later letters i_{q+1}, ..., i_{n+1}. A contracted reduced expression of a
// maximally clustered element parses as i_0 c_1 i_1 ... c_k i_k with one
// cluster per highest root of a contractible triple.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "maxclust/error.hpp"
#include "maxclust/graph.hpp"
#include "maxclust/triples.hpp"
#include "maxclust/words_roots.hpp"

namespace maxclust {

////////////////////////////////////////////////////////////////////////
// Braid clusters
////////////////////////////////////////////////////////////////////////

inline bool is_braid_cluster(CoxeterGraph const& g, Word const& w) {
  if (w.size() < 3 || w.size() % 2 == 0) {
    return false;
  }
  for (Label l : w) {
    if (!g.contains(l)) {
      return false;
    }
  }
  if (!std::equal(w.begin(), w.begin() + w.size() / 2, w.rbegin())) {
    return false;
  }
  std::size_t const n = w.size() / 2;
  std::vector<std::size_t> idx;
  for (std::size_t q = 0; q <= n; ++q) {
    idx.push_back(g.index_of(w[q]));
  }
  std::vector<std::size_t> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return false;
  }
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t later = 0;
    for (std::size_t r = q + 1; r <= n; ++r) {
      later += g.adjacent(idx[q], idx[r]) ? 1 : 0;
    }
    if (later != 1) {
      return false;
    }
  }
  return true;
}

class BraidCluster {
 public:
  BraidCluster() = default;

  // Throws PreconditionError unless w is a braid cluster of g.
  BraidCluster(CoxeterGraph const& g, Word w) : word_(std::move(w)) {
    if (!is_braid_cluster(g, word_)) {
      throw PreconditionError(format_word(word_) + " is not a braid cluster");
    }
  }

  [[nodiscard]] Word const& word() const noexcept {
    return word_;
  }

  [[nodiscard]] std::size_t half_length() const noexcept {
    return word_.size() / 2;
  }

  [[nodiscard]] Label middle() const {
    return word_[half_length()];
  }

  // i_1 ... i_n
  [[nodiscard]] Word first_half() const {
    return Word(word_.begin(), word_.begin() + half_length());
  }

  // i_n ... i_1
  [[nodiscard]] Word second_half() const {
    return Word(word_.begin() + half_length() + 1, word_.end());
  }

  [[nodiscard]] std::set<Label> letters() const {
    return {word_.begin(), word_.end()};
  }

  friend bool operator==(BraidCluster const&, BraidCluster const&) = default;

 private:
  Word word_;
};

struct ClusterGraph {
  CoxeterGraph                         graph;
  std::vector<std::pair<Label, Label>> arrows;  // earlier letter -> later letter
  Label                                sink = 0;
};

namespace detail {

  inline std::vector<std::size_t> branch_points(CoxeterGraph const& g) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.degree(i) >= 3) {
        out.push_back(i);
      }
    }
    return out;
  }

}  // namespace detail

// The induced subgraph on the cluster's letters, oriented from earlier to
// later letters of the first half. Checks that the middle letter is the
// unique sink and that the graph is a tree of type A, D or E.
inline ClusterGraph cluster_graph(CoxeterGraph const& g, BraidCluster const& c) {
  ClusterGraph cg;
  cg.graph = induced_subgraph(g, c.letters());
  Word const head(c.word().begin(), c.word().begin() + c.half_length() + 1);
  std::map<Label, std::size_t> out_degree;
  for (Label l : head) {
    out_degree[l] = 0;
  }
  for (std::size_t j = 0; j < head.size(); ++j) {
    for (std::size_t k = j + 1; k < head.size(); ++k) {
      if (g.adjacent(g.index_of(head[j]), g.index_of(head[k]))) {
        cg.arrows.emplace_back(head[j], head[k]);
        ++out_degree[head[j]];
      }
    }
  }
  auto fail = [&](std::string const& what) {
    std::string msg = "cluster graph of " + format_word(c.word()) + ": " + what;
    if (is_mc_finite(g)) {
      throw InvariantViolation(msg);
    }
    throw OutOfScope(msg);
  };
  if (cg.arrows.size() != cg.graph.edges().size()) {
    fail("orientation does not cover every edge exactly once");
  }
  std::vector<Label> sinks;
  for (auto [l, d] : out_degree) {
    if (d == 0) {
      sinks.push_back(l);
    }
  }
  if (sinks.size() != 1 || sinks[0] != c.middle()) {
    fail("middle letter is not the unique sink");
  }
  cg.sink   = c.middle();
  auto type = classify_graph(cg.graph);
  if (type.per_component.size() != 1 || !type.mc_finite) {
    fail("induced graph is not connected of type A, D or E");
  }
  return cg;
}

// Either no branch point and the middle letter is a leaf, or the middle letter
// is the unique branch point.
inline bool is_normalized(CoxeterGraph const& g, BraidCluster const& c) {
  CoxeterGraph const sub      = induced_subgraph(g, c.letters());
  auto const         branches = detail::branch_points(sub);
  std::size_t const  mid      = sub.index_of(c.middle());
  if (branches.empty()) {
    return sub.degree(mid) <= 1;
  }
  return branches.size() == 1 && branches[0] == mid;
}

inline bool is_normalized(CoxeterGraph const& g, Word const& w) {
  return is_braid_cluster(g, w) && is_normalized(g, BraidCluster(g, w));
}

// The lexicographically least reduced word of phi(c) that is a normalized
// braid cluster; c itself when it is already normalized.
inline BraidCluster normalize_cluster(CoxeterGraph const& g,
                                      BraidCluster const& c,
                                      std::size_t max_nodes = default_max_nodes) {
  if (is_normalized(g, c)) {
    return c;
  }
  for (Word const& w : reduced_word_graph(g, c.word(), max_nodes)) {
    if (is_normalized(g, w)) {
      return BraidCluster(g, w);
    }
  }
  throw InvariantViolation("braid cluster " + format_word(c.word())
                           + " has no normalized representative");
}

////////////////////////////////////////////////////////////////////////
// Contracted decompositions
////////////////////////////////////////////////////////////////////////

struct ContractedDecomposition {
  std::vector<Word>         plain;     // i_0, ..., i_k
  std::vector<BraidCluster> clusters;  // c_1, ..., c_k
  GroupElement              owner;

  [[nodiscard]] std::size_t size() const noexcept {
    return clusters.size();
  }

  [[nodiscard]] Word word() const {
    Word out = plain.front();
    for (std::size_t q = 0; q < clusters.size(); ++q) {
      auto const& c = clusters[q].word();
      out.insert(out.end(), c.begin(), c.end());
      out.insert(out.end(), plain[q + 1].begin(), plain[q + 1].end());
    }
    return out;
  }
};

// "3 [1 2 1]": plain letters bare, clusters bracketed, single spaces.
inline std::string format_decomposition(ContractedDecomposition const& d) {
  std::string out;
  auto        put = [&out](std::string const& s) {
    if (!out.empty()) {
      out.push_back(' ');
    }
    out += s;
  };
  for (std::size_t q = 0; q <= d.clusters.size(); ++q) {
    if (!d.plain[q].empty()) {
      put(format_word(d.plain[q], ' '));
    }
    if (q < d.clusters.size()) {
      put("[" + format_word(d.clusters[q].word(), ' ') + "]");
    }
  }
  return out;
}

// Reads the bracketed form back. Checks that every bracketed factor is a
// braid cluster and that the whole word is reduced; it does not check that
// the split matches the element's contractible triples.
inline ContractedDecomposition parse_decomposition(CoxeterGraph const& g,
                                                   std::string const&  text) {
  ContractedDecomposition d;
  d.plain.emplace_back();
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t const open = text.find('[', pos);
    std::string const before
        = text.substr(pos, open == std::string::npos ? std::string::npos : open - pos);
    if (before.find(']') != std::string::npos) {
      throw ParseError("unbalanced ']' in " + text);
    }
    Word plain = parse_word(g, before);
    d.plain.back().insert(d.plain.back().end(), plain.begin(), plain.end());
    if (open == std::string::npos) {
      break;
    }
    std::size_t const close = text.find(']', open);
    if (close == std::string::npos) {
      throw ParseError("unbalanced '[' in " + text);
    }
    std::string const inner = text.substr(open + 1, close - open - 1);
    if (inner.find('[') != std::string::npos) {
      throw ParseError("nested '[' in " + text);
    }
    d.clusters.emplace_back(g, parse_word(g, inner));
    d.plain.emplace_back();
    pos = close + 1;
  }
  Word const w = d.word();
  require_reduced(g, w);
  d.owner = evaluate_word(g, w);
  return d;
}

namespace detail {

  // Parses w against the contractible triples of its element. nullopt when
  // some highest root's triples do not sit in a symmetric consecutive block
  // of the root sequence.
  inline std::optional<ContractedDecomposition> try_decompose(
      CoxeterGraph const&                 g,
      Word const&                         w,
      std::vector<InversionTriple> const& contractible) {
    RootSequence const rs = root_sequence(g, w);
    std::size_t const  L  = w.size();
    std::map<Root, std::set<std::pair<Root, Root>>> by_high;
    for (auto const& t : contractible) {
      by_high[t.high].emplace(t.low_a, t.low_b);
    }
    // word position of a block start -> cluster word
    std::map<std::size_t, Word> blocks;
    for (auto const& [high, pairs] : by_high) {
      auto const it = std::find(rs.begin(), rs.end(), high);
      if (it == rs.end()) {
        throw InvariantViolation("highest root missing from root sequence");
      }
      std::size_t const p = static_cast<std::size_t>(it - rs.begin());
      std::size_t const n = pairs.size();
      if (p < n || p + n >= L) {
        return std::nullopt;
      }
      for (std::size_t k = 1; k <= n; ++k) {
        auto a = rs[p - k];
        auto b = rs[p + k];
        if (b < a) {
          std::swap(a, b);
        }
        if (!pairs.count({a, b})) {
          return std::nullopt;
        }
      }
      // root index q sits at word position L - 1 - q
      std::size_t const first = L - 1 - (p + n);
      std::size_t const last  = L - 1 - (p - n);
      Word const        block(w.begin() + first, w.begin() + last + 1);
      if (!is_braid_cluster(g, block)) {
        throw InvariantViolation("contracted block " + format_word(block)
                                 + " of " + format_word(w)
                                 + " is not a braid cluster");
      }
      blocks.emplace(first, block);
    }
    ContractedDecomposition d;
    d.owner = evaluate_word(g, w);
    d.plain.emplace_back();
    std::size_t pos = 0;
    for (auto const& [first, block] : blocks) {
      d.plain.back().insert(d.plain.back().end(), w.begin() + pos, w.begin() + first);
      d.clusters.emplace_back(g, block);
      d.plain.emplace_back();
      pos = first + block.size();
    }
    d.plain.back().insert(d.plain.back().end(), w.begin() + pos, w.end());
    return d;
  }

  inline TripleReport require_mc(CoxeterGraph const& g,
                                 Word const&         w,
                                 TripleCache*        cache) {
    validate_word(g, w);
    require_reduced(g, w);
    TripleReport rep = classify_element(g, w, cache);
    if (!rep.flags.maximally_clustered) {
      throw PreconditionError("word " + format_word(w)
                              + " does not represent a maximally clustered element");
    }
    return rep;
  }

  inline void check_accounting(ContractedDecomposition const& d,
                               TripleReport const&            rep) {
    std::size_t half = 0;
    for (auto const& c : d.clusters) {
      half += c.half_length();
    }
    if (d.clusters.size() != rep.n_tilde_w || half != rep.n_w) {
      throw InvariantViolation("decomposition accounting failed: k = "
                               + std::to_string(d.clusters.size()) + ", sum n_q = "
                               + std::to_string(half) + ", N = "
                               + std::to_string(rep.n_w) + ", N~ = "
                               + std::to_string(rep.n_tilde_w));
    }
  }

}  // namespace detail

// Parse of a contracted reduced expression. Throws NotContracted when w is a
// reduced word of a maximally clustered element but not a contracted one.
inline ContractedDecomposition contracted_decomposition(
    CoxeterGraph const& g,
    Word const&         w,
    TripleCache*        cache = nullptr) {
  TripleReport const rep = detail::require_mc(g, w, cache);
  auto               d   = detail::try_decompose(g, w, rep.contractible());
  if (!d) {
    throw NotContracted("word " + format_word(w)
                        + " is not contracted; run find_contracted_expression first");
  }
  detail::check_accounting(*d, rep);
  return std::move(*d);
}

// Lexicographically least contracted word in the commutation class of w.
inline Word find_contracted_expression(CoxeterGraph const& g,
                                       Word const&         w,
                                       TripleCache*        cache     = nullptr,
                                       std::size_t         max_nodes = default_max_nodes) {
  TripleReport const rep   = detail::require_mc(g, w, cache);
  auto const         contr = rep.contractible();
  for (Word const& v : commutation_class(g, w, max_nodes)) {
    if (auto d = detail::try_decompose(g, v, contr)) {
      detail::check_accounting(*d, rep);
      return v;
    }
  }
  throw InvariantViolation("no contracted expression in the commutation class of "
                           + format_word(w));
}

////////////////////////////////////////////////////////////////////////
// Contraction operators
////////////////////////////////////////////////////////////////////////

inline void require_pi_scope(CoxeterGraph const& g) {
  if (!is_mc_finite(g)) {
    throw OutOfScope(
        "contraction operators need every component to be a subgraph of a type E "
        "graph");
  }
}

// pi_j with j counted from 1. Cluster j is normalized first when needed. The
// result is i' c'_j i'' where c_j = c' i_j c'', and c'_j drops the middle
// letter exactly when Gamma_j has a branch point and i' i_j is not reduced.
inline Word pi(CoxeterGraph const&     g,
               ContractedDecomposition d,
               std::size_t             j,
               std::size_t             max_nodes = default_max_nodes) {
  require_pi_scope(g);
  if (j < 1 || j > d.clusters.size()) {
    throw PreconditionError("cluster index " + std::to_string(j)
                            + " out of range 1.." + std::to_string(d.clusters.size()));
  }
  BraidCluster const c = normalize_cluster(g, d.clusters[j - 1], max_nodes);
  d.clusters[j - 1]    = c;

  Word prefix = d.plain[0];
  for (std::size_t q = 0; q + 1 < j; ++q) {
    auto const& cw = d.clusters[q].word();
    prefix.insert(prefix.end(), cw.begin(), cw.end());
    prefix.insert(prefix.end(), d.plain[q + 1].begin(), d.plain[q + 1].end());
  }
  Word suffix = d.plain[j];
  for (std::size_t q = j; q < d.clusters.size(); ++q) {
    auto const& cw = d.clusters[q].word();
    suffix.insert(suffix.end(), cw.begin(), cw.end());
    suffix.insert(suffix.end(), d.plain[q + 1].begin(), d.plain[q + 1].end());
  }

  CoxeterGraph const sub       = induced_subgraph(g, c.letters());
  bool const         branched  = !detail::branch_points(sub).empty();
  Word               with_mid  = prefix;
  with_mid.push_back(c.middle());
  bool const drop_middle = branched && !is_reduced(g, with_mid);

  Word out = std::move(prefix);
  if (!drop_middle) {
    out.push_back(c.middle());
  }
  Word const tail = c.second_half();
  out.insert(out.end(), tail.begin(), tail.end());
  out.insert(out.end(), suffix.begin(), suffix.end());
  return out;
}

// Iterates contract-decompose-pi_1 N~(w) times.
inline Word pi_full(CoxeterGraph const& g,
                    Word const&         w,
                    TripleCache*        cache     = nullptr,
                    std::size_t         max_nodes = default_max_nodes) {
  require_pi_scope(g);
  TripleReport const rep = detail::require_mc(g, w, cache);
  Word               cur = w;
  for (std::size_t step = 0; step < rep.n_tilde_w; ++step) {
    Word const contracted = find_contracted_expression(g, cur, cache, max_nodes);
    cur = pi(g, contracted_decomposition(g, contracted, cache), 1, max_nodes);
    if (!is_reduced(g, cur)) {
      throw InvariantViolation("pi_1 produced the non-reduced word "
                               + format_word(cur));
    }
  }
  return cur;
}

inline nlohmann::json to_json(ContractedDecomposition const& d) {
  nlohmann::json clusters = nlohmann::json::array();
  for (auto const& c : d.clusters) {
    clusters.push_back({{"word", c.word()},
                        {"middle", c.middle()},
                        {"half_length", c.half_length()}});
  }
  nlohmann::json plain = nlohmann::json::array();
  for (auto const& p : d.plain) {
    plain.push_back(p);
  }
  return {{"word", d.word()},
          {"plain", plain},
          {"clusters", clusters},
          {"bracketed", format_decomposition(d)}};
}

}  // namespace maxclust

#endif  // MAXCLUST_CLUSTERS_HPP_
