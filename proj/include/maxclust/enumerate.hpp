#ifndef MAXCLUST_ENUMERATE_HPP_
#define MAXCLUST_ENUMERATE_HPP_

// Breadth-first enumeration of group elements by length, with per-length
// counts of the fully commutative, freely braided and maximally clustered
// elements.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "maxclust/error.hpp"
#include "maxclust/graph.hpp"
#include "maxclust/triples.hpp"
#include "maxclust/words_roots.hpp"

namespace maxclust {

struct CensusRow {
  std::size_t length = 0;
  std::size_t total  = 0;
  std::size_t fc     = 0;
  std::size_t fb     = 0;
  std::size_t mc     = 0;

  friend bool operator==(CensusRow const&, CensusRow const&) = default;
};

namespace detail {

  struct Node {
    GroupElement element;
    Word         word;  // some reduced word of element
  };

  // One BFS layer: every w s_i with l(w s_i) = l(w) + 1, deduplicated by
  // matrix, in first-seen order (parents and letters visited in order).
  inline std::vector<Node> next_layer(CoxeterGraph const&     g,
                                      std::vector<Node> const& layer) {
    std::unordered_set<GroupElement, GroupElementHash> seen;
    std::vector<Node>                                  out;
    for (Node const& node : layer) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (node.element.has_right_descent(i)) {
          continue;
        }
        GroupElement e = node.element.times_generator(g, i);
        if (seen.insert(e).second) {
          Word w = node.word;
          w.push_back(g.label(i));
          out.push_back({std::move(e), std::move(w)});
        }
      }
    }
    return out;
  }

  inline void check_cap(std::size_t seen, std::size_t max_nodes) {
    if (seen > max_nodes) {
      throw CapExceeded("enumeration exceeded " + std::to_string(max_nodes)
                        + " elements");
    }
  }

}  // namespace detail

// One row per length 0..max_len (fewer if the group runs out of elements).
inline std::vector<CensusRow> enumerate_by_length(
    CoxeterGraph const& g,
    std::size_t         max_len,
    std::size_t         max_nodes = default_max_nodes,
    TripleCache*        cache     = nullptr) {
  std::vector<CensusRow>  rows;
  std::vector<detail::Node> layer{{GroupElement::identity(g.size()), {}}};
  std::size_t             seen = 1;
  for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
    CensusRow row;
    row.length = len;
    row.total  = layer.size();
    for (auto const& node : layer) {
      auto const rep = classify_element(g, node.word, cache);
      row.fc += rep.flags.fully_commutative;
      row.fb += rep.flags.freely_braided;
      row.mc += rep.flags.maximally_clustered;
    }
    rows.push_back(row);
    if (len == max_len) {
      break;
    }
    layer = detail::next_layer(g, layer);
    seen += layer.size();
    detail::check_cap(seen, max_nodes);
  }
  return rows;
}

struct McEnumeration {
  // Canonical (lexicographically least) reduced words, shortlex sorted.
  std::vector<Word>        elements;
  std::vector<std::size_t> per_length;
  // True when the pruned frontier emptied before any length limit.
  bool frontier_empty = false;
};

struct McOptions {
  std::size_t                max_nodes            = default_max_nodes;
  std::optional<std::size_t> max_length           = std::nullopt;
  bool                       override_finiteness  = false;
};

// Builds layer l+1 only from the maximally clustered elements of layer l:
// removing the last letter of a reduced word of a maximally clustered
// element leaves a maximally clustered element, so nothing is lost.
inline McEnumeration enumerate_mc(CoxeterGraph const& g,
                                  McOptions const&    opt   = {},
                                  TripleCache*        cache = nullptr) {
  if (!opt.override_finiteness && !is_mc_finite(g)) {
    throw PreconditionError(
        "graph has infinitely many maximally clustered elements; pass the "
        "finiteness override together with a length or node cap");
  }
  McEnumeration           result;
  std::vector<detail::Node> layer{{GroupElement::identity(g.size()), {}}};
  std::size_t             seen = 1;
  for (std::size_t len = 0;; ++len) {
    std::vector<detail::Node> kept;
    for (auto& node : layer) {
      if (classify_element(g, node.word, cache).flags.maximally_clustered) {
        kept.push_back(std::move(node));
      }
    }
    if (kept.empty()) {
      result.frontier_empty = true;
      break;
    }
    result.per_length.push_back(kept.size());
    std::vector<Word> words;
    for (auto const& node : kept) {
      words.push_back(canonical_form(g, node.element));
    }
    std::sort(words.begin(), words.end());
    result.elements.insert(result.elements.end(), words.begin(), words.end());
    if (opt.max_length && len == *opt.max_length) {
      break;
    }
    layer = detail::next_layer(g, kept);
    seen += layer.size();
    detail::check_cap(seen, opt.max_nodes);
  }
  return result;
}

inline std::vector<Word> enumerate_all_mc(CoxeterGraph const& g,
                                          McOptions const&    opt   = {},
                                          TripleCache*        cache = nullptr) {
  return enumerate_mc(g, opt, cache).elements;
}

inline nlohmann::json to_json(CensusRow const& r) {
  return {{"length", r.length},
          {"total", r.total},
          {"fc", r.fc},
          {"fb", r.fb},
          {"mc", r.mc}};
}

}  // namespace maxclust

#endif  // MAXCLUST_ENUMERATE_HPP_
