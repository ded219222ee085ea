#ifndef MAXCLUST_TRIPLES_HPP_
#define MAXCLUST_TRIPLES_HPP_

// Inversion triples, contractible triples and the element classes built on
// them (fully commutative, freely braided, maximally clustered).

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "maxclust/error.hpp"
#include "maxclust/graph.hpp"
#include "maxclust/words_roots.hpp"

namespace maxclust {

// {low_a, low_b, high} with high = low_a + low_b and low_a < low_b.
struct InversionTriple {
  Root low_a;
  Root low_b;
  Root high;
  bool contractible = false;

  InversionTriple() = default;
  InversionTriple(Root a, Root b, bool c = false)
      : low_a(std::move(a)), low_b(std::move(b)), contractible(c) {
    if (low_b < low_a) {
      std::swap(low_a, low_b);
    }
    high = low_a + low_b;
  }

  [[nodiscard]] bool contains(Root const& r) const {
    return r == low_a || r == low_b || r == high;
  }

  [[nodiscard]] std::size_t shared_roots(InversionTriple const& t) const {
    return static_cast<std::size_t>(contains(t.low_a))
           + static_cast<std::size_t>(contains(t.low_b))
           + static_cast<std::size_t>(contains(t.high));
  }

  [[nodiscard]] bool intersects(InversionTriple const& t) const {
    return shared_roots(t) > 0;
  }

  // Identity is the root set; the flag is an annotation.
  friend bool operator==(InversionTriple const& a, InversionTriple const& b) {
    return a.high == b.high && a.low_a == b.low_a && a.low_b == b.low_b;
  }

  friend bool operator<(InversionTriple const& a, InversionTriple const& b) {
    return std::tie(a.high, a.low_a, a.low_b)
           < std::tie(b.high, b.low_a, b.low_b);
  }
};

struct ElementFlags {
  bool fully_commutative   = false;
  bool freely_braided      = false;
  bool maximally_clustered = false;
};

struct TripleReport {
  // All inversion triples, sorted, with the contractible flag filled in.
  std::vector<InversionTriple> triples;
  std::size_t                  n_w       = 0;
  std::size_t                  n_tilde_w = 0;
  ElementFlags                 flags;
  // Contractible triples pairwise disjoint, regardless of clustering.
  bool contractible_disjoint = true;

  [[nodiscard]] std::vector<InversionTriple> contractible() const {
    std::vector<InversionTriple> out;
    std::copy_if(triples.begin(),
                 triples.end(),
                 std::back_inserter(out),
                 [](auto const& t) { return t.contractible; });
    return out;
  }
};

////////////////////////////////////////////////////////////////////////
// Inversion sets and triples
////////////////////////////////////////////////////////////////////////

inline std::vector<Root> inversion_set(CoxeterGraph const& g, Word const& w) {
  validate_word(g, w);
  auto rs = root_sequence(g, w);
  std::sort(rs.begin(), rs.end());
  return rs;
}

namespace detail {

  inline std::vector<InversionTriple> triples_of_set(
      std::vector<Root> const& phi) {
    std::unordered_set<Root, RootHash> members(phi.begin(), phi.end());
    std::vector<InversionTriple>       out;
    for (std::size_t a = 0; a < phi.size(); ++a) {
      for (std::size_t b = a + 1; b < phi.size(); ++b) {
        if (members.count(phi[a] + phi[b])) {
          out.emplace_back(phi[a], phi[b]);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Every suffix u of w (w = v u with lengths adding), obtained by stripping
  // left descents from w.
  inline std::unordered_set<GroupElement, GroupElementHash>
  suffix_interval(CoxeterGraph const& g,
                  GroupElement const& w,
                  std::size_t         max_nodes) {
    std::unordered_set<GroupElement, GroupElementHash> seen{w};
    std::vector<GroupElement>                          queue{w};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      GroupElement const x = queue[head];
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (x.has_left_descent(i)) {
          GroupElement y = x.generator_times(g, i);
          if (seen.insert(y).second) {
            if (seen.size() > max_nodes) {
              throw CapExceeded("suffix interval exceeded "
                                + std::to_string(max_nodes) + " elements");
            }
            queue.push_back(std::move(y));
          }
        }
      }
    }
    return seen;
  }

  // The contractible triples of phi(w). A triple occurs consecutively in a
  // root sequence exactly when some suffix u extends to the suffix
  // s_i s_j s_i u with i, j adjacent; the triple is then
  // {u^{-1} e_i, u^{-1} e_j, u^{-1}(e_i + e_j)}.
  inline std::vector<InversionTriple> contractible_by_interval(
      CoxeterGraph const& g,
      Word const&         w,
      std::size_t         max_nodes) {
    GroupElement const e        = evaluate_word(g, w);
    auto const         interval = suffix_interval(g, e, max_nodes);
    std::set<InversionTriple> found;
    auto extends = [&](GroupElement const& x, std::size_t a) {
      return !x.has_left_descent(a)
             && interval.count(x.generator_times(g, a)) != 0;
    };
    for (GroupElement const& u : interval) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (!extends(u, i)) {
          continue;
        }
        GroupElement const ui = u.generator_times(g, i);
        for (std::size_t j : g.neighbours(i)) {
          if (!extends(ui, j)) {
            continue;
          }
          GroupElement const uji = ui.generator_times(g, j);
          if (!extends(uji, i)) {
            continue;
          }
          found.emplace(u.inverse_column(i), u.inverse_column(j), true);
        }
      }
    }
    return {found.begin(), found.end()};
  }

}  // namespace detail

// All {a, b, a+b} inside Phi(w); the contractible flag is left unset.
inline std::vector<InversionTriple> inversion_triples(CoxeterGraph const& g,
                                                      Word const&         w) {
  return detail::triples_of_set(inversion_set(g, w));
}

// Contractible triples, read off the long-braid-move positions of every
// reduced word of phi(w).
inline std::vector<InversionTriple> contractible_triples_by_words(
    CoxeterGraph const& g,
    Word const&         w,
    std::size_t         max_nodes = default_max_nodes) {
  std::set<InversionTriple> found;
  for (Word const& v : reduced_word_graph(g, w, max_nodes)) {
    RootSequence const rs = root_sequence(g, v);
    std::size_t const  n  = v.size();
    for (std::size_t pos = 0; pos + 2 < n; ++pos) {
      if (braid_move_kind(g, v, pos) == MoveKind::long_move) {
        // word positions pos, pos+1, pos+2 carry roots n-1-pos, n-2-pos, n-3-pos
        found.emplace(rs[n - 1 - pos], rs[n - 3 - pos], true);
      }
    }
  }
  return {found.begin(), found.end()};
}

// Same set as contractible_triples_by_words, computed on the lower weak
// interval of phi(w) instead of its reduced words.
inline std::vector<InversionTriple> contractible_triples(
    CoxeterGraph const& g,
    Word const&         w,
    std::size_t         max_nodes = default_max_nodes) {
  validate_word(g, w);
  require_reduced(g, w);
  return detail::contractible_by_interval(g, w, max_nodes);
}

////////////////////////////////////////////////////////////////////////
// Classification
////////////////////////////////////////////////////////////////////////

namespace detail {

  inline TripleReport build_report(std::vector<InversionTriple> all,
                                   std::vector<InversionTriple> const& contr) {
    TripleReport rep;
    std::set<InversionTriple> const cset(contr.begin(), contr.end());
    for (auto& t : all) {
      t.contractible = cset.count(t) != 0;
    }
    if (cset.size() != static_cast<std::size_t>(std::count_if(
            all.begin(), all.end(), [](auto const& t) { return t.contractible; }))) {
      throw InvariantViolation("contractible triple outside the inversion set");
    }
    rep.triples = std::move(all);
    rep.n_w     = contr.size();
    std::set<Root> highs;
    for (auto const& t : contr) {
      highs.insert(t.high);
    }
    rep.n_tilde_w = highs.size();

    bool clustered = true;
    for (std::size_t a = 0; a < contr.size(); ++a) {
      for (std::size_t b = a + 1; b < contr.size(); ++b) {
        if (contr[a].intersects(contr[b])) {
          rep.contractible_disjoint = false;
          if (contr[a].high != contr[b].high) {
            clustered = false;
          }
        }
      }
    }
    rep.flags.maximally_clustered = clustered;
    rep.flags.freely_braided      = clustered && rep.contractible_disjoint;
    rep.flags.fully_commutative   = rep.n_w == 0;
    return rep;
  }

}  // namespace detail

// Per-element memo for classify_element. Safe for concurrent use; writers
// racing on a key store identical values.
class TripleCache {
 public:
  std::optional<TripleReport> find(GroupElement const& e) const {
    std::lock_guard<std::mutex> lock(mtx_);
    auto                        it = map_.find(e);
    if (it == map_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  void store(GroupElement const& e, TripleReport const& r) {
    std::lock_guard<std::mutex> lock(mtx_);
    map_.insert_or_assign(e, r);
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mtx_);
    return map_.size();
  }

 private:
  mutable std::mutex                                               mtx_;
  std::unordered_map<GroupElement, TripleReport, GroupElementHash> map_;
};

inline TripleReport classify_element(CoxeterGraph const& g,
                                     Word const&         w,
                                     TripleCache*        cache     = nullptr,
                                     std::size_t         max_nodes = default_max_nodes) {
  validate_word(g, w);
  require_reduced(g, w);
  GroupElement key;
  if (cache != nullptr) {
    key = evaluate_word(g, w);
    if (auto hit = cache->find(key)) {
      return *hit;
    }
  }
  TripleReport rep = detail::build_report(
      inversion_triples(g, w), detail::contractible_by_interval(g, w, max_nodes));
  if (cache != nullptr) {
    cache->store(key, rep);
  }
  return rep;
}

inline bool is_maximally_clustered(CoxeterGraph const& g,
                                   Word const&         w,
                                   TripleCache*        cache = nullptr) {
  return classify_element(g, w, cache).flags.maximally_clustered;
}

// Fully commutative straight from the definition: every reduced word lies in
// the commutation class of w.
inline bool is_fully_commutative_by_definition(
    CoxeterGraph const& g,
    Word const&         w,
    std::size_t         max_nodes = default_max_nodes) {
  return commutation_class(g, w, max_nodes).size()
         == reduced_word_graph(g, w, max_nodes).size();
}

// Every nonempty contiguous subword of a reduced word of a maximally
// clustered element is reduced and maximally clustered.
inline bool check_subword_heredity(CoxeterGraph const& g,
                                   Word const&         w,
                                   TripleCache*        cache = nullptr) {
  validate_word(g, w);
  if (!is_reduced(g, w)) {
    throw PreconditionError("word " + format_word(w) + " is not reduced");
  }
  if (!is_maximally_clustered(g, w, cache)) {
    throw PreconditionError("word " + format_word(w)
                            + " does not represent a maximally clustered element");
  }
  for (std::size_t p = 0; p < w.size(); ++p) {
    for (std::size_t q = p + 1; q <= w.size(); ++q) {
      Word const sub(w.begin() + p, w.begin() + q);
      if (!is_reduced(g, sub) || !is_maximally_clustered(g, sub, cache)) {
        return false;
      }
    }
  }
  return true;
}

inline nlohmann::json to_json(InversionTriple const& t) {
  return {{"low_a", t.low_a.coeffs},
          {"low_b", t.low_b.coeffs},
          {"high", t.high.coeffs},
          {"contractible", t.contractible}};
}

inline nlohmann::json to_json(TripleReport const& r) {
  nlohmann::json triples = nlohmann::json::array();
  for (auto const& t : r.triples) {
    triples.push_back(to_json(t));
  }
  return {{"triples", triples},
          {"n_w", r.n_w},
          {"n_tilde_w", r.n_tilde_w},
          {"flags",
           {{"fully_commutative", r.flags.fully_commutative},
            {"freely_braided", r.flags.freely_braided},
            {"maximally_clustered", r.flags.maximally_clustered}}},
          {"contractible_disjoint", r.contractible_disjoint}};
}

}  // namespace maxclust

#endif  // MAXCLUST_TRIPLES_HPP_
