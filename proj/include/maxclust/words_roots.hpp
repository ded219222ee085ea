#ifndef MAXCLUST_WORDS_ROOTS_HPP_
#define MAXCLUST_WORDS_ROOTS_HPP_

// Words, roots and group elements in the reflection representation.
//
// All arithmetic is exact and integral: the Coxeter form only appears through
// the Cartan pairing 2B(e_i, e_j), which is 2, -1 or 0 in the simply laced
// case. Roots and matrices are indexed by vertex *index* (position in the
// graph's sorted label list); words hold vertex *labels*.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "maxclust/error.hpp"
#include "maxclust/graph.hpp"

namespace maxclust {

using Word = std::vector<Label>;

inline constexpr std::size_t default_max_nodes = 1'000'000;

namespace detail {

  // boost::hash_combine's mixing step
  inline void hash_combine(std::size_t& seed, std::size_t v) noexcept {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }

  template <typename T>
  std::size_t hash_range(std::vector<T> const& v) noexcept {
    std::size_t seed = v.size();
    for (auto const& x : v) {
      hash_combine(seed, std::hash<T>{}(x));
    }
    return seed;
  }

}  // namespace detail

struct WordHash {
  std::size_t operator()(Word const& w) const noexcept {
    return detail::hash_range(w);
  }
};

////////////////////////////////////////////////////////////////////////
// Root
////////////////////////////////////////////////////////////////////////

// Coefficient vector in the simple-root basis.
struct Root {
  std::vector<int> coeffs;

  Root() = default;
  explicit Root(std::vector<int> c) : coeffs(std::move(c)) {}

  static Root simple(std::size_t n, std::size_t i) {
    Root r(std::vector<int>(n, 0));
    r.coeffs[i] = 1;
    return r;
  }

  [[nodiscard]] std::size_t size() const noexcept {
    return coeffs.size();
  }

  [[nodiscard]] int height() const noexcept {
    return std::accumulate(coeffs.begin(), coeffs.end(), 0);
  }

  // Sign of the first nonzero coefficient; roots are sign-coherent, so this
  // decides positivity.
  [[nodiscard]] bool is_positive() const noexcept {
    for (int c : coeffs) {
      if (c != 0) {
        return c > 0;
      }
    }
    return false;
  }

  [[nodiscard]] bool is_negative() const noexcept {
    for (int c : coeffs) {
      if (c != 0) {
        return c < 0;
      }
    }
    return false;
  }

  [[nodiscard]] bool is_sign_coherent() const noexcept {
    bool pos = false;
    bool neg = false;
    for (int c : coeffs) {
      pos = pos || c > 0;
      neg = neg || c < 0;
    }
    return !(pos && neg);
  }

  friend Root operator+(Root const& a, Root const& b) {
    Root r(a.coeffs);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
      r.coeffs[i] += b.coeffs[i];
    }
    return r;
  }

  friend Root operator-(Root const& a, Root const& b) {
    Root r(a.coeffs);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
      r.coeffs[i] -= b.coeffs[i];
    }
    return r;
  }

  friend Root operator-(Root const& a) {
    Root r(a.coeffs);
    for (int& c : r.coeffs) {
      c = -c;
    }
    return r;
  }

  friend bool operator==(Root const&, Root const&)  = default;
  friend auto operator<=>(Root const&, Root const&) = default;
};

struct RootHash {
  std::size_t operator()(Root const& r) const noexcept {
    return detail::hash_range(r.coeffs);
  }
};

using RootSequence = std::vector<Root>;

// 2B(a, b).
inline int pairing(CoxeterGraph const& g, Root const& a, Root const& b) {
  int         s = 0;
  std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) {
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      s += a.coeffs[i] * g.cartan(i, j) * b.coeffs[j];
    }
  }
  return s;
}

inline bool orthogonal(CoxeterGraph const& g, Root const& a, Root const& b) {
  return pairing(g, a, b) == 0;
}

namespace detail {

  // s_i applied to v in place: only coordinate i changes.
  inline void reflect_in_place(CoxeterGraph const& g, std::size_t i, int* v) {
    int p = 2 * v[i];
    for (std::size_t j : g.neighbours(i)) {
      p -= v[j];
    }
    v[i] -= p;
  }

}  // namespace detail

// s_i(a) = a - 2B(a, e_i) e_i, with i given as a label.
inline Root reflect(CoxeterGraph const& g, Label i, Root a) {
  std::size_t const idx = g.index_of(i);
  if (a.size() != g.size()) {
    throw PreconditionError("root dimension does not match the graph");
  }
  detail::reflect_in_place(g, idx, a.coeffs.data());
  return a;
}

////////////////////////////////////////////////////////////////////////
// GroupElement
////////////////////////////////////////////////////////////////////////

// Action of w on V in the simple-root basis. Column j of the matrix is
// w(e_j). The inverse matrix is carried along so that left descents are as
// cheap as right descents. Equality, order and hashing use the matrix only.
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement identity(std::size_t n) {
    GroupElement e;
    e.n_ = n;
    e.mat_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      e.mat_[i * n + i] = 1;
    }
    e.inv_ = e.mat_;
    return e;
  }

  [[nodiscard]] std::size_t rank() const noexcept {
    return n_;
  }

  [[nodiscard]] std::size_t length() const noexcept {
    return length_;
  }

  [[nodiscard]] int entry(std::size_t row, std::size_t col) const {
    return mat_[row * n_ + col];
  }

  [[nodiscard]] std::vector<int> const& matrix() const noexcept {
    return mat_;
  }

  // w(e_j)
  [[nodiscard]] Root column(std::size_t j) const {
    Root r(std::vector<int>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) {
      r.coeffs[i] = mat_[i * n_ + j];
    }
    return r;
  }

  // w^{-1}(e_j)
  [[nodiscard]] Root inverse_column(std::size_t j) const {
    Root r(std::vector<int>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) {
      r.coeffs[i] = inv_[i * n_ + j];
    }
    return r;
  }

  [[nodiscard]] Root act(Root const& a) const {
    Root r(std::vector<int>(n_, 0));
    for (std::size_t j = 0; j < n_; ++j) {
      if (a.coeffs[j] == 0) {
        continue;
      }
      for (std::size_t i = 0; i < n_; ++i) {
        r.coeffs[i] += mat_[i * n_ + j] * a.coeffs[j];
      }
    }
    return r;
  }

  [[nodiscard]] Root act_inverse(Root const& a) const {
    Root r(std::vector<int>(n_, 0));
    for (std::size_t j = 0; j < n_; ++j) {
      if (a.coeffs[j] == 0) {
        continue;
      }
      for (std::size_t i = 0; i < n_; ++i) {
        r.coeffs[i] += inv_[i * n_ + j] * a.coeffs[j];
      }
    }
    return r;
  }

  // l(w s_i) < l(w)  <=>  w(e_i) < 0
  [[nodiscard]] bool has_right_descent(std::size_t i) const noexcept {
    return first_nonzero_in_column(mat_, i) < 0;
  }

  // l(s_i w) < l(w)  <=>  w^{-1}(e_i) < 0
  [[nodiscard]] bool has_left_descent(std::size_t i) const noexcept {
    return first_nonzero_in_column(inv_, i) < 0;
  }

  // w s_i
  [[nodiscard]] GroupElement times_generator(CoxeterGraph const& g,
                                             std::size_t         i) const {
    GroupElement r = *this;
    r.length_      = has_right_descent(i) ? length_ - 1 : length_ + 1;
    r.mat_column_op(g, i);
    r.inv_row_op(g, i);
    return r;
  }

  // s_i w
  [[nodiscard]] GroupElement generator_times(CoxeterGraph const& g,
                                             std::size_t         i) const {
    GroupElement r = *this;
    r.length_      = has_left_descent(i) ? length_ - 1 : length_ + 1;
    std::swap(r.mat_, r.inv_);
    r.mat_column_op(g, i);
    r.inv_row_op(g, i);
    std::swap(r.mat_, r.inv_);
    return r;
  }

  [[nodiscard]] GroupElement inverse() const {
    GroupElement r = *this;
    std::swap(r.mat_, r.inv_);
    return r;
  }

  friend bool operator==(GroupElement const& a, GroupElement const& b) {
    return a.mat_ == b.mat_;
  }

  friend std::strong_ordering operator<=>(GroupElement const& a,
                                          GroupElement const& b) {
    return a.mat_ <=> b.mat_;
  }

 private:
  int first_nonzero_in_column(std::vector<int> const& m,
                              std::size_t             j) const noexcept {
    for (std::size_t i = 0; i < n_; ++i) {
      if (m[i * n_ + j] != 0) {
        return m[i * n_ + j];
      }
    }
    return 0;
  }

  // M <- M s_i: column j gains -C(j,i) * column i.
  void mat_column_op(CoxeterGraph const& g, std::size_t i) {
    for (std::size_t j : g.neighbours(i)) {
      for (std::size_t row = 0; row < n_; ++row) {
        mat_[row * n_ + j] += mat_[row * n_ + i];
      }
    }
    for (std::size_t row = 0; row < n_; ++row) {
      mat_[row * n_ + i] = -mat_[row * n_ + i];
    }
  }

  // M <- s_i M: reflect every column.
  void inv_row_op(CoxeterGraph const& g, std::size_t i) {
    for (std::size_t col = 0; col < n_; ++col) {
      int p = 2 * inv_[i * n_ + col];
      for (std::size_t j : g.neighbours(i)) {
        p -= inv_[j * n_ + col];
      }
      inv_[i * n_ + col] -= p;
    }
  }

  std::size_t      n_      = 0;
  std::size_t      length_ = 0;
  std::vector<int> mat_;
  std::vector<int> inv_;
};

struct GroupElementHash {
  std::size_t operator()(GroupElement const& e) const noexcept {
    return detail::hash_range(e.matrix());
  }
};

////////////////////////////////////////////////////////////////////////
// Words
////////////////////////////////////////////////////////////////////////

// Comma- and/or whitespace-separated labels; every label must be a vertex.
inline Word parse_word(CoxeterGraph const& g, std::string_view text) {
  Word        w;
  std::string token;
  auto        flush = [&]() {
    if (token.empty()) {
      return;
    }
    std::size_t used = 0;
    int         v    = 0;
    try {
      v = std::stoi(token, &used);
    } catch (std::exception const&) {
      throw ParseError("bad letter '" + token + "' in word");
    }
    if (used != token.size()) {
      throw ParseError("bad letter '" + token + "' in word");
    }
    if (!g.contains(v)) {
      throw ParseError("letter " + token + " is not a vertex of the graph");
    }
    w.push_back(v);
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return w;
}

inline std::string format_word(Word const& w, char sep = ',') {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) {
      out.push_back(sep);
    }
    out += std::to_string(w[k]);
  }
  return out;
}

inline std::string format_root(Root const& r) {
  std::string out = "[";
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
    if (k) {
      out.push_back(',');
    }
    out += std::to_string(r.coeffs[k]);
  }
  return out + "]";
}

inline void validate_word(CoxeterGraph const& g, Word const& w) {
  for (Label l : w) {
    if (!g.contains(l)) {
      throw ParseError("letter " + std::to_string(l)
                       + " is not a vertex of the graph");
    }
  }
}

inline std::vector<std::size_t> to_indices(CoxeterGraph const& g,
                                           Word const&         w) {
  std::vector<std::size_t> out;
  out.reserve(w.size());
  for (Label l : w) {
    out.push_back(g.index_of(l));
  }
  return out;
}

// phi(w), with the length of the image tracked exactly letter by letter.
inline GroupElement evaluate_word(CoxeterGraph const& g, Word const& w) {
  GroupElement e = GroupElement::identity(g.size());
  for (std::size_t i : to_indices(g, w)) {
    e = e.times_generator(g, i);
  }
  return e;
}

namespace detail {

  // Right-to-left scan: r_q = u^{-1}(e_a) where u is the suffix already read
  // and a the next letter. Returns nullopt as soon as a root is negative.
  inline std::optional<RootSequence> scan_root_sequence(CoxeterGraph const& g,
                                                        Word const&         w) {
    std::size_t const n = g.size();
    // m = u^{-1}, stored column-major
    std::vector<int> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      m[i * n + i] = 1;
    }
    RootSequence out;
    out.reserve(w.size());
    auto const idx = to_indices(g, w);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
      std::size_t const a = *it;
      Root              r(std::vector<int>(m.begin() + a * n,
                                           m.begin() + (a + 1) * n));
      if (!r.is_positive()) {
        return std::nullopt;
      }
      out.push_back(std::move(r));
      for (std::size_t j : g.neighbours(a)) {
        for (std::size_t row = 0; row < n; ++row) {
          m[j * n + row] += m[a * n + row];
        }
      }
      for (std::size_t row = 0; row < n; ++row) {
        m[a * n + row] = -m[a * n + row];
      }
    }
    return out;
  }

}  // namespace detail

inline bool is_reduced(CoxeterGraph const& g, Word const& w) {
  return detail::scan_root_sequence(g, w).has_value();
}

inline void require_reduced(CoxeterGraph const& g, Word const& w) {
  if (!is_reduced(g, w)) {
    throw PreconditionError("word " + format_word(w) + " is not reduced");
  }
}

// r_1 = e_{i_n}, r_q = s_{i_n} ... s_{i_{n-q+2}}(e_{i_{n-q+1}}).
inline RootSequence root_sequence(CoxeterGraph const& g, Word const& w) {
  auto rs = detail::scan_root_sequence(g, w);
  if (!rs) {
    throw PreconditionError("word " + format_word(w) + " is not reduced");
  }
  return std::move(*rs);
}

// Inverse of root_sequence: at each step the next root, pulled back through
// the suffix built so far, must be a simple root e_a, and a is the next
// letter (read right to left).
inline Word word_from_root_sequence(CoxeterGraph const& g,
                                    RootSequence const& rs) {
  GroupElement u = GroupElement::identity(g.size());
  Word         reversed;
  for (Root const& r : rs) {
    if (r.size() != g.size() || !r.is_positive()) {
      throw PreconditionError("not a root sequence: entry " + format_root(r)
                              + " is not a positive root");
    }
    Root const  s     = u.act(r);
    std::size_t found = g.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (s == Root::simple(g.size(), i)) {
        found = i;
        break;
      }
    }
    if (found == g.size()) {
      throw PreconditionError("not a root sequence: entry " + format_root(r)
                              + " is not realisable at this position");
    }
    reversed.push_back(g.label(found));
    u = u.generator_times(g, found);
  }
  return Word(reversed.rbegin(), reversed.rend());
}

////////////////////////////////////////////////////////////////////////
// Braid moves
////////////////////////////////////////////////////////////////////////

enum class MoveKind { short_move, long_move };

namespace detail {

  inline std::optional<MoveKind> move_at(CoxeterGraph const& g,
                                         Word const&         w,
                                         std::size_t         pos) {
    if (pos + 1 >= w.size() || w[pos] == w[pos + 1]) {
      return std::nullopt;
    }
    std::size_t const a = g.index_of(w[pos]);
    std::size_t const b = g.index_of(w[pos + 1]);
    if (!g.adjacent(a, b)) {
      return MoveKind::short_move;
    }
    if (pos + 2 < w.size() && w[pos + 2] == w[pos]) {
      return MoveKind::long_move;
    }
    return std::nullopt;
  }

  inline Word do_move(Word w, std::size_t pos, MoveKind kind) {
    if (kind == MoveKind::short_move) {
      std::swap(w[pos], w[pos + 1]);
    } else {
      Label const a = w[pos];
      w[pos]        = w[pos + 1];
      w[pos + 1]    = a;
      w[pos + 2]    = w[pos];
    }
    return w;
  }

  // Breadth-first closure of {w} under braid moves (long ones optional).
  // Output sorted.
  inline std::vector<Word> braid_closure(CoxeterGraph const& g,
                                         Word const&         w,
                                         bool                long_moves,
                                         std::size_t         max_nodes) {
    std::unordered_set<Word, WordHash> seen{w};
    std::vector<Word>                  queue{w};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Word const cur = queue[head];
      for (std::size_t pos = 0; pos + 1 < cur.size(); ++pos) {
        auto kind = move_at(g, cur, pos);
        if (!kind || (*kind == MoveKind::long_move && !long_moves)) {
          continue;
        }
        Word next = do_move(cur, pos, *kind);
        if (seen.insert(next).second) {
          if (seen.size() > max_nodes) {
            throw CapExceeded("braid closure exceeded "
                              + std::to_string(max_nodes) + " words");
          }
          queue.push_back(std::move(next));
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
  }

}  // namespace detail

// Which move (if any) applies at pos; does not check reducedness.
inline std::optional<MoveKind> braid_move_kind(CoxeterGraph const& g,
                                               Word const&         w,
                                               std::size_t         pos) {
  return detail::move_at(g, w, pos);
}

// ij -> ji when m_ij = 2, iji -> jij when m_ij = 3, at 0-based position pos.
inline Word apply_braid_move(CoxeterGraph const& g,
                             Word const&         w,
                             std::size_t         pos) {
  validate_word(g, w);
  require_reduced(g, w);
  auto kind = detail::move_at(g, w, pos);
  if (!kind) {
    throw NoMoveError("no braid move applies at position "
                      + std::to_string(pos) + " of " + format_word(w));
  }
  return detail::do_move(w, pos, *kind);
}

// Every reduced word of phi(w) (connected under braid moves).
inline std::vector<Word> reduced_word_graph(
    CoxeterGraph const& g,
    Word const&         w,
    std::size_t         max_nodes = default_max_nodes) {
  validate_word(g, w);
  require_reduced(g, w);
  return detail::braid_closure(g, w, true, max_nodes);
}

inline std::vector<Word> commutation_class(
    CoxeterGraph const& g,
    Word const&         w,
    std::size_t         max_nodes = default_max_nodes) {
  validate_word(g, w);
  require_reduced(g, w);
  return detail::braid_closure(g, w, false, max_nodes);
}

// Lexicographically least reduced word: repeatedly strip the smallest left
// descent.
inline Word canonical_form(CoxeterGraph const& g, GroupElement e) {
  Word w;
  for (;;) {
    std::size_t i = 0;
    while (i < g.size() && !e.has_left_descent(i)) {
      ++i;
    }
    if (i == g.size()) {
      return w;
    }
    w.push_back(g.label(i));
    e = e.generator_times(g, i);
  }
}

inline Word canonical_form(CoxeterGraph const& g, Word const& w) {
  return canonical_form(g, evaluate_word(g, w));
}

}  // namespace maxclust

#endif  // MAXCLUST_WORDS_ROOTS_HPP_
