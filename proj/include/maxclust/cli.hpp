#ifndef MAXCLUST_CLI_HPP_
#define MAXCLUST_CLI_HPP_

// Command-line front end. run() is the whole program; tools/maxclust.cpp only
// forwards argv to it. Exit status: 0 success, 1 domain error, 2 usage error.

#include <cstddef>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxclust/clusters.hpp"
#include "maxclust/enumerate.hpp"
#include "maxclust/error.hpp"
#include "maxclust/graph.hpp"
#include "maxclust/triples.hpp"
#include "maxclust/words_roots.hpp"

namespace maxclust::cli {

inline constexpr int schema_version = 1;

namespace detail {

  inline std::string read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ParseError("cannot read file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // "@path" reads the file; anything else is taken literally.
  inline std::string resolve(std::string const& arg) {
    if (!arg.empty() && arg.front() == '@') {
      return read_file(arg.substr(1));
    }
    return arg;
  }

  inline CoxeterGraph load_graph(std::string const& arg) {
    if (arg.empty()) {
      throw ParseError("a graph is required (--graph)");
    }
    std::string text = resolve(arg);
    if (arg.front() != '@') {
      std::ifstream probe(arg);
      bool const    family = !arg.empty() && std::string("ADE").find(arg[0]) != std::string::npos
                          && arg.find_first_not_of("0123456789", 1) == std::string::npos;
      if (probe && !family && arg.front() != '{') {
        text = read_file(arg);
      }
    }
    return parse_graph(text);
  }

  inline nlohmann::json envelope(std::string const& kind, nlohmann::json body) {
    body["schema"]  = "maxclust/" + kind;
    body["version"] = schema_version;
    return body;
  }

  inline char const* yes_no(bool b) {
    return b ? "yes" : "no";
  }

  struct Options {
    std::string graph;
    std::string word;
    std::string format     = "text";
    std::size_t max_length = 10;
    std::size_t max_nodes  = default_max_nodes;
    std::size_t index      = 1;
    bool        count      = false;
    bool        override   = false;
    bool        full       = false;
    bool        closure    = false;
    bool        short_only = false;
  };

  inline void print_json(std::ostream& out, nlohmann::json const& j) {
    out << j.dump(2) << '\n';
  }

  inline int cmd_graph(Options const& o, std::ostream& out) {
    CoxeterGraph const g   = load_graph(o.graph);
    auto const         rep = classify_graph(g);
    if (o.format == "json") {
      auto body     = to_json(rep);
      body["graph"] = to_json(g);
      print_json(out, envelope("finiteness", body));
      return 0;
    }
    out << "mc_finite=" << (rep.mc_finite ? "true" : "false") << '\n';
    for (auto const& c : rep.per_component) {
      out << "component {" << format_word(c.vertices) << "}: "
          << (c.mc_finite ? "finite" : "infinite") << " (" << to_string(c.reason)
          << ")";
      if (!c.arms.empty()) {
        out << " arms=" << format_word(c.arms);
      }
      out << '\n';
    }
    return 0;
  }

  inline Word load_word(CoxeterGraph const& g, Options const& o) {
    return parse_word(g, resolve(o.word));
  }

  inline int cmd_classify(Options const& o, std::ostream& out) {
    CoxeterGraph const g   = load_graph(o.graph);
    Word const         w   = load_word(g, o);
    auto const         rep = classify_element(g, w, nullptr, o.max_nodes);
    if (o.format == "json") {
      auto body    = to_json(rep);
      body["word"] = w;
      print_json(out, envelope("triples", body));
      return 0;
    }
    out << "word " << format_word(w) << '\n';
    out << "MC=" << yes_no(rep.flags.maximally_clustered)
        << " FB=" << yes_no(rep.flags.freely_braided)
        << " FC=" << yes_no(rep.flags.fully_commutative) << '\n';
    out << "N=" << rep.n_w << " N~=" << rep.n_tilde_w << '\n';
    for (auto const& t : rep.triples) {
      out << "  " << format_root(t.low_a) << " + " << format_root(t.low_b)
          << " = " << format_root(t.high)
          << (t.contractible ? " contractible" : "") << '\n';
    }
    return 0;
  }

  inline int cmd_rootseq(Options const& o, std::ostream& out) {
    CoxeterGraph const g  = load_graph(o.graph);
    Word const         w  = load_word(g, o);
    RootSequence const rs = root_sequence(g, w);
    if (o.format == "json") {
      nlohmann::json roots = nlohmann::json::array();
      for (auto const& r : rs) {
        roots.push_back(r.coeffs);
      }
      print_json(out,
                 envelope("rootseq",
                          {{"word", w}, {"labels", g.labels()}, {"roots", roots}}));
      return 0;
    }
    for (std::size_t q = 0; q < rs.size(); ++q) {
      out << "r" << q + 1 << " = " << format_root(rs[q]) << '\n';
    }
    return 0;
  }

  inline int cmd_moves(Options const& o, std::ostream& out) {
    CoxeterGraph const g = load_graph(o.graph);
    Word const         w = load_word(g, o);
    require_reduced(g, w);
    if (o.closure || o.short_only) {
      auto const words = o.short_only ? commutation_class(g, w, o.max_nodes)
                                      : reduced_word_graph(g, w, o.max_nodes);
      if (o.format == "json") {
        print_json(out,
                   envelope("words",
                            {{"word", w},
                             {"short_only", o.short_only},
                             {"count", words.size()},
                             {"words", words}}));
      } else if (o.count) {
        out << words.size() << '\n';
      } else {
        for (auto const& v : words) {
          out << format_word(v) << '\n';
        }
      }
      return 0;
    }
    nlohmann::json moves = nlohmann::json::array();
    for (std::size_t pos = 0; pos + 1 < w.size(); ++pos) {
      auto kind = braid_move_kind(g, w, pos);
      if (!kind) {
        continue;
      }
      Word const  next = apply_braid_move(g, w, pos);
      char const* name = *kind == MoveKind::short_move ? "short" : "long";
      if (o.format == "json") {
        moves.push_back({{"position", pos}, {"kind", name}, {"result", next}});
      } else {
        out << pos << ' ' << name << ' ' << format_word(next) << '\n';
      }
    }
    if (o.format == "json") {
      print_json(out, envelope("moves", {{"word", w}, {"moves", moves}}));
    }
    return 0;
  }

  inline ContractedDecomposition load_decomposition(CoxeterGraph const& g,
                                                    Options const&      o,
                                                    TripleCache&        cache) {
    std::string const text = resolve(o.word);
    if (text.find('[') != std::string::npos) {
      ContractedDecomposition d = parse_decomposition(g, text);
      // must agree with the element's own parse
      auto const check = contracted_decomposition(g, d.word(), &cache);
      if (check.word() != d.word() || format_decomposition(check) != format_decomposition(d)) {
        throw NotContracted("bracketing " + text
                            + " does not match the contracted parse "
                            + format_decomposition(check));
      }
      return d;
    }
    Word const w = parse_word(g, text);
    return contracted_decomposition(
        g, find_contracted_expression(g, w, &cache, o.max_nodes), &cache);
  }

  inline int cmd_contract(Options const& o, std::ostream& out) {
    CoxeterGraph const g = load_graph(o.graph);
    TripleCache        cache;
    auto const         d = load_decomposition(g, o, cache);
    if (o.format == "json") {
      print_json(out, envelope("contracted", to_json(d)));
    } else {
      out << format_decomposition(d) << '\n';
    }
    return 0;
  }

  inline int cmd_pi(Options const& o, std::ostream& out) {
    CoxeterGraph const g = load_graph(o.graph);
    require_pi_scope(g);
    TripleCache cache;
    Word        image;
    std::string source;
    if (o.full) {
      Word const w = load_word(g, o);
      source       = format_word(w);
      image        = pi_full(g, w, &cache, o.max_nodes);
    } else {
      auto const d = load_decomposition(g, o, cache);
      source       = format_decomposition(d);
      image        = pi(g, d, o.index, o.max_nodes);
    }
    auto const rep = classify_element(g, image, &cache, o.max_nodes);
    if (o.format == "json") {
      print_json(out,
                 envelope("pi",
                          {{"input", source},
                           {"index", o.full ? nlohmann::json(nullptr)
                                            : nlohmann::json(o.index)},
                           {"full", o.full},
                           {"image", image},
                           {"n_w", rep.n_w},
                           {"n_tilde_w", rep.n_tilde_w},
                           {"maximally_clustered", rep.flags.maximally_clustered}}));
      return 0;
    }
    out << format_word(image) << '\n';
    out << "N~=" << rep.n_tilde_w << '\n';
    return 0;
  }

  inline int cmd_census(Options const& o, std::ostream& out) {
    CoxeterGraph const g = load_graph(o.graph);
    TripleCache        cache;
    auto const         rows = enumerate_by_length(g, o.max_length, o.max_nodes, &cache);
    if (o.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (auto const& r : rows) {
        arr.push_back(to_json(r));
      }
      print_json(out, envelope("census", {{"rows", arr}}));
      return 0;
    }
    out << std::setw(6) << "length" << std::setw(10) << "total" << std::setw(10)
        << "fc" << std::setw(10) << "fb" << std::setw(10) << "mc" << '\n';
    for (auto const& r : rows) {
      out << std::setw(6) << r.length << std::setw(10) << r.total << std::setw(10)
          << r.fc << std::setw(10) << r.fb << std::setw(10) << r.mc << '\n';
    }
    return 0;
  }

  inline int cmd_mc_all(Options const& o,
                        bool           length_given,
                        std::ostream&  out) {
    CoxeterGraph const g = load_graph(o.graph);
    McOptions          opt;
    opt.max_nodes           = o.max_nodes;
    opt.override_finiteness = o.override;
    if (length_given) {
      opt.max_length = o.max_length;
    } else if (o.override && !is_mc_finite(g)) {
      throw PreconditionError(
          "--override-finiteness on this graph needs --max-length");
    }
    TripleCache cache;
    auto const  res = enumerate_mc(g, opt, &cache);
    if (o.format == "json") {
      nlohmann::json body = {{"count", res.elements.size()},
                             {"per_length", res.per_length},
                             {"frontier_empty", res.frontier_empty}};
      if (!o.count) {
        body["elements"] = res.elements;
      }
      print_json(out, envelope("mc-all", body));
      return 0;
    }
    if (o.count) {
      out << res.elements.size() << '\n';
      return 0;
    }
    for (auto const& w : res.elements) {
      out << (w.empty() ? "e" : format_word(w)) << '\n';
    }
    return 0;
  }

}  // namespace detail

inline int run(std::vector<std::string> const& args,
               std::ostream&                   out,
               std::ostream&                   err) {
  using detail::Options;
  Options  o;
  CLI::App app{"Maximally clustered elements of simply laced Coxeter groups",
               "maxclust"};
  app.require_subcommand(1);

  auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_graph = [&o](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "Graph: A<n>, D<n>, E<n>, a document, or @file")
        ->required();
  };
  auto add_word = [&o](CLI::App* sub) {
    sub->add_option("--word", o.word, "Word such as 1,2,1, or @file")->required();
  };
  auto add_nodes = [&o](CLI::App* sub) {
    sub->add_option("--max-nodes", o.max_nodes, "Closure/enumeration node cap")
        ->check(CLI::PositiveNumber);
  };

  auto* graph = app.add_subcommand("graph", "Finiteness classification of a graph");
  std::string positional;
  graph->add_option("spec", positional, "Graph specification");
  graph->add_option("--graph", o.graph, "Graph specification");
  add_format(graph);

  auto* classify = app.add_subcommand("classify", "Triples, N, N~ and element classes");
  add_graph(classify);
  add_word(classify);
  add_format(classify);
  add_nodes(classify);

  auto* rootseq = app.add_subcommand("rootseq", "Root sequence of a reduced word");
  add_graph(rootseq);
  add_word(rootseq);
  add_format(rootseq);

  auto* moves = app.add_subcommand("moves", "Braid moves and reduced-word closures");
  add_graph(moves);
  add_word(moves);
  add_format(moves);
  add_nodes(moves);
  moves->add_flag("--closure", o.closure, "List every reduced word of the element");
  moves->add_flag("--short-only", o.short_only, "List the commutation class");
  moves->add_flag("--count", o.count, "Print only the number of words");

  auto* contract = app.add_subcommand("contract", "Contracted reduced expression");
  add_graph(contract);
  add_word(contract);
  add_format(contract);
  add_nodes(contract);

  auto* pi_cmd = app.add_subcommand("pi", "Apply a contraction operator");
  add_graph(pi_cmd);
  add_word(pi_cmd);
  add_format(pi_cmd);
  add_nodes(pi_cmd);
  pi_cmd->add_option("--index", o.index, "Cluster index j (from 1)")
      ->check(CLI::PositiveNumber);
  pi_cmd->add_flag("--full", o.full, "Apply pi_1 N~(w) times");

  auto* census = app.add_subcommand("census", "Per-length element counts");
  add_graph(census);
  add_format(census);
  add_nodes(census);
  census->add_option("--max-length", o.max_length, "Largest length to enumerate");

  auto* mc_all = app.add_subcommand("mc-all", "All maximally clustered elements");
  add_graph(mc_all);
  add_format(mc_all);
  add_nodes(mc_all);
  auto* mc_len = mc_all->add_option("--max-length", o.max_length, "Length limit");
  mc_all->add_flag("--count", o.count, "Print only the number of elements");
  mc_all->add_flag("--override-finiteness", o.override,
                   "Allow graphs with infinitely many such elements");

  std::vector<char const*> argv{"maxclust"};
  for (auto const& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return 0;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << '\n';
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  try {
    if (graph->parsed()) {
      if (o.graph.empty()) {
        o.graph = positional;
      }
      if (o.graph.empty()) {
        err << "error: graph needs a specification\n" << graph->help();
        return 2;
      }
      return detail::cmd_graph(o, out);
    }
    if (classify->parsed()) {
      return detail::cmd_classify(o, out);
    }
    if (rootseq->parsed()) {
      return detail::cmd_rootseq(o, out);
    }
    if (moves->parsed()) {
      return detail::cmd_moves(o, out);
    }
    if (contract->parsed()) {
      return detail::cmd_contract(o, out);
    }
    if (pi_cmd->parsed()) {
      return detail::cmd_pi(o, out);
    }
    if (census->parsed()) {
      return detail::cmd_census(o, out);
    }
    return detail::cmd_mc_all(o, mc_len->count() > 0, out);
  } catch (Error const& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace maxclust::cli

#endif  // MAXCLUST_CLI_HPP_
