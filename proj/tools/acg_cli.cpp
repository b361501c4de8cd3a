// acg: command-line front end.
//
// Exit codes: 0 ok, 1 other failure, 2 parse/parameter error, 3 order cap
// exceeded, 4 abelian input, 5 not an AC-group, 6 search budget refused,
// 7 theorem violation.

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "acg/classify.hpp"
#include "acg/diophantine.hpp"
#include "acg/group_spec.hpp"
#include "acg/harness.hpp"
#include "acg/report_json.hpp"
#include "acg/structure.hpp"

using namespace acg;

namespace {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidParameter:
    case ErrorCode::InvalidGroupTable:
    case ErrorCode::InvalidTuple:
      return 2;
    case ErrorCode::OrderCapExceeded:
      return 3;
    case ErrorCode::AbelianGroup:
      return 4;
    case ErrorCode::NotACGroup:
      return 5;
    case ErrorCode::BoundsTooLarge:
      return 6;
    case ErrorCode::TheoremViolation:
      return 7;
    default:
      return 1;
  }
}

const char* yes(bool b) { return b ? "yes" : "no"; }

struct Options {
  std::string spec;
  bool json = false;
  bool signature = false;
  bool formula = false;
  std::size_t cap = kDefaultOrderCap;
  std::size_t max_order = kDefaultCatalogOrder;
  int jobs = 0;
  std::string bounds;
  std::string resume;
  std::string cursor;
  std::string out;
  std::size_t max_shards = SIZE_MAX;
  bool override_budget = false;
};

int cmd_analyze(const Options& o) {
  const FiniteGroup g = build_from_spec(o.spec, o.cap);
  const auto cls = nilpotency_class(g);
  const bool abelian = is_abelian(g);
  std::optional<bool> ac;
  if (!abelian) ac = is_ac(g);
  const bool solvable = is_solvable(g);
  if (o.json) {
    ojson j;
    j["group"] = g.name();
    j["order"] = g.order();
    j["center"] = center(g).order();
    j["nilpotency_class"] = cls ? ojson(*cls) : ojson("NotNilpotent");
    j["abelian"] = abelian;
    j["ac"] = ac ? ojson(*ac) : ojson(nullptr);
    j["solvable"] = solvable;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "group: " << g.name() << '\n'
              << "order: " << g.order() << '\n'
              << "center: " << center(g).order() << '\n'
              << "nilpotency class: " << (cls ? std::to_string(*cls) : "NotNilpotent") << '\n'
              << "abelian: " << yes(abelian) << '\n'
              << "AC: " << (ac ? yes(*ac) : "n/a (abelian)") << '\n'
              << "solvable: " << yes(solvable) << '\n';
  }
  return 0;
}

int cmd_graph(const Options& o) {
  const FiniteGroup g = build_from_spec(o.spec, o.cap);
  const NonCommutingGraph graph = build_graph(g);
  const bool ac = is_ac(g);
  if (!ac && (o.signature || o.formula))
    throw Error(ErrorCode::NotACGroup, g.name() + " is not an AC-group; its graph is not complete multipartite");
  const bool both = !o.signature && !o.formula;
  ojson j;
  j["group"] = g.name();
  j["vertices"] = graph.vertex_count();
  j["ac"] = ac;
  if (ac) {
    const CentralizerPartition part = centralizer_partition(g);
    if (o.signature || both) j["signature"] = json_of(signature(part, g.name()));
    j["part_count"] = part.parts.size();
    if (o.formula || both) j["formula"] = json_of(verify_clique_formula(part));
  }
  if (o.json) {
    std::cout << j.dump() << '\n';
    return 0;
  }
  std::cout << "group: " << g.name() << "\nvertices: " << graph.vertex_count() << "\nAC: " << yes(ac) << '\n';
  if (!ac) return 0;
  std::cout << "parts: " << j["part_count"].get<std::size_t>() << '\n';
  if (j.contains("signature")) std::cout << "signature: " << j["signature"]["parts"].dump() << '\n';
  if (j.contains("formula")) {
    const auto& f = j["formula"];
    std::cout << "|C(G)| = " << f["measured"] << ", -[G:Z] + 1 + sum[C:Z] = " << f["formula"];
    if (f.contains("quotient_prime"))
      std::cout << ", |C(G)| mod " << f["quotient_prime"] << " = 1: " << yes(f["congruent_one"].get<bool>());
    std::cout << "\nformula check: " << (f["holds"].get<bool>() ? "PASS" : "FAIL") << '\n';
    if (!f["holds"].get<bool>()) return 7;
  }
  return 0;
}

int cmd_classify(const Options& o) {
  const FiniteGroup g = build_from_spec(o.spec, o.cap);
  const ACClassification c = classify(g);
  if (o.json) {
    std::cout << json_of(c).dump() << '\n';
    return 0;
  }
  std::cout << "group: " << c.group << "\ntypes:";
  for (int t : c.types) std::cout << ' ' << t;
  std::cout << "\nmeasured |C(G)|: " << c.measured_count << '\n';
  for (const auto& [t, n] : c.predicted_counts) std::cout << "type " << t << " predicts " << n << '\n';
  if (c.type1) std::cout << "type 1: N of order " << c.type1->normal_abelian.order() << ", index " << c.type1->index << '\n';
  for (const auto* fd : {c.type2 ? &*c.type2 : nullptr, c.type3 ? &*c.type3 : nullptr})
    if (fd) std::cout << "Frobenius quotient: |F| = " << fd->kernel.order() << ", |K| = " << fd->complement.order() << '\n';
  if (c.type4) std::cout << "type 4: V of order " << c.type4->v.order() << '\n';
  if (c.type5)
    std::cout << "type 5: p = " << c.type5->p << ", |P| = " << c.type5->sylow.order()
              << ", |A| = " << c.type5->abelian_part.order() << '\n';
  return 0;
}

int cmd_profile(const Options& o) {
  const FiniteGroup g = build_from_spec(o.spec, o.cap);
  const NilpotentACProfile p = nilpotent_ac_profile(g);
  ojson j = json_of(p, g.name());
  std::optional<PGroupLemmaReport> lemma;
  if (p.abelian_part.is_trivial()) lemma = verify_pgroup_lemma(g);
  if (lemma) j["pgroup_lemma"] = json_of(*lemma);
  if (o.json) {
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "group: " << g.name() << "\np: " << p.p << "\nn: " << p.n << "\nr: " << p.r << "\na: " << p.a
              << "\n|P|: " << p.sylow.order() << "\n|A|: " << p.abelian_part.order() << '\n';
    if (lemma) {
      std::cout << "p-group lemma: " << (lemma->ok() ? "PASS" : "FAIL") << " (class " << lemma->c << ")\n";
      for (const auto& c : lemma->clauses) {
        std::cout << "  clause " << c.clause << ": " << (c.checks ? std::to_string(c.checks) + " checks" : "vacuous");
        for (const auto& v : c.violations) std::cout << "\n    " << v;
        std::cout << '\n';
      }
    }
  }
  return lemma && !lemma->ok() ? 7 : 0;
}

int cmd_catalog(const Options& o) {
  const Catalog cat = generate_catalog(o.max_order, {}, o.cap);
  for (const auto& e : cat.entries) {
    if (o.json) {
      std::cout << json_of(e).dump() << '\n';
    } else {
      std::cout << e.name << "  order=" << e.order << " center=" << e.center_order;
      if (e.is_abelian) std::cout << " abelian";
      else std::cout << " ac=" << yes(e.is_ac) << " solvable=" << yes(e.is_solvable) << " nilpotent=" << yes(e.is_nilpotent);
      if (e.classification) {
        std::cout << " types=";
        for (int t : e.classification->types) std::cout << t;
      }
      std::cout << '\n';
    }
  }
  std::cerr << "catalog: " << cat.entries.size() << " groups (" << cat.duplicates_dropped << " duplicates dropped)\n";
  return 0;
}

int cmd_pairs(const Options& o) {
  const Catalog cat = generate_catalog(o.max_order, {}, o.cap);
  const PairReport rep = find_graph_pairs(cat);
  int violations = 0;
  for (const auto& p : rep.pairs) {
    if (p.verdict == PairVerdict::Violation) ++violations;
    if (o.json) {
      std::cout << json_of(p).dump() << '\n';
    } else {
      ojson parts = p.parts;
      std::cout << p.g << "  ~  " << p.h << "  parts=" << parts.dump() << " same_order=" << yes(p.same_order)
                << " verdict=" << to_string(p.verdict) << (p.note.empty() ? "" : " (" + p.note + ")") << '\n';
    }
  }
  std::cerr << "pairs: " << rep.pairs.size() << " over " << cat.entries.size() << " groups\n";
  return violations ? 7 : 0;
}

int cmd_verify(const Options& o) {
  const Catalog cat = generate_catalog(o.max_order, {}, o.cap);
  const PairReport pairs = find_graph_pairs(cat);
  const TheoremReport rep = verify_theorems(cat, pairs);
  if (o.json) {
    ojson j = json_of(rep);
    j["groups"] = cat.entries.size();
    j["pairs"] = pairs.pairs.size();
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "groups: " << cat.entries.size() << "\npairs: " << pairs.pairs.size() << '\n';
    for (const auto& c : rep.checks) {
      std::cout << (c.violations.empty() ? "PASS " : "FAIL ") << c.id << " (" << c.checked << " checked)\n";
      for (const auto& v : c.violations) std::cout << "  " << v << '\n';
    }
  }
  return rep.ok() ? 0 : 7;
}

int cmd_search(const Options& o, SearchKind kind) {
  const std::string tag = kind == SearchKind::Type3 ? "search-type3" : "search-type1";
  SearchBounds bounds = o.bounds.empty() ? SearchBounds{} : read_bounds_file(o.bounds);
  std::optional<SearchCursor> cursor;
  if (!o.resume.empty()) {
    cursor = read_cursor_file(o.resume);
    if (o.bounds.empty()) bounds = cursor->bounds;
  }
  SearchOptions so;
  so.jobs = o.jobs;
  so.max_shards = o.max_shards;
  so.override_budget = o.override_budget;
  so.cursor_path = !o.cursor.empty() ? o.cursor : !o.resume.empty() ? o.resume : !o.out.empty() ? o.out + ".cursor" : "";

  std::ofstream file;
  if (!o.out.empty()) {
    if (cursor) {
      // Drop anything written after the last checkpoint, then append.
      std::error_code ec;
      if (std::filesystem::exists(o.out)) std::filesystem::resize_file(o.out, cursor->output_bytes, ec);
      if (ec) throw Error(ErrorCode::IoError, "cannot truncate " + o.out + ": " + ec.message());
      file.open(o.out, std::ios::app | std::ios::binary);
    } else {
      file.open(o.out, std::ios::trunc | std::ios::binary);
    }
    if (!file) throw Error(ErrorCode::IoError, "cannot open " + o.out);
  }
  std::ostream& out = o.out.empty() ? std::cout : file;
  const SearchCursor done = run_search(kind, bounds, so, out, cursor);
  file.close();
  // The summary goes to stdout only when stdout is not carrying the NDJSON stream.
  std::ostream& summary = o.out.empty() ? std::cerr : std::cout;
  summary << "feasible=" << done.feasible << " scanned=" << done.scanned << '\n';
  if (!done.complete())
    std::cerr << tag << ": stopped at shard " << done.next_shard << " of " << done.total_shards
              << (so.cursor_path.empty() ? "" : "; resume with --resume " + so.cursor_path) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groups, non-commuting graphs and AC-group classification"};
  app.require_subcommand(1);
  Options o;

  auto spec_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("spec", o.spec, "group spec, e.g. \"Dih(4) x Cyc(3)\" or file:table.txt")->required();
    c->add_flag("--json", o.json, "machine-readable output");
    c->add_option("--cap", o.cap, "largest group order to construct")->capture_default_str();
    return c;
  };
  auto* analyze = spec_cmd("analyze", "order, center, nilpotency class, AC and solvability");
  auto* graph = spec_cmd("graph", "non-commuting graph signature and clique-count formula");
  graph->add_flag("--signature", o.signature, "print the multipartite signature");
  graph->add_flag("--formula", o.formula, "check the centralizer-count formula");
  auto* classify_cmd = spec_cmd("classify", "Schmidt type of a solvable AC-group");
  auto* profile = spec_cmd("profile", "Sylow decomposition of a nilpotent AC-group");

  auto catalog_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--max-order", o.max_order, "largest catalog group order")->capture_default_str();
    c->add_flag("--json", o.json, "NDJSON output");
    c->add_option("--cap", o.cap, "largest group order to construct")->capture_default_str();
    c->add_option("--jobs", o.jobs, "worker threads (default: all)");
    return c;
  };
  auto* catalog = catalog_cmd("catalog", "list the group catalog with its analysis");
  auto* pairs = catalog_cmd("pairs", "catalog pairs with isomorphic non-commuting graphs");
  auto* verify = catalog_cmd("verify", "check the pairing theorems over the catalog");

  auto search_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--bounds", o.bounds, "bounds JSON file")->check(CLI::ExistingFile);
    c->add_option("--resume", o.resume, "continue from a cursor file")->check(CLI::ExistingFile);
    c->add_option("--cursor", o.cursor, "where to checkpoint (default: the --resume file, else OUT.cursor)");
    c->add_option("--out", o.out, "write NDJSON here instead of stdout");
    c->add_option("--jobs", o.jobs, "worker threads (default: all)");
    c->add_option("--max-shards", o.max_shards, "stop after this many shards");
    c->add_flag("--override-budget", o.override_budget, "run even if the search exceeds the size budget");
    return c;
  };
  auto* type3 = search_cmd("search-type3", "enumerate feasible type-3 tuples");
  auto* type1 = search_cmd("search-type1", "enumerate feasible type-1 tuples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (o.jobs < 0) {
    std::cerr << "error: --jobs must be non-negative\n";
    return 2;
  }
  if (o.jobs > 0) omp_set_num_threads(o.jobs);

  try {
    if (*analyze) return cmd_analyze(o);
    if (*graph) return cmd_graph(o);
    if (*classify_cmd) return cmd_classify(o);
    if (*profile) return cmd_profile(o);
    if (*catalog) return cmd_catalog(o);
    if (*pairs) return cmd_pairs(o);
    if (*verify) return cmd_verify(o);
    if (*type3) return cmd_search(o, SearchKind::Type3);
    if (*type1) return cmd_search(o, SearchKind::Type1);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
