#pragma once

// Group catalog, non-commuting-graph pair search and the empirical checks of
// the pairing theorems over the catalog.
//
// Entries keep only their spec and analysis; tables are rebuilt on demand so a
// catalog of a few thousand groups stays small in memory.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acg/group.hpp"
#include "acg/group_spec.hpp"
#include "acg/noncomm_graph.hpp"

namespace acg {

struct ClassificationSummary {
  std::set<int> types;
  std::map<int, std::int64_t> predicted_counts;
  std::int64_t measured_count = 0;
  // Witness sizes.
  std::size_t type1_n = 0;
  std::size_t frobenius_kernel = 0;      // |F| for types 2/3
  std::size_t frobenius_complement = 0;  // |K|
  std::size_t type4_v = 0;
  std::uint64_t type5_p = 0;
  std::size_t type5_sylow = 0, type5_abelian = 0;
};

struct ProfileSummary {
  std::uint64_t p = 0;
  unsigned n = 0, r = 0;
  std::size_t a = 0;
};

struct CatalogEntry {
  GroupSpec spec;
  std::string name;  // canonical spec text
  std::size_t order = 0;
  std::size_t center_order = 0;
  std::vector<std::size_t> order_profile;
  bool valid = false;  // group axioms re-checked on the built table
  bool is_abelian = false;
  bool is_ac = false;
  bool is_solvable = false;
  bool is_nilpotent = false;
  std::size_t nonabelian_sylows = 0;  // nilpotent entries only
  std::optional<GraphSignature> signature;
  std::optional<ClassificationSummary> classification;
  std::optional<ProfileSummary> profile;
  std::optional<bool> pgroup_lemma_ok;  // AC p-groups only

  FiniteGroup build() const;
};

struct Catalog {
  std::size_t max_order = 0;
  std::vector<CatalogEntry> entries;  // sorted by (order, name)
  std::size_t duplicates_dropped = 0;
};

inline constexpr std::size_t kDefaultCatalogOrder = 512;

// Seed-family specs (before products) whose groups have order <= max_order.
std::vector<std::string> default_family_specs(std::size_t max_order);
// Abelian factors used for direct products with non-abelian seeds.
std::vector<std::string> default_abelian_factors(std::size_t max_order);

// Builds, validates and analyzes every group. `families` overrides the seed
// list (products with abelian factors are still added). Throws OrderCapExceeded
// when max_order exceeds `cap`.
Catalog generate_catalog(std::size_t max_order, const std::vector<std::string>& families = {},
                         std::size_t cap = kDefaultOrderCap);

// Analysis of a single group as stored in a catalog entry.
CatalogEntry analyze_entry(const GroupSpec& spec);

enum class PairVerdict { BothNilpotent, NilpotencyTransferred, Type3Exception, NeitherNilpotent, Violation };
std::string to_string(PairVerdict v);

struct GraphPair {
  std::string g, h;  // entry names; g is the nilpotent side when there is one
  std::size_t g_index = 0, h_index = 0;
  std::vector<std::size_t> parts;
  bool same_order = false;
  PairVerdict verdict = PairVerdict::Violation;
  std::string note;
};

struct PairReport {
  std::vector<GraphPair> pairs;
};

PairReport find_graph_pairs(const Catalog& catalog);

struct TheoremCheck {
  std::string id;
  std::size_t checked = 0;
  std::vector<std::string> violations;
  std::string note;
};

struct TheoremReport {
  std::vector<TheoremCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.violations.empty()) return false;
    return true;
  }
};

TheoremReport verify_theorems(const Catalog& catalog, const PairReport& pairs);

}  // namespace acg
