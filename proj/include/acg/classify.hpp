#pragma once

// Schmidt's classification of finite non-abelian solvable AC-groups into five
// types, with witnesses and the centralizer count each type predicts, plus the
// structural facts about AC p-groups and nilpotent AC-groups.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acg/group.hpp"
#include "acg/noncomm_graph.hpp"

namespace acg {

bool is_solvable(const FiniteGroup& g);

// Preimages in G of a Frobenius kernel and complement of G/Z(G).
struct FrobeniusData {
  Subgroup kernel;
  Subgroup complement;
  std::size_t kernel_index_in_g = 0;
};

// Searches G/Z(G) for a normal, proper, nontrivial Hall subgroup N whose
// non-identity elements have their centralizers inside N. Throws AbelianGroup.
std::optional<FrobeniusData> detect_frobenius_quotient(const FiniteGroup& g);

struct Type1Witness {
  Subgroup normal_abelian;  // N, abelian and normal of prime index
  std::uint64_t index = 0;
};

struct Type4Witness {
  Subgroup v;  // preimage of the Klein four-group of G/Z(G) = Sym(4)
};

struct Type5Witness {
  std::uint64_t p = 0;
  Subgroup sylow;         // P, the non-abelian Sylow subgroup
  Subgroup abelian_part;  // A, the p'-Hall subgroup
};

struct ACClassification {
  std::string group;
  std::set<int> types;
  std::optional<Type1Witness> type1;
  std::optional<FrobeniusData> type2;
  std::optional<FrobeniusData> type3;
  std::optional<Type4Witness> type4;
  std::optional<Type5Witness> type5;
  std::map<int, std::int64_t> predicted_counts;
  std::int64_t measured_count = 0;
};

// Every applicable type, each tested independently. Type 2 requires both F and
// K abelian. Throws AbelianGroup, NotACGroup, NotSolvable, and TheoremViolation
// if a detected type predicts a count different from the measured one.
ACClassification classify(const FiniteGroup& g);
ACClassification classify(const FiniteGroup& g, const CentralizerPartition& partition);

struct NilpotentACProfile {
  std::uint64_t p = 0;
  Subgroup sylow;
  Subgroup abelian_part;
  unsigned n = 0;  // [G:Z(G)] = p^n
  unsigned r = 0;  // |Z(P)| = p^r
  std::size_t a = 0;
};

// Throws AbelianGroup, NotNilpotent, NotACGroup, MultipleNonAbelianSylows, and
// TheoremViolation if some C_G(x) differs from C_P(x) x A.
NilpotentACProfile nilpotent_ac_profile(const FiniteGroup& g);

struct ClauseResult {
  int clause = 0;
  std::size_t checks = 0;  // 0 means the clause was vacuous for this group
  std::vector<std::string> violations;
};

struct PGroupLemmaReport {
  std::string group;
  std::uint64_t p = 0;
  unsigned n = 0;      // [P:Z(P)] = p^n
  std::size_t c = 0;   // nilpotency class
  std::vector<ClauseResult> clauses;  // clauses 1..5 in order
  bool ok() const {
    for (const auto& c : clauses)
      if (!c.violations.empty()) return false;
    return true;
  }
};

// Throws NotPGroup, AbelianGroup, NotACGroup.
PGroupLemmaReport verify_pgroup_lemma(const FiniteGroup& p_group);

}  // namespace acg
