#pragma once

// Order equations forced by an isomorphism between the non-commuting graphs of
// a nilpotent AC-group G = P x A and a non-nilpotent AC-group H, as exact
// integer constraint systems with exhaustive, resumable enumeration.
//
// Notation for G: [G:Z(G)] = p^n, |Z(P)| = p^r, |A| = a, so |Z(G)| = p^r a.
//
// Type-3 partner H: |Z(H)| = q^u b, [F:Z(H)] = q^f, [K:Z(H)] = c, and the
// centralizer M of the image of a complement element has [M:Z(G)] = p^m. Each
// family (t_i, s_i) pairs a centralizer of order q^t_i |Z(H)| in H with one of
// order p^s_i |Z(G)| in G.
//
// Type-1 partner H: |Z(H)| = zH, [N:Z(H)] = nIndex, [H:N] = q, and the images
// satisfy [M:Z(G)] = p^t, [C_G(g):Z(G)] = p^u2.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace acg {

struct Type3Tuple {
  std::int64_t p = 0, q = 0, n = 0, r = 0, a = 0, f = 0, u = 0, b = 0, c = 0, m = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> families;  // (t_i, s_i)
  bool operator==(const Type3Tuple&) const = default;
};

struct Type1Tuple {
  std::int64_t p = 0, q = 0, n = 0, r = 0, a = 0, u = 0, zH = 0, nIndex = 0, t = 0, u2 = 0;
  bool operator==(const Type1Tuple&) const = default;
};

struct ConstraintResult {
  std::string id;
  bool satisfied = false;
  std::string lhs, rhs;  // exact decimal values
};

struct ClaimCheck {
  std::string id;
  bool holds = false;
};

template <class Tuple>
struct FeasibilityReport {
  Tuple tuple;
  std::vector<ConstraintResult> constraints;
  bool feasible = false;
  std::vector<ClaimCheck> claims;  // filled by the claim verifiers
  bool claims_hold() const {
    for (const auto& c : claims)
      if (!c.holds) return false;
    return true;
  }
};

using Type3Report = FeasibilityReport<Type3Tuple>;
using Type1Report = FeasibilityReport<Type1Tuple>;

// Evaluates eq1, eq2, eq4, eqC, the divisibility c | q^f - 1, v >= 1 and, per
// family, eq3, eq5, eq6. Throws InvalidTuple when the field invariants fail (p, q
// distinct primes; coprimality of a, b, c; 1 <= m < n; 1 <= t_i <= f;
// 1 <= s_i < n; distinct t_i, distinct s_i, s_i != m).
Type3Report check_type3(const Type3Tuple& t);

// Claims 1-5 and their consequences for a feasible tuple. Throws NotFeasible.
Type3Report verify_claims_type3(const Type3Tuple& t);
// The same claim list without the feasibility precondition.
std::vector<ClaimCheck> evaluate_claims_type3(const Type3Tuple& t);

// The four size equalities |N|-|Z(H)| = |M|-|Z(G)|, |H|-|N| = |G|-|M|,
// |N|-|C_H(h)| = |M|-|C_G(g)|, |C_H(h)|-|Z(H)| = |C_G(g)|-|Z(G)|.
// Throws InvalidTuple (p, q prime; gcd(a,p) = 1; nIndex >= 2; 1 <= t, u2 < n;
// u equal to the q-adic valuation of zH).
Type1Report check_type1(const Type1Tuple& t);
// Asserts p = q, u2 = 1, zH = p^r a and the divisibility claims. Throws NotFeasible.
Type1Report verify_claims_type1(const Type1Tuple& t);

struct SearchBounds {
  std::int64_t p_max = 7, q_max = 7, n_max = 8, f_max = 4;
  std::int64_t a_max = 50, b_max = 50, c_max = 50;
  std::int64_t r_max = 3, u_max = 3, v_max = 3;
  std::int64_t zh_max = 200, nindex_max = 64;  // type-1 only

  bool operator==(const SearchBounds&) const = default;
};

// Missing keys keep their defaults; unknown keys or negative values throw ParseError.
SearchBounds bounds_from_json(const nlohmann::json& j);
SearchBounds read_bounds_file(const std::string& path);
nlohmann::json bounds_to_json(const SearchBounds& b);

inline constexpr double kDefaultSearchBudget = 1e10;

// Raw candidate counts used for the budget check.
double type3_search_size(const SearchBounds& b);
double type1_search_size(const SearchBounds& b);

// Exhaustive lists of feasible tuples in enumeration order. Throw
// BoundsTooLarge when the raw count exceeds `budget`.
std::vector<Type3Tuple> enumerate_type3(const SearchBounds& b, double budget = kDefaultSearchBudget);
std::vector<Type1Tuple> enumerate_type1(const SearchBounds& b, double budget = kDefaultSearchBudget);

nlohmann::json to_json(const Type3Tuple& t);
nlohmann::json to_json(const Type1Tuple& t);
Type3Tuple type3_from_json(const nlohmann::json& j);
Type1Tuple type1_from_json(const nlohmann::json& j);

enum class SearchKind { Type3, Type1 };

// Progress of a sharded search; shards are completed strictly in order.
struct SearchCursor {
  SearchKind kind = SearchKind::Type3;
  SearchBounds bounds;
  std::size_t next_shard = 0;
  std::size_t total_shards = 0;
  std::uint64_t feasible = 0;
  std::uint64_t scanned = 0;
  std::uint64_t output_bytes = 0;  // NDJSON bytes emitted so far
  bool complete() const { return next_shard >= total_shards; }
};

nlohmann::json cursor_to_json(const SearchCursor& c);
SearchCursor cursor_from_json(const nlohmann::json& j);
SearchCursor read_cursor_file(const std::string& path);
void write_cursor_file(const std::string& path, const SearchCursor& c);

struct SearchOptions {
  int jobs = 0;                            // 0 = OpenMP default
  std::size_t max_shards = SIZE_MAX;       // stop early after this many shards
  double budget = kDefaultSearchBudget;
  bool override_budget = false;
  std::string cursor_path;                 // empty = no checkpointing
};

// Runs (or continues from `cursor`) a sharded search, writing one NDJSON line
// per feasible tuple to `out` and checkpointing after every completed shard.
SearchCursor run_search(SearchKind kind, const SearchBounds& bounds, const SearchOptions& opts, std::ostream& out,
                        std::optional<SearchCursor> cursor = std::nullopt);

}  // namespace acg
