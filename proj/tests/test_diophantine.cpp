#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "acg/diophantine.hpp"
#include "acg/number.hpp"
#include "test_support.hpp"

using namespace acg;
using Big = boost::multiprecision::cpp_int;

namespace {

Big P(std::int64_t b, std::int64_t e) { return boost::multiprecision::pow(Big(b), static_cast<unsigned>(e)); }

// The family-free part of the type-3 system, written out directly from the equations.
bool type3_base_holds(std::int64_t p, std::int64_t q, std::int64_t n, std::int64_t r, std::int64_t a, std::int64_t f,
                      std::int64_t u, std::int64_t b, std::int64_t c, std::int64_t m) {
  const Big W = P(q, u) * b, Z = P(p, r) * a;
  return W * (P(q, f) * c - 1) == Z * (P(p, n) - 1) &&                                  //
         W * c * (P(q, f) - 1) == P(p, m + r) * a * (P(p, n - m) - 1) &&                //
         P(q, u) * (Big(b) * c - b) == Z * (P(p, m) - 1) &&                             //
         P(p, m) * (P(p, n - m) - 1) * (c - 1) == (P(p, m) - 1) * c * (P(q, f) - 1) &&  //
         (P(q, f) - 1) % c == 0;
}

bool type3_family_holds(std::int64_t p, std::int64_t q, std::int64_t n, std::int64_t r, std::int64_t a,
                        std::int64_t f, std::int64_t u, std::int64_t b, std::int64_t c, std::int64_t m, std::int64_t t,
                        std::int64_t s) {
  const Big W = P(q, u) * b, Z = P(p, r) * a;
  return W * (P(q, t) - 1) == Z * (P(p, s) - 1) &&                          //
         P(q, u) * (Big(b) * c - b * P(q, t)) == Z * (P(p, m) - P(p, s)) &&  //
         P(q, u + t) * b * (P(q, f - t) * c - 1) == P(p, r + s) * a * (P(p, n - s) - 1);
}

bool type1_holds(const Type1Tuple& t) {
  const Big Z = P(t.p, t.r) * t.a;
  const Big N = Big(t.nIndex) * t.zH;  // |N|
  const Big M = Z * P(t.p, t.t);       // |M|
  const Big CH = Big(t.q) * t.zH;      // |C_H(h)|
  const Big CG = Z * P(t.p, t.u2);     // |C_G(g)|
  const Big H = N * t.q;                    // [H:N] = q
  const Big Gord = P(t.p, t.n + t.r) * t.a;  // [G:Z(G)] = p^n
  return N - t.zH == M - Z && H - N == Gord - M && N - CH == M - CG && CH - t.zH == CG - Z;
}

bool all_satisfied(const std::vector<ConstraintResult>& cs, const std::set<std::string>& ids) {
  for (const auto& c : cs)
    if (ids.count(c.id) && !c.satisfied) return false;
  return true;
}

std::set<std::string> failing(const Type3Report& r) {
  std::set<std::string> out;
  for (const auto& c : r.constraints)
    if (!c.satisfied) out.insert(c.id);
  return out;
}

std::string ndjson(SearchKind kind, const SearchBounds& b) {
  std::ostringstream out;
  run_search(kind, b, {}, out);
  return out.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("acg_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("type-3 system") {
  TEST_CASE("field invariants") {
    Type3Tuple t{2, 3, 4, 0, 1, 1, 1, 1, 2, 2, {{1, 1}}};
    CHECK_NOTHROW(check_type3(t));
    auto bad = t;
    bad.q = 2;
    CHECK(error_code_of([&] { check_type3(bad); }) == ErrorCode::InvalidTuple);
    bad = t;
    bad.p = 4;
    CHECK(error_code_of([&] { check_type3(bad); }) == ErrorCode::InvalidTuple);
    bad = t;
    bad.a = 2;  // gcd(a, p) != 1
    CHECK(error_code_of([&] { check_type3(bad); }) == ErrorCode::InvalidTuple);
    bad = t;
    bad.c = 3;  // gcd(c, q) != 1
    CHECK(error_code_of([&] { check_type3(bad); }) == ErrorCode::InvalidTuple);
    bad = t;
    bad.m = 4;
    CHECK(error_code_of([&] { check_type3(bad); }) == ErrorCode::InvalidTuple);
    bad = t;
    bad.families = {{1, 2}};  // s = m
    CHECK(error_code_of([&] { check_type3(bad); }) == ErrorCode::InvalidTuple);
    bad = t;
    bad.families = {{1, 1}, {1, 3}};  // repeated t
    CHECK(error_code_of([&] { check_type3(bad); }) == ErrorCode::InvalidTuple);
    bad = t;
    bad.families = {{2, 1}};  // t > f
    CHECK(error_code_of([&] { check_type3(bad); }) == ErrorCode::InvalidTuple);
  }

  TEST_CASE("direct arithmetic on a small infeasible tuple") {
    // eqC: 2 * (2 - 1) * (2 - 1) = 2 versus (2 - 1) * 2 * (3 - 1) = 4.
    const Type3Report r = check_type3({2, 3, 2, 0, 1, 1, 0, 1, 2, 1, {}});
    CHECK_FALSE(r.feasible);
    auto it = std::find_if(r.constraints.begin(), r.constraints.end(), [](auto& c) { return c.id == "eqC"; });
    REQUIRE(it != r.constraints.end());
    CHECK_FALSE(it->satisfied);
    CHECK(it->lhs == "2");
    CHECK(it->rhs == "4");
    CHECK(error_code_of([] { verify_claims_type3({2, 3, 2, 0, 1, 1, 0, 1, 2, 1, {}}); }) ==
          ErrorCode::NotFeasible);
  }

  TEST_CASE("a tuple solved from the centralizer equation fails exactly the family equations") {
    // p=2, r=0, a=1, m=2, c=2: W (c - 1) = p^m - 1 gives W = 3 = q^u b with q=3, u=1, b=1.
    // With n=4, f=1 this also satisfies eq1, eq2 and eqC.
    Type3Tuple t{2, 3, 4, 0, 1, 1, 1, 1, 2, 2, {}};
    CHECK(type3_base_holds(t.p, t.q, t.n, t.r, t.a, t.f, t.u, t.b, t.c, t.m));
    CHECK(failing(check_type3(t)) == std::set<std::string>{"families_nonempty"});
    for (std::int64_t s : {1, 3}) {
      t.families = {{1, s}};
      const auto f = failing(check_type3(t));
      CHECK_FALSE(f.empty());
      for (const auto& id : f) CHECK((id == "eq3[0]" || id == "eq5[0]" || id == "eq6[0]"));
      CHECK(f.count("eq3[0]"));
    }
    // The claims the theorem derives fail for this n = 4 near-solution.
    const auto claims = evaluate_claims_type3(t);
    auto holds = [&](const std::string& id) {
      for (const auto& c : claims)
        if (c.id == id) return c.holds;
      FAIL("missing claim " << id);
      return false;
    };
    CHECK_FALSE(holds("n_gt_4"));
    CHECK_FALSE(holds("claim4a.n_gt_2m"));
    CHECK(holds("claim1.p_ne_q"));
  }

  TEST_CASE("check_type3 agrees with the written-out equations on random tuples") {
    std::mt19937 rng(0xAC6);
    const std::int64_t primes[] = {2, 3, 5, 7};
    int checked = 0;
    for (int trial = 0; trial < 20000; ++trial) {
      Type3Tuple t;
      t.p = primes[rng() % 4];
      do t.q = primes[rng() % 4];
      while (t.q == t.p);
      t.n = 2 + rng() % 7;
      t.m = 1 + rng() % (t.n - 1);
      t.f = 1 + rng() % 4;
      t.r = rng() % 4;
      t.u = rng() % 4;
      do t.a = 1 + rng() % 50;
      while (t.a % t.p == 0);
      do t.b = 1 + rng() % 50;
      while (t.b % t.q == 0);
      do t.c = 2 + rng() % 49;
      while (t.c % t.q == 0);
      const std::int64_t tt = 1 + rng() % t.f;
      std::int64_t s = 1 + rng() % (t.n - 1);
      if (s == t.m) continue;
      t.families = {{tt, s}};
      const Type3Report r = check_type3(t);
      const bool base = type3_base_holds(t.p, t.q, t.n, t.r, t.a, t.f, t.u, t.b, t.c, t.m);
      CHECK(all_satisfied(r.constraints, {"eq1", "eq2", "eq4", "eqC", "c_divides_qf_minus_1"}) == base);
      CHECK(all_satisfied(r.constraints, {"eq3[0]", "eq5[0]", "eq6[0]"}) ==
            type3_family_holds(t.p, t.q, t.n, t.r, t.a, t.f, t.u, t.b, t.c, t.m, tt, s));
      ++checked;
    }
    CHECK(checked > 10000);
  }

  TEST_CASE("enumeration matches a brute-force scan") {
    SearchBounds b;
    b.p_max = 7;
    b.q_max = 7;
    b.n_max = 7;
    b.f_max = 3;
    b.a_max = 12;
    b.b_max = 12;
    b.c_max = 20;
    b.r_max = 2;
    b.u_max = 2;
    b.v_max = 2;
    // Every base tuple satisfying the family-free equations, scanned field by field.
    std::size_t base_solutions = 0, expected = 0;
    for (std::int64_t p : {2, 3, 5, 7})
      for (std::int64_t q : {2, 3, 5, 7}) {
        if (p == q) continue;
        for (std::int64_t n = 1; n <= b.n_max; ++n)
          for (std::int64_t f = 1; f <= b.f_max; ++f)
            for (std::int64_t m = 1; m < n; ++m)
              for (std::int64_t c = 2; c <= b.c_max; ++c) {
                if (c % q == 0) continue;
                if (P(p, m) * (P(p, n - m) - 1) * (c - 1) != (P(p, m) - 1) * c * (P(q, f) - 1)) continue;
                for (std::int64_t r = 0; r <= b.r_max; ++r)
                  for (std::int64_t a = 1; a <= b.a_max; ++a) {
                    if (a % p == 0) continue;
                    for (std::int64_t u = 0; u <= b.u_max; ++u)
                      for (std::int64_t bb = 1; bb <= b.b_max; ++bb) {
                        if (bb % q == 0 || !type3_base_holds(p, q, n, r, a, f, u, bb, c, m)) continue;
                        ++base_solutions;
                        std::vector<std::pair<std::int64_t, std::int64_t>> fam;
                        for (std::int64_t t = 1; t <= f; ++t)
                          for (std::int64_t s = 1; s < n; ++s)
                            if (s != m && type3_family_holds(p, q, n, r, a, f, u, bb, c, m, t, s)) fam.emplace_back(t, s);
                        // Families of size 1 or 2 with distinct t's and s's.
                        expected += fam.size();
                        for (std::size_t i = 0; i < fam.size(); ++i)
                          for (std::size_t j = i + 1; j < fam.size(); ++j)
                            expected += fam[i].first != fam[j].first && fam[i].second != fam[j].second;
                      }
                  }
              }
      }
    const auto found = enumerate_type3(b);
    CHECK(found.size() == expected);
    for (const auto& t : found) {
      CHECK(check_type3(t).feasible);
      CHECK(verify_claims_type3(t).claims_hold());
    }
    MESSAGE("type-3 brute force: " << base_solutions << " family-free solutions, " << expected << " feasible tuples");
  }

  TEST_CASE("empty feasible sets the theorem predicts") {
    SearchBounds small;
    small.n_max = 4;
    CHECK(enumerate_type3(small).empty());
    SearchBounds same;
    same.p_max = 2;
    same.q_max = 2;
    CHECK(enumerate_type3(same).empty());
  }

  TEST_CASE("SL(2,3) as the type-3 partner has no nilpotent partner with n <= 4") {
    // q = 2, f = 2, u = 1, b = 1, c = 3.
    std::size_t tried = 0;
    for (std::int64_t p : {3, 5, 7})
      for (std::int64_t n = 2; n <= 4; ++n)
        for (std::int64_t m = 1; m < n; ++m)
          for (std::int64_t r = 0; r <= 3; ++r)
            for (std::int64_t a = 1; a <= 50; ++a) {
              if (a % p == 0) continue;
              std::vector<std::pair<std::int64_t, std::int64_t>> singles;
              for (std::int64_t t = 1; t <= 2; ++t)
                for (std::int64_t s = 1; s < n; ++s)
                  if (s != m) singles.emplace_back(t, s);
              std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> fams;
              for (const auto& x : singles) fams.push_back({x});
              for (const auto& x : singles)
                for (const auto& y : singles)
                  if (x.first < y.first && x.second != y.second) fams.push_back({x, y});
              for (const auto& fam : fams) {
                ++tried;
                CHECK_FALSE(check_type3({p, 2, n, r, a, 2, 1, 1, 3, m, fam}).feasible);
              }
            }
    CHECK(tried > 1000);
  }
}

TEST_SUITE("type-1 system") {
  TEST_CASE("invariants and the p != q case") {
    CHECK(error_code_of([] { check_type1({2, 3, 3, 0, 1, 0, 1, 1, 1, 1}); }) == ErrorCode::InvalidTuple);  // nIndex < 2
    CHECK(error_code_of([] { check_type1({2, 3, 3, 0, 1, 1, 2, 2, 1, 1}); }) == ErrorCode::InvalidTuple);  // u wrong
    CHECK(error_code_of([] { check_type1({2, 3, 3, 0, 2, 0, 2, 2, 1, 1}); }) == ErrorCode::InvalidTuple);  // gcd(a,p)
    CHECK(error_code_of([] { check_type1({2, 3, 3, 0, 1, 0, 2, 2, 3, 1}); }) == ErrorCode::InvalidTuple);  // t >= n
    // With p != q no tuple in a generous grid is feasible.
    std::size_t tried = 0;
    for (std::int64_t p : {2, 3, 5, 7})
      for (std::int64_t q : {2, 3, 5, 7}) {
        if (p == q) continue;
        for (std::int64_t n = 2; n <= 4; ++n)
          for (std::int64_t t = 1; t < n; ++t)
            for (std::int64_t u2 = 1; u2 < n; ++u2)
              for (std::int64_t zh = 1; zh <= 30; ++zh)
                for (std::int64_t N = 2; N <= 30; ++N) {
                  const Type1Tuple tup{p, q, n, 1, 1, std::int64_t(valuation(zh, q)), zh, N, t, u2};
                  ++tried;
                  CHECK_FALSE(check_type1(tup).feasible);
                  if (!check_type1(tup).feasible)
                    CHECK(error_code_of([&] { verify_claims_type1(tup); }) == ErrorCode::NotFeasible);
                }
      }
    CHECK(tried > 10000);
  }

  TEST_CASE("degenerate tuple: |N| = |C_H(h)| forces t = u2") {
    // nIndex = q makes |N| - |C_H(h)| = 0, so |M| = |C_G(g)|.
    for (std::int64_t t = 1; t < 4; ++t)
      for (std::int64_t u2 = 1; u2 < 4; ++u2) {
        const Type1Report r = check_type1({3, 3, 4, 1, 2, 0, 4, 3, t, u2});
        const auto& c = *std::find_if(r.constraints.begin(), r.constraints.end(),
                                      [](auto& x) { return x.id == "N_minus_CH"; });
        CHECK(c.satisfied == (t == u2));
      }
  }

  TEST_CASE("enumeration matches a brute-force scan, and every solution has equal centers") {
    SearchBounds b;
    b.p_max = 7;
    b.q_max = 7;
    b.n_max = 5;
    b.r_max = 2;
    b.a_max = 6;
    b.zh_max = 48;
    b.nindex_max = 20;
    std::set<std::vector<std::int64_t>> expected;
    for (std::int64_t p : {2, 3, 5, 7})
      for (std::int64_t q : {2, 3, 5, 7})
        for (std::int64_t n = 1; n <= b.n_max; ++n)
          for (std::int64_t r = 0; r <= b.r_max; ++r)
            for (std::int64_t a = 1; a <= b.a_max; ++a) {
              if (a % p == 0) continue;
              for (std::int64_t t = 1; t < n; ++t)
                for (std::int64_t u2 = 1; u2 < n; ++u2)
                  for (std::int64_t zh = 1; zh <= b.zh_max; ++zh)
                    for (std::int64_t N = 2; N <= b.nindex_max; ++N) {
                      const Type1Tuple tup{p, q, n, r, a, std::int64_t(valuation(zh, q)), zh, N, t, u2};
                      if (type1_holds(tup)) expected.insert({p, q, n, r, a, tup.u, zh, N, t, u2});
                    }
            }
    std::set<std::vector<std::int64_t>> found;
    for (const auto& t : enumerate_type1(b)) {
      found.insert({t.p, t.q, t.n, t.r, t.a, t.u, t.zH, t.nIndex, t.t, t.u2});
      const Type1Report rep = verify_claims_type1(t);
      CHECK(rep.feasible);
      CHECK(rep.claims_hold());
      CHECK(t.p == t.q);
      CHECK(t.zH == static_cast<std::int64_t>(P(t.p, t.r)) * t.a);
    }
    CHECK(found == expected);
    CHECK_FALSE(found.empty());
    // check_type1 agrees with the oracle on a random sample of rejected tuples.
    std::mt19937 rng(0xAC6);
    for (int i = 0; i < 5000; ++i) {
      const std::int64_t ps[] = {2, 3, 5, 7};
      const std::int64_t p = ps[rng() % 4], q = ps[rng() % 4], n = 2 + rng() % 4;
      std::int64_t a = 1 + rng() % 6;
      if (a % p == 0) a = 1;
      const std::int64_t zh = 1 + rng() % 48;
      const Type1Tuple tup{p, q, n, std::int64_t(rng() % 3), a, std::int64_t(valuation(zh, q)), zh,
                           std::int64_t(2 + rng() % 19), std::int64_t(1 + rng() % (n - 1)), std::int64_t(1 + rng() % (n - 1))};
      CHECK(check_type1(tup).feasible == type1_holds(tup));
    }
  }
}

TEST_SUITE("search plumbing") {
  TEST_CASE("bounds json") {
    SearchBounds b;
    b.p_max = 5;
    b.v_max = 2;
    CHECK(bounds_from_json(bounds_to_json(b)) == b);
    CHECK(bounds_from_json(nlohmann::json::parse(R"({"n_max": 4})")).n_max == 4);
    CHECK(bounds_from_json(nlohmann::json::parse("{}")) == SearchBounds{});
    CHECK(error_code_of([] { bounds_from_json(nlohmann::json::parse(R"({"z_max": 4})")); }) == ErrorCode::ParseError);
    CHECK(error_code_of([] { bounds_from_json(nlohmann::json::parse(R"({"n_max": -1})")); }) == ErrorCode::ParseError);
    CHECK(error_code_of([] { bounds_from_json(nlohmann::json::parse(R"({"n_max": "4"})")); }) == ErrorCode::ParseError);
    CHECK(error_code_of([] { bounds_from_json(nlohmann::json::parse("[1]")); }) == ErrorCode::ParseError);
  }

  TEST_CASE("tuple json round trip") {
    const Type3Tuple t{2, 3, 4, 0, 1, 1, 1, 1, 2, 2, {{1, 1}, {2, 3}}};
    CHECK(type3_from_json(to_json(t)) == t);
    const Type1Tuple u{3, 3, 4, 1, 2, 0, 4, 3, 1, 1};
    CHECK(type1_from_json(to_json(u)) == u);
    CHECK(error_code_of([] { type1_from_json(nlohmann::json::parse(R"({"p": 2})")); }) == ErrorCode::ParseError);
  }

  TEST_CASE("budget") {
    const SearchBounds d;
    CHECK(type3_search_size(d) == doctest::Approx(4.0 * 4 * 8 * 4 * 7 * 50 * 4 * 50));
    CHECK(type1_search_size(d) == doctest::Approx(4.0 * 4 * 8 * 4 * 50 * 7 * 7));
    SearchBounds huge;
    huge.n_max = 200;
    huge.a_max = 5000;
    huge.c_max = 5000;
    CHECK(error_code_of([&] { enumerate_type3(huge); }) == ErrorCode::BoundsTooLarge);
    CHECK(error_code_of([&] { enumerate_type1(huge, 1e3); }) == ErrorCode::BoundsTooLarge);
    std::ostringstream sink;
    CHECK(error_code_of([&] { run_search(SearchKind::Type3, huge, {}, sink); }) == ErrorCode::BoundsTooLarge);
  }

  TEST_CASE("overflowing bounds fall back to exact arithmetic") {
    SearchBounds b;
    b.p_max = 7;
    b.q_max = 7;
    b.n_max = 60;  // 7^60 does not fit in 128 bits
    b.f_max = 2;
    b.a_max = 2;
    b.c_max = 4;
    b.r_max = 0;
    CHECK_NOTHROW(enumerate_type3(b));
    SearchBounds b1 = b;
    b1.a_max = 3;
    const auto t1 = enumerate_type1(b1);
    for (const auto& t : t1) CHECK(check_type1(t).feasible);
  }

  TEST_CASE("streamed search equals enumeration") {
    SearchBounds b;
    b.n_max = 6;
    b.a_max = 20;
    b.zh_max = 100;
    std::string expect;
    for (const auto& t : enumerate_type1(b)) expect += to_json(t).dump() + "\n";
    CHECK(ndjson(SearchKind::Type1, b) == expect);
    CHECK_FALSE(expect.empty());
    expect.clear();
    for (const auto& t : enumerate_type3(b)) expect += to_json(t).dump() + "\n";
    CHECK(ndjson(SearchKind::Type3, b) == expect);

    std::ostringstream serial, parallel;
    SearchOptions one;
    one.jobs = 1;
    SearchOptions many;
    many.jobs = 4;
    const SearchCursor a = run_search(SearchKind::Type1, b, one, serial);
    const SearchCursor c = run_search(SearchKind::Type1, b, many, parallel);
    CHECK(serial.str() == parallel.str());
    CHECK(a.scanned == c.scanned);
    CHECK(a.feasible == c.feasible);
    CHECK(a.output_bytes == serial.str().size());
    CHECK(a.complete());
  }

  TEST_CASE("interrupted searches resume to the same output") {
    TempDir dir;
    const std::string cursor = (dir.path / "c.json").string();
    SearchBounds b;
    b.n_max = 6;
    b.a_max = 20;
    b.zh_max = 100;
    for (SearchKind kind : {SearchKind::Type1, SearchKind::Type3}) {
      std::ostringstream whole;
      const SearchCursor full = run_search(kind, b, {}, whole);

      std::filesystem::remove(cursor);
      std::string pieces;
      SearchOptions opts;
      opts.max_shards = 7;
      opts.cursor_path = cursor;
      std::optional<SearchCursor> cur;
      int runs = 0;
      do {
        std::ostringstream part;
        run_search(kind, b, opts, part, cur);
        pieces += part.str();
        cur = read_cursor_file(cursor);
        ++runs;
      } while (!cur->complete());
      CHECK(runs > 1);
      CHECK(pieces == whole.str());
      CHECK(cur->scanned == full.scanned);
      CHECK(cur->feasible == full.feasible);
      CHECK(cur->output_bytes == whole.str().size());
    }
    // A cursor for different bounds or kind is refused.
    SearchBounds other = b;
    other.a_max = 21;
    std::ostringstream sink;
    const SearchCursor saved = read_cursor_file(cursor);
    CHECK(error_code_of([&] { run_search(SearchKind::Type3, other, {}, sink, saved); }) == ErrorCode::InvalidParameter);
    CHECK(error_code_of([&] { run_search(SearchKind::Type1, b, {}, sink, saved); }) == ErrorCode::InvalidParameter);
    // Cursor round trip and malformed files.
    CHECK(cursor_to_json(cursor_from_json(cursor_to_json(saved))) == cursor_to_json(saved));
    {
      std::ofstream bad(cursor);
      bad << "{\"kind\": \"type9\"}";
    }
    CHECK(error_code_of([&] { read_cursor_file(cursor); }) == ErrorCode::ParseError);
    CHECK(error_code_of([&] { read_cursor_file((dir.path / "missing").string()); }) == ErrorCode::IoError);
  }
}
