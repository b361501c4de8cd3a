#include "acg/diophantine.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "acg/error.hpp"
#include "acg/number.hpp"

namespace acg {

namespace {

using Big = boost::multiprecision::cpp_int;
using i128 = __int128;

Big pw(std::int64_t base, std::int64_t e) { return boost::multiprecision::pow(Big(base), static_cast<unsigned>(e)); }
std::string str(const Big& v) { return v.str(); }

// ---- checked fixed-width arithmetic for the enumeration fast path ----------

struct Overflow {};

i128 mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
i128 sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
i128 ipow(i128 b, std::int64_t e) {
  i128 r = 1;
  for (std::int64_t i = 0; i < e; ++i) r = mul(r, b);
  return r;
}

Big mul(const Big& a, const Big& b) { return a * b; }
Big add(const Big& a, const Big& b) { return a + b; }
Big sub(const Big& a, const Big& b) { return a - b; }
Big ipow(const Big& b, std::int64_t e) { return boost::multiprecision::pow(b, static_cast<unsigned>(e)); }

void invalid(const std::string& why) { throw Error(ErrorCode::InvalidTuple, why); }

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

void validate(const Type3Tuple& t) {
  if (!is_prime(static_cast<std::uint64_t>(std::max<std::int64_t>(t.p, 0))) ||
      !is_prime(static_cast<std::uint64_t>(std::max<std::int64_t>(t.q, 0))))
    invalid("p and q must be primes");
  if (t.p == t.q) invalid("p and q must be distinct");
  if (t.n < 1 || t.r < 0 || t.a < 1 || t.f < 1 || t.u < 0 || t.b < 1 || t.c < 2) invalid("field out of range");
  if (gcd64(t.a, t.p) != 1) invalid("gcd(a, p) != 1");
  if (gcd64(t.b, t.q) != 1) invalid("gcd(b, q) != 1");
  if (gcd64(t.c, t.q) != 1) invalid("gcd(c, q) != 1");
  if (t.m < 1 || t.m >= t.n) invalid("m must satisfy 1 <= m < n");
  std::set<std::int64_t> ts, ss;
  for (const auto& [ti, si] : t.families) {
    if (ti < 1 || ti > t.f) invalid("family t must satisfy 1 <= t <= f");
    if (si < 1 || si >= t.n) invalid("family s must satisfy 1 <= s < n");
    if (si == t.m) invalid("family s must differ from m");
    if (!ts.insert(ti).second || !ss.insert(si).second) invalid("family t's and s's must be distinct");
  }
}

void validate(const Type1Tuple& t) {
  if (!is_prime(static_cast<std::uint64_t>(std::max<std::int64_t>(t.p, 0))) ||
      !is_prime(static_cast<std::uint64_t>(std::max<std::int64_t>(t.q, 0))))
    invalid("p and q must be primes");
  if (t.n < 1 || t.r < 0 || t.a < 1 || t.zH < 1) invalid("field out of range");
  if (gcd64(t.a, t.p) != 1) invalid("gcd(a, p) != 1");
  if (t.nIndex < 2) invalid("nIndex must be at least 2");
  if (t.t < 1 || t.t >= t.n || t.u2 < 1 || t.u2 >= t.n) invalid("t and u2 must lie in [1, n)");
  if (t.u != static_cast<std::int64_t>(valuation(static_cast<std::uint64_t>(t.zH), static_cast<std::uint64_t>(t.q))))
    invalid("u must be the q-adic valuation of zH");
}

ConstraintResult equation(std::string id, const Big& lhs, const Big& rhs) {
  return {std::move(id), lhs == rhs, str(lhs), str(rhs)};
}

std::string suffix(std::size_t i) { return "[" + std::to_string(i) + "]"; }

}  // namespace

Type3Report check_type3(const Type3Tuple& t) {
  validate(t);
  Type3Report rep;
  rep.tuple = t;
  const Big W = pw(t.q, t.u) * t.b;  // |Z(H)|
  const Big Z = pw(t.p, t.r) * t.a;  // |Z(G)|
  const Big qf = pw(t.q, t.f), pm = pw(t.p, t.m), pn = pw(t.p, t.n), c = t.c;
  auto& cs = rep.constraints;
  cs.push_back(equation("eq1", W * (qf * c - 1), Z * (pn - 1)));
  cs.push_back(equation("eq2", W * c * (qf - 1), pm * Z * (pw(t.p, t.n - t.m) - 1)));
  cs.push_back(equation("eq4", W * (c - 1), Z * (pm - 1)));
  cs.push_back(equation("eqC", pm * (pw(t.p, t.n - t.m) - 1) * (c - 1), (pm - 1) * c * (qf - 1)));
  cs.push_back({"c_divides_qf_minus_1", (qf - 1) % c == 0, str(qf - 1), str(c)});
  // F is non-abelian, so H has at least one family of kernel centralizers.
  cs.push_back({"families_nonempty", !t.families.empty(), std::to_string(t.families.size()), "1"});
  for (std::size_t i = 0; i < t.families.size(); ++i) {
    const auto [ti, si] = t.families[i];
    const Big qt = pw(t.q, ti), ps = pw(t.p, si);
    cs.push_back(equation("eq3" + suffix(i), W * (qt - 1), Z * (ps - 1)));
    cs.push_back(equation("eq5" + suffix(i), W * (c - qt), Z * (pm - ps)));
    cs.push_back(equation("eq6" + suffix(i), qt * W * (pw(t.q, t.f - ti) * c - 1), ps * Z * (pw(t.p, t.n - si) - 1)));
  }
  rep.feasible = std::all_of(cs.begin(), cs.end(), [](const ConstraintResult& r) { return r.satisfied; });
  return rep;
}

std::vector<ClaimCheck> evaluate_claims_type3(const Type3Tuple& t) {
  std::vector<ClaimCheck> out;
  auto claim = [&](std::string id, bool holds) { out.push_back({std::move(id), holds}); };
  const Big qf = pw(t.q, t.f), pm = pw(t.p, t.m), c = t.c, b = t.b;
  claim("claim1.p_ne_q", t.p != t.q);
  bool c2 = true;
  for (std::int64_t d = 1; d <= t.r; ++d) {
    const Big pd = pw(t.p, d);
    c2 = c2 && (((b * c) % pd == 0) == (b % pd == 0));
  }
  claim("claim2.p_power_divides_bc_iff_b", c2);
  claim("claim3.p_r1_not_dividing_bc", (b * c) % pw(t.p, t.r + 1) != 0);
  claim("claim3.q_u1_not_dividing_a", Big(t.a) % pw(t.q, t.u + 1) != 0);
  claim("claim3.gcd_p_c", std::gcd(t.p, t.c) == 1);
  claim("eqC", pm * (pw(t.p, t.n - t.m) - 1) * (c - 1) == (pm - 1) * c * (qf - 1));
  claim("claim4a.n_gt_2m", t.n > 2 * t.m);
  claim("claim4b.c_lt_pm", c < pm);
  claim("claim4b.pm_lt_qf", pm < qf);
  claim("claim4b.qf_lt_p_n_minus_m", qf < pw(t.p, t.n - t.m));
  claim("claim4c.center_of_h_larger", pw(t.q, t.u) * b > pw(t.p, t.r) * t.a);
  claim("n_gt_4", t.n > 4);
  claim("m_ne_n_minus_1", t.m != t.n - 1);
  claim("pm_divides_qf_minus_1", (qf - 1) % pm == 0);
  claim("c_ne_qf_minus_1", c != qf - 1);
  for (std::size_t i = 0; i < t.families.size(); ++i) {
    const auto [ti, si] = t.families[i];
    claim("claim5.n_gt_2s" + suffix(i), t.n > 2 * si);
    claim("claim5.ps_gt_qt" + suffix(i), pw(t.p, si) > pw(t.q, ti));
    claim("s_ne_n_minus_1" + suffix(i), si != t.n - 1);
    claim("ps_divides_qft_c_minus_1" + suffix(i), (pw(t.q, t.f - ti) * c - 1) % pw(t.p, si) == 0);
  }
  return out;
}

Type3Report verify_claims_type3(const Type3Tuple& t) {
  Type3Report rep = check_type3(t);
  if (!rep.feasible) throw Error(ErrorCode::NotFeasible, "tuple does not satisfy the type-3 equations");
  rep.claims = evaluate_claims_type3(t);
  return rep;
}

Type1Report check_type1(const Type1Tuple& t) {
  validate(t);
  Type1Report rep;
  rep.tuple = t;
  const Big zh = t.zH, N = t.nIndex, q = t.q;
  const Big Z = pw(t.p, t.r) * t.a;
  auto& cs = rep.constraints;
  cs.push_back(equation("N_minus_ZH", zh * (N - 1), Z * (pw(t.p, t.t) - 1)));
  cs.push_back(equation("H_minus_N", zh * N * (q - 1), pw(t.p, t.r + t.t) * t.a * (pw(t.p, t.n - t.t) - 1)));
  cs.push_back(equation("N_minus_CH", zh * (N - q), Z * (pw(t.p, t.t) - pw(t.p, t.u2))));
  cs.push_back(equation("CH_minus_ZH", zh * (q - 1), Z * (pw(t.p, t.u2) - 1)));
  rep.feasible = std::all_of(cs.begin(), cs.end(), [](const ConstraintResult& r) { return r.satisfied; });
  return rep;
}

Type1Report verify_claims_type1(const Type1Tuple& t) {
  Type1Report rep = check_type1(t);
  if (!rep.feasible) throw Error(ErrorCode::NotFeasible, "tuple does not satisfy the type-1 equations");
  auto claim = [&](std::string id, bool holds) { rep.claims.push_back({std::move(id), holds}); };
  claim("claim1.p_divides_nindex", t.nIndex % t.p == 0);
  claim("claim2.p_adic_valuation_of_zh", valuation(static_cast<std::uint64_t>(t.zH), static_cast<std::uint64_t>(t.p)) ==
                                             static_cast<unsigned>(t.r));
  claim("claim3.p_eq_q", t.p == t.q);
  claim("claim4.pt_divides_nindex", Big(t.nIndex) % pw(t.p, t.t) == 0);
  claim("u2_eq_1", t.u2 == 1);
  claim("centers_equal", Big(t.zH) == pw(t.p, t.r) * t.a);
  return rep;
}

// ---- bounds ------------------------------------------------------------------

SearchBounds bounds_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "bounds must be a JSON object");
  SearchBounds b;
  std::pair<const char*, std::int64_t*> fields[] = {
      {"p_max", &b.p_max}, {"q_max", &b.q_max}, {"n_max", &b.n_max}, {"f_max", &b.f_max},
      {"a_max", &b.a_max}, {"b_max", &b.b_max}, {"c_max", &b.c_max}, {"r_max", &b.r_max},
      {"u_max", &b.u_max}, {"v_max", &b.v_max}, {"zh_max", &b.zh_max}, {"nindex_max", &b.nindex_max}};
  for (const auto& [key, value] : j.items()) {
    auto it = std::find_if(std::begin(fields), std::end(fields), [&](const auto& f) { return key == f.first; });
    if (it == std::end(fields)) throw Error(ErrorCode::ParseError, "unknown bounds key '" + key + "'");
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
      throw Error(ErrorCode::ParseError, "bounds key '" + key + "' must be a non-negative integer");
    *it->second = value.get<std::int64_t>();
  }
  return b;
}

SearchBounds read_bounds_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return bounds_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

nlohmann::json bounds_to_json(const SearchBounds& b) {
  nlohmann::ordered_json j;
  j["p_max"] = b.p_max;
  j["q_max"] = b.q_max;
  j["n_max"] = b.n_max;
  j["f_max"] = b.f_max;
  j["a_max"] = b.a_max;
  j["b_max"] = b.b_max;
  j["c_max"] = b.c_max;
  j["r_max"] = b.r_max;
  j["u_max"] = b.u_max;
  j["v_max"] = b.v_max;
  j["zh_max"] = b.zh_max;
  j["nindex_max"] = b.nindex_max;
  return nlohmann::json::parse(j.dump());
}

namespace {

std::vector<std::int64_t> primes(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (auto p : primes_up_to(static_cast<std::uint64_t>(std::max<std::int64_t>(limit, 0))))
    out.push_back(static_cast<std::int64_t>(p));
  return out;
}

struct Shard {
  std::int64_t p, q, n, f;
};

std::vector<Shard> shards(SearchKind kind, const SearchBounds& b) {
  std::vector<Shard> out;
  for (auto p : primes(b.p_max))
    for (auto q : primes(b.q_max)) {
      if (kind == SearchKind::Type3 && p == q) continue;
      for (std::int64_t n = 1; n <= b.n_max; ++n) {
        if (kind == SearchKind::Type1) {
          out.push_back({p, q, n, 0});
          continue;
        }
        for (std::int64_t f = 1; f <= b.f_max; ++f) out.push_back({p, q, n, f});
      }
    }
  return out;
}

std::int64_t coprime_count(std::int64_t limit, std::int64_t p) {
  std::int64_t k = 0;
  for (std::int64_t a = 1; a <= limit; ++a)
    if (a % p != 0) ++k;
  return k;
}

// Families: subsets (size 1..v_max) of the admissible (t, s) pairs with
// pairwise distinct t's and s's, in lexicographic order of candidate indices.
void families(const std::vector<std::pair<std::int64_t, std::int64_t>>& cand, std::int64_t v_max,
              const Type3Tuple& base, std::vector<Type3Tuple>& out) {
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    for (std::size_t i = from; i < cand.size(); ++i) {
      bool ok = true;
      for (auto j : pick) ok = ok && cand[j].first != cand[i].first && cand[j].second != cand[i].second;
      if (!ok) continue;
      pick.push_back(i);
      Type3Tuple t = base;
      for (auto j : pick) t.families.push_back(cand[j]);
      out.push_back(std::move(t));
      if (static_cast<std::int64_t>(pick.size()) < v_max) self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

template <class Int>
std::uint64_t shard_type3(const SearchBounds& bd, const Shard& s, std::vector<Type3Tuple>& out) {
  const std::int64_t p = s.p, q = s.q, n = s.n, f = s.f;
  std::uint64_t scanned = 0;
  const std::int64_t a_count = coprime_count(bd.a_max, p);
  const Int P(p), Q(q), one(1);
  const Int qf = ipow(Q, f), pn = ipow(P, n);
  for (std::int64_t m = 1; m < n; ++m) {
    const Int pm = ipow(P, m), pnm = ipow(P, n - m);
    for (std::int64_t c = 2; c <= bd.c_max; ++c) {
      if (c % q == 0) continue;
      scanned += static_cast<std::uint64_t>((bd.r_max + 1) * a_count);
      const Int C(c);
      if (sub(qf, one) % C != 0) continue;
      // eqC does not involve r, a: test it once.
      if (mul(mul(pm, sub(pnm, one)), sub(C, one)) != mul(mul(sub(pm, one), C), sub(qf, one))) continue;
      for (std::int64_t r = 0; r <= bd.r_max; ++r) {
        const Int pr = ipow(P, r);
        for (std::int64_t a = 1; a <= bd.a_max; ++a) {
          if (a % p == 0) continue;
          const Int Z = mul(pr, Int(a));
          // eq4: W (c - 1) = Z (p^m - 1).
          const Int rhs4 = mul(Z, sub(pm, one));
          if (rhs4 % (C - 1) != 0) continue;
          Int W = rhs4 / (C - 1);
          if (W < 1) continue;
          std::int64_t u = 0;
          Int bb = W;
          while (bb % Q == 0) {
            bb /= Q;
            ++u;
          }
          if (u > bd.u_max || bb > Int(bd.b_max)) continue;
          if (mul(W, sub(mul(qf, C), one)) != mul(Z, sub(pn, one))) continue;
          if (mul(mul(W, C), sub(qf, one)) != mul(mul(pm, Z), sub(pnm, one))) continue;
          std::vector<std::pair<std::int64_t, std::int64_t>> cand;
          for (std::int64_t t = 1; t <= f; ++t) {
            const Int qt = ipow(Q, t);
            for (std::int64_t si = 1; si < n; ++si) {
              if (si == m) continue;
              const Int ps = ipow(P, si);
              if (mul(W, sub(qt, one)) != mul(Z, sub(ps, one))) continue;
              if (mul(W, sub(C, qt)) != mul(Z, sub(pm, ps))) continue;
              if (mul(mul(qt, W), sub(mul(ipow(Q, f - t), C), one)) != mul(mul(ps, Z), sub(ipow(P, n - si), one)))
                continue;
              cand.emplace_back(t, si);
            }
          }
          if (cand.empty()) continue;
          Type3Tuple base{p, q, n, r, a, f, u, static_cast<std::int64_t>(bb), c, m, {}};
          families(cand, bd.v_max, base, out);
        }
      }
    }
  }
  return scanned;
}

template <class Int>
std::uint64_t shard_type1(const SearchBounds& bd, const Shard& s, std::vector<Type1Tuple>& out) {
  const std::int64_t p = s.p, q = s.q, n = s.n;
  std::uint64_t scanned = 0;
  const Int P(p), Q(q), one(1);
  for (std::int64_t r = 0; r <= bd.r_max; ++r) {
    const Int pr = ipow(P, r);
    for (std::int64_t a = 1; a <= bd.a_max; ++a) {
      if (a % p == 0) continue;
      const Int Z = mul(pr, Int(a));
      for (std::int64_t t = 1; t < n; ++t) {
        const Int pt = ipow(P, t);
        for (std::int64_t u2 = 1; u2 < n; ++u2) {
          ++scanned;
          const Int pu = ipow(P, u2);
          // |C_H(h)| - |Z(H)| = |C_G(g)| - |Z(G)| fixes zH.
          const Int rhs4 = mul(Z, sub(pu, one));
          if (rhs4 % (Q - 1) != 0) continue;
          const Int zh = rhs4 / (Q - 1);
          if (zh < 1 || zh > Int(bd.zh_max)) continue;
          // |N| - |Z(H)| = |M| - |Z(G)| fixes nIndex.
          const Int rhs1 = mul(Z, sub(pt, one));
          if (rhs1 % zh != 0) continue;
          const Int N = add(rhs1 / zh, one);
          if (N < 2 || N > Int(bd.nindex_max)) continue;
          if (mul(mul(zh, N), sub(Q, one)) != mul(mul(pr, pt), mul(Int(a), sub(ipow(P, n - t), one)))) continue;
          if (mul(zh, sub(N, Q)) != mul(Z, sub(pt, pu))) continue;
          const auto zh64 = static_cast<std::int64_t>(zh);
          const auto u = static_cast<std::int64_t>(valuation(static_cast<std::uint64_t>(zh64), static_cast<std::uint64_t>(q)));
          out.push_back({p, q, n, r, a, u, zh64, static_cast<std::int64_t>(N), t, u2});
        }
      }
    }
  }
  return scanned;
}

// Fixed-width first; the shard is redone with arbitrary precision on overflow.
template <class Tuple>
std::uint64_t run_shard(SearchKind kind, const SearchBounds& bd, const Shard& s, std::vector<Tuple>& out) {
  try {
    if constexpr (std::is_same_v<Tuple, Type3Tuple>) return shard_type3<i128>(bd, s, out);
    else return shard_type1<i128>(bd, s, out);
  } catch (const Overflow&) {
    out.clear();
  }
  (void)kind;
  if constexpr (std::is_same_v<Tuple, Type3Tuple>) return shard_type3<Big>(bd, s, out);
  else return shard_type1<Big>(bd, s, out);
}

void check_budget(double size, double budget) {
  if (size > budget) {
    std::ostringstream msg;
    msg << "estimated search size " << size << " exceeds budget " << budget;
    throw Error(ErrorCode::BoundsTooLarge, msg.str());
  }
}

template <class Tuple>
std::vector<Tuple> enumerate_all(SearchKind kind, const SearchBounds& b) {
  const auto sh = shards(kind, b);
  std::vector<std::vector<Tuple>> parts(sh.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < sh.size(); ++i) run_shard(kind, b, sh[i], parts[i]);
  std::vector<Tuple> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::string kind_name(SearchKind k) { return k == SearchKind::Type3 ? "type3" : "type1"; }

}  // namespace

double type3_search_size(const SearchBounds& b) {
  const double np = static_cast<double>(primes(b.p_max).size()), nq = static_cast<double>(primes(b.q_max).size());
  return np * nq * static_cast<double>(b.n_max) * static_cast<double>(b.f_max) *
         static_cast<double>(std::max<std::int64_t>(b.n_max - 1, 0)) * static_cast<double>(b.c_max) *
         static_cast<double>(b.r_max + 1) * static_cast<double>(b.a_max);
}

double type1_search_size(const SearchBounds& b) {
  const double np = static_cast<double>(primes(b.p_max).size()), nq = static_cast<double>(primes(b.q_max).size());
  const double inner = static_cast<double>(std::max<std::int64_t>(b.n_max - 1, 0));
  return np * nq * static_cast<double>(b.n_max) * static_cast<double>(b.r_max + 1) * static_cast<double>(b.a_max) *
         inner * inner;
}

std::vector<Type3Tuple> enumerate_type3(const SearchBounds& b, double budget) {
  check_budget(type3_search_size(b), budget);
  return enumerate_all<Type3Tuple>(SearchKind::Type3, b);
}

std::vector<Type1Tuple> enumerate_type1(const SearchBounds& b, double budget) {
  check_budget(type1_search_size(b), budget);
  return enumerate_all<Type1Tuple>(SearchKind::Type1, b);
}

nlohmann::json to_json(const Type3Tuple& t) {
  nlohmann::ordered_json j;
  j["p"] = t.p;
  j["q"] = t.q;
  j["n"] = t.n;
  j["r"] = t.r;
  j["a"] = t.a;
  j["f"] = t.f;
  j["u"] = t.u;
  j["b"] = t.b;
  j["c"] = t.c;
  j["m"] = t.m;
  j["families"] = nlohmann::ordered_json::array();
  for (const auto& [ti, si] : t.families) j["families"].push_back({ti, si});
  return nlohmann::json::parse(j.dump());
}

nlohmann::json to_json(const Type1Tuple& t) {
  nlohmann::ordered_json j;
  j["p"] = t.p;
  j["q"] = t.q;
  j["n"] = t.n;
  j["r"] = t.r;
  j["a"] = t.a;
  j["u"] = t.u;
  j["zH"] = t.zH;
  j["nIndex"] = t.nIndex;
  j["t"] = t.t;
  j["u2"] = t.u2;
  return nlohmann::json::parse(j.dump());
}

namespace {
std::int64_t field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw Error(ErrorCode::ParseError, std::string("missing integer field ") + key);
  return j[key].get<std::int64_t>();
}
}  // namespace

Type3Tuple type3_from_json(const nlohmann::json& j) {
  Type3Tuple t{field(j, "p"), field(j, "q"), field(j, "n"), field(j, "r"), field(j, "a"),
               field(j, "f"), field(j, "u"), field(j, "b"), field(j, "c"), field(j, "m"), {}};
  if (j.contains("families"))
    for (const auto& pair : j["families"]) t.families.emplace_back(pair.at(0).get<std::int64_t>(), pair.at(1).get<std::int64_t>());
  return t;
}

Type1Tuple type1_from_json(const nlohmann::json& j) {
  return {field(j, "p"), field(j, "q"), field(j, "n"), field(j, "r"), field(j, "a"),
          field(j, "u"), field(j, "zH"), field(j, "nIndex"), field(j, "t"), field(j, "u2")};
}

// ---- cursor & resumable search ------------------------------------------------

nlohmann::json cursor_to_json(const SearchCursor& c) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(c.kind);
  j["bounds"] = nlohmann::ordered_json::parse(bounds_to_json(c.bounds).dump());
  j["next_shard"] = c.next_shard;
  j["total_shards"] = c.total_shards;
  j["feasible"] = c.feasible;
  j["scanned"] = c.scanned;
  j["output_bytes"] = c.output_bytes;
  return nlohmann::json::parse(j.dump());
}

SearchCursor cursor_from_json(const nlohmann::json& j) {
  try {
    SearchCursor c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "type3" && kind != "type1") throw Error(ErrorCode::ParseError, "cursor kind must be type3 or type1");
    c.kind = kind == "type3" ? SearchKind::Type3 : SearchKind::Type1;
    c.bounds = bounds_from_json(j.at("bounds"));
    c.next_shard = j.at("next_shard").get<std::size_t>();
    c.total_shards = j.at("total_shards").get<std::size_t>();
    c.feasible = j.at("feasible").get<std::uint64_t>();
    c.scanned = j.at("scanned").get<std::uint64_t>();
    c.output_bytes = j.at("output_bytes").get<std::uint64_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad cursor: ") + e.what());
  }
}

SearchCursor read_cursor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return cursor_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_cursor_file(const std::string& path, const SearchCursor& c) {
  // Write-then-rename so an interrupted run never leaves a torn cursor.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp);
    out << cursor_to_json(c).dump() << '\n';
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::IoError, "cannot rename " + tmp);
}

SearchCursor run_search(SearchKind kind, const SearchBounds& bounds, const SearchOptions& opts, std::ostream& out,
                        std::optional<SearchCursor> cursor) {
  const double size = kind == SearchKind::Type3 ? type3_search_size(bounds) : type1_search_size(bounds);
  if (!opts.override_budget) check_budget(size, opts.budget);
  const auto sh = shards(kind, bounds);
  SearchCursor cur;
  if (cursor) {
    if (cursor->kind != kind || !(cursor->bounds == bounds) || cursor->total_shards != sh.size())
      throw Error(ErrorCode::InvalidParameter, "cursor does not match the requested search");
    cur = *cursor;
  } else {
    cur.kind = kind;
    cur.bounds = bounds;
    cur.total_shards = sh.size();
  }
  const std::size_t begin = std::min(cur.next_shard, sh.size());
  const std::size_t end = begin + std::min(opts.max_shards, sh.size() - begin);
  const int jobs = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic) ordered num_threads(jobs)
  for (std::size_t i = begin; i < end; ++i) {
    std::string lines;
    std::uint64_t scanned = 0, found = 0;
    std::exception_ptr err;
    try {
      if (kind == SearchKind::Type3) {
        std::vector<Type3Tuple> v;
        scanned = run_shard(kind, bounds, sh[i], v);
        for (const auto& t : v) lines += to_json(t).dump() + "\n";
        found = v.size();
      } else {
        std::vector<Type1Tuple> v;
        scanned = run_shard(kind, bounds, sh[i], v);
        for (const auto& t : v) lines += to_json(t).dump() + "\n";
        found = v.size();
      }
    } catch (...) {
      err = std::current_exception();
    }
#pragma omp ordered
    {
      if (!failure && err) failure = err;
      if (!failure) {
        out << lines;
        out.flush();
        cur.output_bytes += lines.size();
        cur.feasible += found;
        cur.scanned += scanned;
        cur.next_shard = i + 1;
        if (!opts.cursor_path.empty()) {
          try {
            write_cursor_file(opts.cursor_path, cur);
          } catch (...) {
            failure = std::current_exception();
          }
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  if (!opts.cursor_path.empty() && begin == end) write_cursor_file(opts.cursor_path, cur);
  return cur;
}

}  // namespace acg
