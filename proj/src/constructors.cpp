#include "acg/constructors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "acg/number.hpp"
#include "acg/structure.hpp"

namespace acg {

namespace {

void require_cap(std::size_t order, std::size_t cap, const std::string& name) {
  if (order > cap)
    throw Error(ErrorCode::OrderCapExceeded,
                name + " has order " + std::to_string(order) + " > cap " + std::to_string(cap));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

std::string call(const char* name, std::size_t a) { return std::string(name) + "(" + std::to_string(a) + ")"; }

template <class Mul>
std::vector<Elem> build_table(std::size_t n, Mul&& mul) {
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = static_cast<Elem>(mul(x, y));
  return table;
}

// Permutations of {0..k-1} listed lexicographically, with a rank lookup.
struct PermutationSet {
  std::size_t degree = 0;
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<std::int32_t> rank;  // base-`degree` code -> index, -1 if absent

  std::size_t code(const std::vector<std::uint8_t>& p) const {
    std::size_t c = 0;
    for (auto v : p) c = c * degree + v;
    return c;
  }
};

PermutationSet permutations(std::size_t k, bool even_only) {
  PermutationSet set;
  set.degree = std::max<std::size_t>(k, 1);
  std::size_t codes = 1;
  for (std::size_t i = 0; i < k; ++i) codes *= set.degree;
  set.rank.assign(codes, -1);
  std::vector<std::uint8_t> p(k);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  do {
    if (even_only) {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) inversions += p[i] > p[j];
      if (inversions % 2) continue;
    }
    set.rank[set.code(p)] = static_cast<std::int32_t>(set.perms.size());
    set.perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return set;
}

FiniteGroup permutation_group(std::size_t k, bool even_only, std::size_t cap, const std::string& name) {
  std::size_t order = 1;
  for (std::size_t i = 2; i <= k; ++i) order *= i;
  if (even_only && k >= 2) order /= 2;
  require_cap(order, cap, name);
  const PermutationSet set = permutations(k, even_only);
  std::vector<std::uint8_t> prod(k);
  auto table = build_table(set.perms.size(), [&](std::size_t x, std::size_t y) {
    // (x * y)(i) = x(y(i))
    for (std::size_t i = 0; i < k; ++i) prod[i] = set.perms[x][set.perms[y][i]];
    return static_cast<std::size_t>(set.rank[set.code(prod)]);
  });
  return FiniteGroup(set.perms.size(), std::move(table), name);
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

using Mat2 = std::array<std::size_t, 4>;  // a b / c d

FiniteGroup matrix_group(std::size_t q, bool special, std::size_t cap, const std::string& name) {
  require(is_prime(q), name + ": q must be prime");
  const std::size_t order = special ? q * (q * q - 1) : (q * q - 1) * (q * q - q);
  require_cap(order, cap, name);
  std::vector<Mat2> mats;
  std::vector<std::int32_t> index(q * q * q * q, -1);
  auto code = [q](const Mat2& m) { return ((m[0] * q + m[1]) * q + m[2]) * q + m[3]; };
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      for (std::size_t c = 0; c < q; ++c)
        for (std::size_t d = 0; d < q; ++d) {
          const std::size_t det = (a * d + q * q - (b * c) % q) % q;
          if (special ? det == 1 : det != 0) mats.push_back({a, b, c, d});
        }
  // Identity first, everything else keeps lexicographic order.
  const Mat2 id{1, 0, 0, 1};
  std::stable_partition(mats.begin(), mats.end(), [&](const Mat2& m) { return m == id; });
  for (std::size_t i = 0; i < mats.size(); ++i) index[code(mats[i])] = static_cast<std::int32_t>(i);
  auto table = build_table(mats.size(), [&](std::size_t x, std::size_t y) {
    const Mat2& m = mats[x];
    const Mat2& n = mats[y];
    const Mat2 p{(m[0] * n[0] + m[1] * n[2]) % q, (m[0] * n[1] + m[1] * n[3]) % q,
                 (m[2] * n[0] + m[3] * n[2]) % q, (m[2] * n[1] + m[3] * n[3]) % q};
    return static_cast<std::size_t>(index[code(p)]);
  });
  return FiniteGroup(mats.size(), std::move(table), name);
}

}  // namespace

FiniteGroup cyclic(std::size_t n, std::size_t cap) {
  const auto name = call("Cyc", n);
  require(n >= 1, name + ": n must be >= 1");
  require_cap(n, cap, name);
  return FiniteGroup(n, build_table(n, [n](std::size_t x, std::size_t y) { return (x + y) % n; }), name);
}

FiniteGroup dihedral(std::size_t n, std::size_t cap) {
  const auto name = call("Dih", n);
  require(n >= 1, name + ": n must be >= 1");
  require_cap(2 * n, cap, name);
  // r^i s^a encoded as i + n a; s r s = r^-1.
  return FiniteGroup(2 * n,
                     build_table(2 * n,
                                 [n](std::size_t x, std::size_t y) {
                                   const std::size_t i = x % n, a = x / n, j = y % n, b = y / n;
                                   const std::size_t k = a ? (i + n - j) % n : (i + j) % n;
                                   return k + n * ((a + b) % 2);
                                 }),
                     name);
}

FiniteGroup dicyclic(std::size_t n, std::size_t cap) {
  const auto name = call("Dic", n);
  require(n >= 1, name + ": n must be >= 1");
  require_cap(4 * n, cap, name);
  // a^i x^j encoded as i + 2n j; a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1.
  const std::size_t m = 2 * n;
  return FiniteGroup(4 * n,
                     build_table(4 * n,
                                 [n, m](std::size_t x, std::size_t y) {
                                   const std::size_t i = x % m, j = x / m, k = y % m, l = y / m;
                                   if (!j) return (i + k) % m + m * l;
                                   const std::size_t e = (i + m - k) % m;
                                   return l ? (e + n) % m : e + m;
                                 }),
                     name);
}

FiniteGroup symmetric(std::size_t n, std::size_t cap) {
  const auto name = call("Sym", n);
  require(n >= 1 && n <= 8, name + ": degree must be in 1..8");
  return permutation_group(n, false, cap, name);
}

FiniteGroup alternating(std::size_t n, std::size_t cap) {
  const auto name = call("Alt", n);
  require(n >= 1 && n <= 8, name + ": degree must be in 1..8");
  return permutation_group(n, true, cap, name);
}

FiniteGroup heisenberg(std::size_t p, std::size_t cap) {
  const auto name = call("Heis", p);
  require(is_prime(p), name + ": p must be prime");
  require_cap(p * p * p, cap, name);
  // (a, b, c) <-> [[1 a c] [0 1 b] [0 0 1]], encoded a + p b + p^2 c.
  return FiniteGroup(p * p * p,
                     build_table(p * p * p,
                                 [p](std::size_t x, std::size_t y) {
                                   const std::size_t a = x % p, b = x / p % p, c = x / (p * p);
                                   const std::size_t a2 = y % p, b2 = y / p % p, c2 = y / (p * p);
                                   return (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
                                 }),
                     name);
}

FiniteGroup extraspecial(std::size_t p, std::size_t m, ExtraspecialType type, std::size_t cap) {
  const bool minus = type == ExtraspecialType::Minus;
  const std::string name =
      "ExSp(" + std::to_string(p) + "," + std::to_string(m) + "," + (minus ? "-" : "+") + ")";
  require(is_prime(p), name + ": p must be prime");
  require(m >= 1 && m <= 6, name + ": m must be in 1..6");
  const std::size_t order = ipow(p, 1 + 2 * m);
  require_cap(order, cap, name);

  // Digits: [c, x_1, y_1, ..., x_m, y_m], each mod p, c least significant.
  // For odd p with Minus, the pair (c, x_1) is one Z/p^2 coordinate i = c + p x_1
  // acted on by y_1 via i -> i (1+p)^{y_1}.
  auto decode = [&](std::size_t v, std::vector<std::size_t>& d) {
    for (auto& digit : d) {
      digit = v % p;
      v /= p;
    }
  };
  auto encode = [&](const std::vector<std::size_t>& d) {
    std::size_t v = 0;
    for (std::size_t k = d.size(); k-- > 0;) v = v * p + d[k];
    return v;
  };
  const std::size_t digits = 1 + 2 * m;
  std::vector<std::size_t> u(digits), w(digits), r(digits);
  std::vector<std::size_t> unit_pow(p);  // (1+p)^j mod p^2
  unit_pow[0] = 1;
  for (std::size_t j = 1; j < p; ++j) unit_pow[j] = unit_pow[j - 1] * (1 + p) % (p * p);

  auto table = build_table(order, [&](std::size_t x, std::size_t y) {
    decode(x, u);
    decode(y, w);
    for (std::size_t k = 1; k < digits; ++k) r[k] = (u[k] + w[k]) % p;
    // Heisenberg cocycle x_t y'_t on every pair except the first pair of a Minus group.
    std::size_t cocycle = 0;
    for (std::size_t t = minus ? 1 : 0; t < m; ++t) cocycle += u[1 + 2 * t] * w[2 + 2 * t];
    if (p == 2) {
      // Quaternion cocycle x x' + y y' + y x' on the first pair.
      if (minus) cocycle += u[1] * w[1] + u[2] * w[2] + u[2] * w[1];
      r[0] = (u[0] + w[0] + cocycle) % 2;
      return encode(r);
    }
    if (!minus) {
      r[0] = (u[0] + w[0] + cocycle) % p;
      return encode(r);
    }
    const std::size_t p2 = p * p;
    const std::size_t i = u[0] + p * u[1], k = w[0] + p * w[1];
    const std::size_t out = (i + k * unit_pow[u[2]] + p * (cocycle % p)) % p2;
    r[0] = out % p;
    r[1] = out / p;
    return encode(r);
  });
  return FiniteGroup(order, std::move(table), name);
}

FiniteGroup general_linear2(std::size_t q, std::size_t cap) { return matrix_group(q, false, cap, call("GL2", q)); }

FiniteGroup special_linear2(std::size_t q, std::size_t cap) { return matrix_group(q, true, cap, call("SL2", q)); }

FiniteGroup semidirect(const FiniteGroup& kernel, std::size_t d, std::size_t seed, bool frobenius,
                       std::size_t cap) {
  const std::string name = "SemiDirect(" + kernel.name() + "," + std::to_string(d) + "," +
                           std::to_string(seed) + (frobenius ? ",frobenius)" : ")");
  require(d >= 1, name + ": complement order must be >= 1");
  const std::size_t k = kernel.order();
  require_cap(k * d, cap, name);

  const auto gens = generating_set(kernel);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem y = 0; y < k; ++y)
      if (kernel.order_of(y) == kernel.order_of(gens[i])) candidates[i].push_back(y);

  constexpr std::size_t kSearchLimit = 2'000'000;
  std::vector<std::size_t> pick(gens.size(), 0);
  std::vector<Elem> images(gens.size());
  std::vector<std::vector<Elem>> powers;  // powers[j] = phi^j as an element map
  std::size_t skipped = 0, tried = 0;
  bool found = false;

  auto qualifies = [&](const std::vector<Elem>& phi) {
    powers.assign(1, std::vector<Elem>(k));
    std::iota(powers[0].begin(), powers[0].end(), Elem{0});
    for (std::size_t j = 1; j <= d; ++j) {
      std::vector<Elem> next(k);
      for (Elem x = 0; x < k; ++x) next[x] = phi[powers[j - 1][x]];
      const bool identity = std::all_of(next.begin(), next.end(), [x = Elem{0}](Elem v) mutable { return v == x++; });
      if (identity != (j == d)) return false;  // order must be exactly d
      if (frobenius && j < d)
        for (Elem x = 1; x < k; ++x)
          if (next[x] == x) return false;
      powers.push_back(std::move(next));
    }
    powers.pop_back();
    return true;
  };

  if (gens.empty()) {
    require(d == 1, name + ": trivial kernel only admits the trivial action");
    powers.assign(1, std::vector<Elem>(k, 0));
    found = seed == 0;
  }
  // Lexicographic increment of the image choice, last generator fastest.
  auto advance = [&] {
    for (std::size_t pos = gens.size(); pos-- > 0;) {
      if (++pick[pos] < candidates[pos].size()) return true;
      pick[pos] = 0;
    }
    return false;
  };
  for (bool more = !gens.empty(); more && !found && tried < kSearchLimit; more = advance(), ++tried) {
    for (std::size_t i = 0; i < gens.size(); ++i) images[i] = candidates[i][pick[i]];
    auto phi = extend_homomorphism(kernel, kernel, gens, images);
    if (!phi || !qualifies(*phi)) continue;
    if (skipped == seed) found = true;
    else ++skipped;
  }
  require(found, name + ": no qualifying automorphism of order " + std::to_string(d));

  // (a, i) encoded a + k i; (a, i)(b, j) = (a phi^i(b), i + j).
  auto table = build_table(k * d, [&](std::size_t x, std::size_t y) {
    const std::size_t a = x % k, i = x / k, b = y % k, j = y / k;
    return kernel.mul(static_cast<Elem>(a), powers[i][b]) + k * ((i + j) % d);
  });
  return FiniteGroup(k * d, std::move(table), name);
}

}  // namespace acg
