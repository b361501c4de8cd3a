#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace acg {

bool is_prime(std::uint64_t n);

// (prime, exponent) pairs in increasing prime order; trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

// n = p^k with k >= 1, or nullopt (including n = 1).
std::optional<PrimePower> as_prime_power(std::uint64_t n);

// Largest k with p^k | n (n > 0).
unsigned valuation(std::uint64_t n, std::uint64_t p);

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

}  // namespace acg
