#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quadclass/integer.hpp"

namespace quadclass {

struct GcdExt {
    Integer g;
    Integer u;
    Integer v;
};

/// u*a + v*b = g = gcd(a, b), g >= 0. gcd_ext(0, 0) = (0, 0, 0).
GcdExt gcd_ext(const Integer& a, const Integer& b);

/// base^exp mod modulus in [0, modulus). Throws InputError for modulus < 1 or exp < 0.
Integer mod_pow(const Integer& base, const Integer& exp, const Integer& modulus);

/// Inverse of a modulo m, if gcd(a, m) = 1.
std::optional<Integer> mod_inverse(const Integer& a, const Integer& m);

constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ULL;

/// Miller-Rabin. Deterministic below 2^64 (first twelve prime bases);
/// above that, base 2 plus 40 rounds drawn from a generator seeded with `seed`.
bool is_prime(const Integer& n, std::uint64_t seed = kDefaultSeed);
bool is_prime_u64(std::uint64_t n);

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    Integer n;
    int sign = 1;
    std::vector<PrimePower> factors;  // strictly increasing primes

    Integer reassemble() const;
};

struct FactorOptions {
    std::uint64_t budget = 1ULL << 25;  // total rho iterations
    std::uint64_t seed = kDefaultSeed;
};

inline constexpr std::uint32_t kTrialDivisionBound = 100'000;

/// Trial division below kTrialDivisionBound, then Brent's variant of Pollard rho.
/// Throws InputError for n = 0 and ResourceCapError (naming the cofactor) when
/// the iteration budget runs out.
Factorization factor(const Integer& n, const FactorOptions& options = {});

struct SquarefreeDecomp {
    Integer d;  // square-free, sign of the input
    Integer t;  // t >= 1

    friend bool operator==(const SquarefreeDecomp&, const SquarefreeDecomp&) = default;
};

/// n = d * t^2 with d square-free and sign(d) = sign(n).
SquarefreeDecomp squarefree_part(const Integer& n, const FactorOptions& options = {});
SquarefreeDecomp squarefree_part(const Factorization& f);

bool is_squarefree(const Integer& n, const FactorOptions& options = {});

/// Discriminant of Q(sqrt(d)) for square-free d < 0: d if d = 1 mod 4, else 4d.
Integer fundamental_discriminant(const Integer& d, const FactorOptions& options = {});

/// A square root of a modulo the odd prime p (Tonelli-Shanks), in [0, p),
/// or nullopt when a is a non-residue. Throws InputError if p is not an odd prime.
std::optional<Integer> sqrt_mod_prime(const Integer& a, const Integer& p);

/// Kronecker symbol (a/n).
int kronecker(const Integer& a, const Integer& n);
int kronecker_i64(std::int64_t a, std::int64_t n);

std::vector<std::uint32_t> small_primes(std::uint32_t bound);

}  // namespace quadclass
