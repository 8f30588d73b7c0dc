#include "quadclass/intmath.hpp"

#include "quadclass/errors.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <utility>

namespace quadclass {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

const std::vector<std::uint32_t>& trial_primes() {
    static const std::vector<std::uint32_t> primes = small_primes(kTrialDivisionBound);
    return primes;
}

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod_u64(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool mr_round_u64(u64 n, u64 a, u64 d, int s) {
    u64 x = pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

bool mr_round(const Integer& n, const Integer& a, const Integer& d, unsigned long s) {
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Integer n1 = n - 1;
    if (x == 1 || x == n1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n1)
            return true;
    }
    return false;
}

Integer random_below(const Integer& bound, std::mt19937_64& rng) {
    // Uniform enough for witness selection: draw bits(bound)+64 bits and reduce.
    const std::size_t words = mpz_sizeinbase(bound.get_mpz_t(), 2) / 64 + 2;
    Integer r = 0;
    for (std::size_t i = 0; i < words; ++i) {
        r <<= 64;
        r += Integer(std::to_string(rng()));
    }
    return r % bound;
}

// Brent's cycle finding on x -> x^2 + c. Returns a non-trivial divisor or 0.
u64 rho_u64(u64 n, u64 c, u64 x0, std::uint64_t& budget) {
    constexpr u64 batch = 128;
    auto f = [&](u64 v) { return static_cast<u64>((static_cast<u128>(v) * v + c) % n); };
    u64 y = x0, x = x0, ys = x0, q = 1, g = 1;
    u64 r = 1;
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i)
            y = f(y);
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            const u64 steps = std::min(batch, r - k);
            if (budget < steps)
                return 0;
            budget -= steps;
            for (u64 i = 0; i < steps; ++i) {
                y = f(y);
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += batch;
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            if (budget == 0)
                return 0;
            --budget;
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

Integer rho_big(const Integer& n, const Integer& c, const Integer& x0, std::uint64_t& budget) {
    constexpr std::uint64_t batch = 128;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    Integer y = x0, x = x0, ys = x0, q = 1, g = 1, diff;
    std::uint64_t r = 1;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i)
            y = f(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t steps = std::min(batch, r - k);
            if (budget < steps)
                return 0;
            budget -= steps;
            for (std::uint64_t i = 0; i < steps; ++i) {
                y = f(y);
                diff = abs(x - y);
                q = (q * diff) % n;
            }
            g = gcd(q, n);
            k += batch;
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            if (budget == 0)
                return 0;
            --budget;
            ys = f(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g == n ? Integer(0) : g;
}

std::optional<std::pair<Integer, unsigned long>> perfect_power(const Integer& n) {
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long k = bits; k >= 2; --k) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1)
            return std::make_pair(root, k);
    }
    return std::nullopt;
}

Integer split(const Integer& n, std::mt19937_64& rng, std::uint64_t& budget) {
    while (true) {
        if (fits_int64(n)) {
            const u64 m = static_cast<u64>(to_int64(n));
            const u64 c = 1 + rng() % (m - 1);
            const u64 x0 = rng() % m;
            const u64 d = rho_u64(m, c, x0, budget);
            if (d != 0)
                return from_int64(static_cast<std::int64_t>(d));
        } else {
            const Integer c = 1 + random_below(n - 1, rng);
            const Integer x0 = random_below(n, rng);
            Integer d = rho_big(n, c, x0, budget);
            if (d != 0)
                return d;
        }
        if (budget == 0)
            throw ResourceCapError("factorization budget exhausted; unfactored cofactor " +
                                   to_string(n));
    }
}

}  // namespace

std::vector<std::uint32_t> small_primes(std::uint32_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= bound; j += i)
            composite[j] = true;
    }
    return primes;
}

GcdExt gcd_ext(const Integer& a, const Integer& b) {
    GcdExt r;
    mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer mod_pow(const Integer& base, const Integer& exp, const Integer& modulus) {
    if (modulus < 1)
        throw InputError("mod_pow: modulus must be >= 1, got " + to_string(modulus));
    if (exp < 0)
        throw InputError("mod_pow: negative exponent");
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

std::optional<Integer> mod_inverse(const Integer& a, const Integer& m) {
    const GcdExt e = gcd_ext(a, m);
    if (e.g != 1)
        return std::nullopt;
    return floor_mod(e.u, m);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2)
        return false;
    static constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : bases) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : bases)
        if (!mr_round_u64(n, a, d, s))
            return false;
    return true;
}

bool is_prime(const Integer& n, std::uint64_t seed) {
    if (n < 2)
        return false;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        return is_prime_u64(mpz_get_ui(n.get_mpz_t()));
    }
    for (std::uint32_t p : trial_primes()) {
        if (p > 1000)
            break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    Integer d = n - 1;
    const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    if (!mr_round(n, 2, d, s))
        return false;
    std::mt19937_64 rng(seed);
    const Integer span = n - 3;
    for (int round = 0; round < 40; ++round) {
        const Integer a = 2 + random_below(span, rng);
        if (!mr_round(n, a, d, s))
            return false;
    }
    return true;
}

Integer Factorization::reassemble() const {
    Integer r = sign;
    for (const auto& pp : factors)
        r *= pow_ui(pp.prime, pp.exponent);
    return r;
}

Factorization factor(const Integer& n, const FactorOptions& options) {
    if (n == 0)
        throw InputError("factor: n must be non-zero");
    Factorization out;
    out.n = n;
    out.sign = n < 0 ? -1 : 1;
    Integer m = abs(n);
    std::map<Integer, unsigned> found;

    for (std::uint32_t p : trial_primes()) {
        if (m == 1)
            break;
        if (Integer(p) * p > m)
            break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++found[Integer(p)];
        }
    }

    std::mt19937_64 rng(options.seed ^ mpz_get_ui(m.get_mpz_t()));
    std::uint64_t budget = options.budget;
    std::vector<Integer> pending;
    if (m > 1)
        pending.push_back(m);
    while (!pending.empty()) {
        Integer c = std::move(pending.back());
        pending.pop_back();
        if (c == 1)
            continue;
        if (is_prime(c, options.seed)) {
            ++found[c];
            continue;
        }
        if (auto pw = perfect_power(c)) {
            for (unsigned long i = 0; i < pw->second; ++i)
                pending.push_back(pw->first);
            continue;
        }
        Integer d = split(c, rng, budget);
        pending.push_back(c / d);
        pending.push_back(std::move(d));
    }

    for (auto& [p, e] : found)
        out.factors.push_back({p, e});
    return out;
}

SquarefreeDecomp squarefree_part(const Factorization& f) {
    SquarefreeDecomp r{Integer(f.sign), Integer(1)};
    for (const auto& pp : f.factors) {
        if (pp.exponent % 2 == 1)
            r.d *= pp.prime;
        r.t *= pow_ui(pp.prime, pp.exponent / 2);
    }
    return r;
}

SquarefreeDecomp squarefree_part(const Integer& n, const FactorOptions& options) {
    if (n == 0)
        throw InputError("squarefree_part: n must be non-zero");
    return squarefree_part(factor(n, options));
}

bool is_squarefree(const Integer& n, const FactorOptions& options) {
    if (n == 0)
        return false;
    const Factorization f = factor(n, options);
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const PrimePower& pp) { return pp.exponent == 1; });
}

Integer fundamental_discriminant(const Integer& d, const FactorOptions& options) {
    if (d >= 0)
        throw InputError("fundamental_discriminant: expected d < 0, got " + to_string(d));
    if (!is_squarefree(d, options))
        throw InputError("fundamental_discriminant: " + to_string(d) + " is not square-free");
    if (floor_mod(d, 4) == 1)
        return d;
    return 4 * d;
}

std::optional<Integer> sqrt_mod_prime(const Integer& a, const Integer& p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw InputError("sqrt_mod_prime: modulus " + to_string(p) + " is not an odd prime");
    const Integer r0 = floor_mod(a, p);
    if (r0 == 0)
        return Integer(0);
    const Integer half = (p - 1) / 2;
    if (mod_pow(r0, half, p) != 1)
        return std::nullopt;

    Integer q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;
    Integer z = 2;
    while (mod_pow(z, half, p) != p - 1)
        ++z;

    unsigned long m = s;
    Integer c = mod_pow(z, q, p);
    Integer t = mod_pow(r0, q, p);
    Integer root = mod_pow(r0, (q + 1) / 2, p);
    while (t != 1) {
        unsigned long i = 0;
        Integer t2 = t;
        while (t2 != 1) {
            t2 = (t2 * t2) % p;
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j)
            b = (b * b) % p;
        m = i;
        c = (b * b) % p;
        t = (t * c) % p;
        root = (root * b) % p;
    }
    Integer other = p - root;
    return root < other ? root : other;
}

int kronecker(const Integer& a, const Integer& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker_i64(std::int64_t a, std::int64_t n) {
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos > 0) {
        if ((a & 1) == 0)
            return 0;
        const std::int64_t a8 = ((a % 8) + 8) % 8;
        if ((twos & 1) && (a8 == 3 || a8 == 5))
            result = -result;
    }
    // Jacobi symbol (a/n), n odd positive.
    std::int64_t x = ((a % n) + n) % n;
    std::int64_t m = n;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            const std::int64_t m8 = m & 7;
            if (m8 == 3 || m8 == 5)
                result = -result;
        }
        std::swap(x, m);
        if ((x & 3) == 3 && (m & 3) == 3)
            result = -result;
        x %= m;
    }
    return m == 1 ? result : 0;
}

}  // namespace quadclass
