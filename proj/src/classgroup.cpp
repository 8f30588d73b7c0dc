#include "quadclass/classgroup.hpp"

#include "quadclass/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace quadclass {

std::string encode_factorization(const Factorization& f) {
    std::string out = f.sign < 0 ? "-1:" : "1:";
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        if (i)
            out += ',';
        out += to_string(f.factors[i].prime) + "^" + std::to_string(f.factors[i].exponent);
    }
    return out;
}

std::optional<Factorization> decode_factorization(const Integer& n, const std::string& text) {
    try {
        const auto colon = text.find(':');
        if (colon == std::string::npos)
            return std::nullopt;
        Factorization f;
        f.n = n;
        const std::string sign = text.substr(0, colon);
        if (sign != "1" && sign != "-1")
            return std::nullopt;
        f.sign = sign == "1" ? 1 : -1;
        std::stringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const auto caret = item.find('^');
            if (caret == std::string::npos)
                return std::nullopt;
            f.factors.push_back({parse_integer(item.substr(0, caret)),
                                 static_cast<unsigned>(std::stoul(item.substr(caret + 1)))});
        }
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            if (!is_prime(f.factors[i].prime) || f.factors[i].exponent == 0)
                return std::nullopt;
            if (i && !(f.factors[i - 1].prime < f.factors[i].prime))
                return std::nullopt;
        }
        if (f.reassemble() != n)
            return std::nullopt;
        return f;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

namespace {

std::vector<Integer> prime_divisors(const Integer& n) {
    std::vector<Integer> out;
    for (const auto& pp : factor(n).factors)
        out.push_back(pp.prime);
    return out;
}

// Order of the image of g in G/H for a p-group, as the exponent k with g^(p^k) in H.
unsigned quotient_log_order(const QuadForm& g, const Integer& p, const std::set<QuadForm>& subgroup) {
    unsigned k = 0;
    QuadForm x = g;
    while (!subgroup.count(x)) {
        x = power(x, p);
        ++k;
    }
    return k;
}

struct PrimaryFactor {
    unsigned exponent;
    QuadForm generator;
};

// Basis of the p-Sylow subgroup by greedy choice of maximal quotient order and lifting.
std::vector<PrimaryFactor> primary_basis(const std::vector<QuadForm>& sylow, const Integer& p,
                                         const QuadForm& identity) {
    std::set<QuadForm> subgroup{identity};
    std::vector<PrimaryFactor> basis;
    while (subgroup.size() < sylow.size()) {
        const QuadForm* best = nullptr;
        unsigned best_k = 0;
        for (const QuadForm& g : sylow) {
            const unsigned k = quotient_log_order(g, p, subgroup);
            if (k > best_k) {
                best_k = k;
                best = &g;
            }
        }
        const Integer pk = pow_ui(p, best_k);
        const QuadForm target = power(*best, pk);
        std::optional<QuadForm> lifted;
        for (const QuadForm& h0 : subgroup) {
            if (power(h0, pk) == target) {
                lifted = compose(*best, inverse(h0));
                break;
            }
        }
        if (!lifted)
            throw InconsistencyError("group_structure: no order-preserving lift in p-subgroup");
        std::set<QuadForm> next;
        for (const QuadForm& h0 : subgroup) {
            QuadForm x = h0;
            for (Integer i = 0; i < pk; ++i) {
                next.insert(x);
                x = compose(x, *lifted);
            }
        }
        subgroup = std::move(next);
        basis.push_back({best_k, *lifted});
    }
    std::sort(basis.begin(), basis.end(),
              [](const PrimaryFactor& x, const PrimaryFactor& y) { return x.exponent < y.exponent; });
    return basis;
}

}  // namespace

FactorOptions factor_options(const Config& config) {
    return FactorOptions{config.factor_budget, config.seed};
}

Factorization factor_cached(const Integer& n, const Config& config) {
    if (config.cache == nullptr)
        return factor(n, factor_options(config));
    const std::string key = "factor:" + to_string(n);
    if (auto hit = config.cache->get(key)) {
        if (auto f = decode_factorization(n, *hit))
            return *f;
    }
    Factorization f = factor(n, factor_options(config));
    config.cache->put(key, encode_factorization(f));
    return f;
}

Integer class_number_forms(const Discriminant& disc, const Config& config) {
    return from_int64(count_reduced(disc, config.max_disc));
}

Integer class_number_analytic(const Discriminant& disc) {
    if (!disc.is_fundamental())
        throw InputError("class_number_analytic: " + to_string(disc.value()) +
                         " is not a fundamental discriminant");
    const std::int64_t D = to_int64(disc.value());
    const std::int64_t m = -D;
    // k -> (D/k) is completely multiplicative: evaluate it on primes, extend by a linear sieve.
    constexpr std::int8_t unset = 2;
    std::vector<std::int8_t> chi(static_cast<std::size_t>(m), unset);
    std::vector<std::int64_t> primes;
    __int128 sum = 0;
    if (m > 1) {
        chi[1] = 1;
        sum = 1;
    }
    for (std::int64_t k = 2; k < m; ++k) {
        if (chi[k] == unset) {
            chi[k] = static_cast<std::int8_t>(kronecker_i64(D, k));
            primes.push_back(k);
        }
        if (chi[k] > 0)
            sum += k;
        else if (chi[k] < 0)
            sum -= k;
        for (const std::int64_t p : primes) {
            if (p * k >= m)
                break;
            chi[p * k] = static_cast<std::int8_t>(chi[p] * chi[k]);
            if (k % p == 0)
                break;
        }
    }
    if (sum < 0)
        sum = -sum;
    const std::int64_t w = D == -3 ? 6 : (D == -4 ? 4 : 2);
    const __int128 num = sum * w;
    const __int128 den = 2 * static_cast<__int128>(m);
    if (num % den != 0)
        throw InconsistencyError("class_number_analytic: character sum not divisible at " +
                                 std::to_string(D));
    return from_int64(static_cast<std::int64_t>(num / den));
}

FieldClassNumber class_number_of_field(const Integer& d, const Config& config) {
    if (d >= 0)
        throw OutOfScopeError("only imaginary quadratic fields are supported (d < 0), got " +
                              to_string(d));
    FieldClassNumber out;
    out.d_sf = squarefree_part(factor_cached(d, config)).d;
    out.disc = floor_mod(out.d_sf, 4) == 1 ? out.d_sf : Integer(4 * out.d_sf);
    if (-out.disc > config.max_disc)
        throw ResourceCapError("|disc| = " + to_string(-out.disc) + " for d = " + to_string(d) +
                               " exceeds the enumeration cap " + std::to_string(config.max_disc));

    const std::string key = "h:" + to_string(out.disc);
    if (config.cache != nullptr) {
        if (auto hit = config.cache->get(key)) {
            // "<h>" or "<h>;checked"
            const auto semi = hit->find(';');
            try {
                out.h = parse_integer(hit->substr(0, semi));
                out.cross_checked = semi != std::string::npos && hit->substr(semi + 1) == "checked";
                if (out.h > 0)
                    return out;
            } catch (const InputError&) {
            }
        }
    }

    // d_sf square-free by construction, so the discriminant is fundamental.
    const Discriminant disc = Discriminant::from(out.disc);
    out.h = class_number_forms(disc, config);
    out.cross_checked = false;
    if (-out.disc <= config.analytic_cap) {
        const Integer analytic = class_number_analytic(disc);
        if (analytic != out.h)
            throw InconsistencyError("class number mismatch at disc " + to_string(out.disc) +
                                     ": forms " + to_string(out.h) + ", analytic " +
                                     to_string(analytic));
        out.cross_checked = true;
    }
    if (config.cache != nullptr)
        config.cache->put(key, to_string(out.h) + (out.cross_checked ? ";checked" : ""));
    return out;
}

Integer order_of_class(const QuadForm& f, const Integer& h) {
    if (h < 1)
        throw InputError("order_of_class: h must be positive");
    if (!is_principal(power(f, h)))
        throw InconsistencyError("order_of_class: " + to_string(f) + "^" + to_string(h) +
                                 " is not principal");
    Integer m = h;
    for (const Integer& p : prime_divisors(h)) {
        while (divides(p, m) && is_principal(power(f, m / p)))
            m /= p;
    }
    return m;
}

ClassGroupInfo group_structure(const Discriminant& disc, const Config& config) {
    ClassGroupInfo info;
    info.discriminant = disc.value();
    info.h = class_number_forms(disc, config);
    if (info.h > config.structure_cap)
        throw ResourceCapError("class number " + to_string(info.h) +
                               " exceeds the structure cap " +
                               std::to_string(config.structure_cap));
    if (info.h == 1)
        return info;

    const std::vector<QuadForm> forms = enumerate_reduced(disc, config.max_disc);
    const QuadForm identity = identity_form(disc.value());

    std::vector<Integer> orders;
    orders.reserve(forms.size());
    for (const QuadForm& f : forms)
        orders.push_back(order_of_class(f, info.h));

    // One primary decomposition per prime p | h, aligned from the largest factor down.
    std::vector<std::vector<PrimaryFactor>> primaries;
    std::vector<Integer> primes = prime_divisors(info.h);
    std::size_t rank = 0;
    for (const Integer& p : primes) {
        std::vector<QuadForm> sylow;
        for (std::size_t i = 0; i < forms.size(); ++i) {
            Integer o = orders[i];
            while (divides(p, o))
                o /= p;
            if (o == 1)
                sylow.push_back(forms[i]);
        }
        primaries.push_back(primary_basis(sylow, p, identity));
        rank = std::max(rank, primaries.back().size());
    }

    for (std::size_t slot = 0; slot < rank; ++slot) {
        Integer divisor = 1;
        QuadForm gen = identity;
        for (std::size_t j = 0; j < primes.size(); ++j) {
            const auto& basis = primaries[j];
            const std::size_t offset = rank - basis.size();
            if (slot < offset)
                continue;
            const PrimaryFactor& pf = basis[slot - offset];
            divisor *= pow_ui(primes[j], pf.exponent);
            gen = compose(gen, pf.generator);
        }
        if (order_of_class(gen, info.h) != divisor)
            throw InconsistencyError("group_structure: generator order certification failed");
        info.elementary_divisors.push_back(divisor);
        info.generators.push_back(gen);
    }
    return info;
}

}  // namespace quadclass
