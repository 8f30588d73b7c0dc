#include "quadclass/qform.hpp"

#include "quadclass/errors.hpp"
#include "quadclass/intmath.hpp"

#include <algorithm>
#include <numeric>

namespace quadclass {

namespace {

void require_positive_definite(const QuadForm& f, const char* op) {
    if (f.a <= 0 || discriminant(f) >= 0)
        throw InputError(std::string(op) + ": form " + to_string(f) + " is not positive definite");
}

// Moves b into (-a, a] with x -> x + r*y.
void normalize(Integer& a, Integer& b, Integer& c) {
    if (-a < b && b <= a)
        return;
    const Integer two_a = 2 * a;
    const Integer r = floor_div(a - b, two_a);
    c += r * (a * r + b);
    b += two_a * r;
}

void check_disc_shape(const Integer& value) {
    if (value >= 0)
        throw InputError("discriminant must be negative, got " + to_string(value));
    const Integer m = floor_mod(value, 4);
    if (m != 0 && m != 1)
        throw InputError("discriminant must be 0 or 1 mod 4, got " + to_string(value));
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
    return std::gcd(std::gcd(a, b), c);
}

}  // namespace

std::string to_string(const QuadForm& f) {
    return "(" + to_string(f.a) + "," + to_string(f.b) + "," + to_string(f.c) + ")";
}

bool is_fundamental_discriminant(const Integer& value) {
    if (value == 0 || value == 1)
        return false;
    const Integer m4 = floor_mod(value, 4);
    if (m4 == 1)
        return is_squarefree(value);
    if (m4 != 0)
        return false;
    const Integer m = value / 4;
    const Integer r = floor_mod(m, 4);
    return (r == 2 || r == 3) && is_squarefree(m);
}

Discriminant Discriminant::from(const Integer& value) {
    check_disc_shape(value);
    return Discriminant(value, is_fundamental_discriminant(value));
}

Integer discriminant(const QuadForm& f) { return f.b * f.b - 4 * f.a * f.c; }

bool is_primitive(const QuadForm& f) { return gcd(gcd(f.a, f.b), f.c) == 1; }

bool is_reduced(const QuadForm& f) {
    const Integer ab = abs(f.b);
    if (!(ab <= f.a && f.a <= f.c))
        return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0)
        return false;
    return true;
}

QuadForm reduce(const QuadForm& f) {
    require_positive_definite(f, "reduce");
    Integer a = f.a, b = f.b, c = f.c;
    normalize(a, b, c);
    while (a > c) {
        swap(a, c);
        b = -b;
        normalize(a, b, c);
    }
    if (a == c && b < 0)
        b = -b;
    return {a, b, c};
}

QuadForm identity_form(const Integer& disc) {
    check_disc_shape(disc);
    if (floor_mod(disc, 2) == 0)
        return {1, 0, -disc / 4};
    return {1, 1, (1 - disc) / 4};
}

bool is_principal(const QuadForm& f) { return reduce(f) == identity_form(discriminant(f)); }

QuadForm inverse(const QuadForm& f) {
    require_positive_definite(f, "inverse");
    return reduce({f.a, -f.b, f.c});
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    require_positive_definite(f, "compose");
    require_positive_definite(g, "compose");
    const Integer disc = discriminant(f);
    if (disc != discriminant(g))
        throw InputError("compose: discriminant mismatch between " + to_string(f) + " and " +
                         to_string(g));

    const QuadForm* f1 = &f;
    const QuadForm* f2 = &g;
    if (f1->a > f2->a)
        std::swap(f1, f2);
    const Integer& a1 = f1->a;
    const Integer& a2 = f2->a;
    const Integer& b2 = f2->b;
    const Integer& c2 = f2->c;

    const Integer s = (f1->b + b2) / 2;
    const Integer n = b2 - s;

    Integer y1, d;
    if (divides(a1, a2)) {
        y1 = 0;
        d = a1;
    } else {
        const GcdExt e = gcd_ext(a2, a1);
        y1 = e.u;
        d = e.g;
    }

    Integer x2, y2, d1;
    if (divides(d, s)) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        const GcdExt e = gcd_ext(s, d);
        x2 = e.u;
        y2 = -e.v;
        d1 = e.g;
    }

    const Integer v1 = a1 / d1;
    const Integer v2 = a2 / d1;
    const Integer r = floor_mod(y1 * y2 * n - x2 * c2, v1);
    const Integer b3 = b2 + 2 * v2 * r;
    const Integer a3 = v1 * v2;
    const Integer c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
    return reduce({a3, b3, c3});
}

QuadForm power(const QuadForm& f, const Integer& k) {
    require_positive_definite(f, "power");
    if (k < 0)
        throw InputError("power: exponent must be non-negative");
    QuadForm result = identity_form(discriminant(f));
    QuadForm base = reduce(f);
    const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = compose(result, result);
        if (mpz_tstbit(k.get_mpz_t(), i))
            result = compose(result, base);
    }
    return result;
}

std::optional<QuadForm> prime_form(const Discriminant& disc, const Integer& q) {
    if (!is_prime(q))
        throw InputError("prime_form: " + to_string(q) + " is not prime");
    const Integer& D = disc.value();
    if (kronecker(D, q) == -1)
        return std::nullopt;

    const Integer four_q = 4 * q;
    const Integer target = floor_mod(D, four_q);
    const Integer parity = floor_mod(D, 2);
    std::vector<Integer> candidates;
    if (q == 2) {
        for (int B = 0; B < 4; ++B)
            candidates.emplace_back(B);
    } else {
        const auto r = sqrt_mod_prime(D, q);
        if (!r)
            throw InconsistencyError("prime_form: Kronecker symbol and square root disagree");
        candidates = {*r, q - *r, *r + q, 2 * q - *r};
    }
    std::optional<Integer> best;
    for (const Integer& B : candidates) {
        if (B < 0 || B >= 2 * q || floor_mod(B, 2) != parity)
            continue;
        if (floor_mod(B * B, four_q) != target)
            continue;
        if (!best || B < *best)
            best = B;
    }
    if (!best)
        throw InconsistencyError("prime_form: no admissible square root for q = " + to_string(q));
    QuadForm form{q, *best, (*best * *best - D) / four_q};
    if (!is_primitive(form))
        throw InputError("prime_form: " + to_string(q) + " divides the conductor of " +
                         to_string(D));
    return form;
}

namespace {

std::int64_t checked_abs_disc(const Discriminant& disc, std::int64_t max_disc) {
    const Integer m = -disc.value();
    if (m > max_disc)
        throw ResourceCapError("|disc| = " + to_string(m) + " exceeds the enumeration cap " +
                               std::to_string(max_disc));
    return to_int64(m);
}

// Calls emit(a, b, c) for each reduced primitive form with b >= 0; the caller adds (a,-b,c)
// when 0 < b < a < c.
template <typename Emit>
void for_each_reduced_nonneg(std::int64_t abs_disc, Emit&& emit) {
    for (std::int64_t b = abs_disc & 1; 3 * b * b <= abs_disc; b += 2) {
        const std::int64_t n = (b * b + abs_disc) / 4;
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= n; ++a) {
            if (n % a != 0)
                continue;
            const std::int64_t c = n / a;
            if (gcd3(a, b, c) == 1)
                emit(a, b, c);
        }
    }
}

}  // namespace

std::vector<QuadForm> enumerate_reduced(const Discriminant& disc, std::int64_t max_disc) {
    const std::int64_t abs_disc = checked_abs_disc(disc, max_disc);
    std::vector<QuadForm> forms;
    for_each_reduced_nonneg(abs_disc, [&](std::int64_t a, std::int64_t b, std::int64_t c) {
        forms.push_back({from_int64(a), from_int64(b), from_int64(c)});
        if (b != 0 && b != a && a != c)
            forms.push_back({from_int64(a), from_int64(-b), from_int64(c)});
    });
    std::sort(forms.begin(), forms.end());
    return forms;
}

std::int64_t count_reduced(const Discriminant& disc, std::int64_t max_disc) {
    const std::int64_t abs_disc = checked_abs_disc(disc, max_disc);
    std::int64_t count = 0;
    for_each_reduced_nonneg(abs_disc, [&](std::int64_t a, std::int64_t b, std::int64_t c) {
        count += (b != 0 && b != a && a != c) ? 2 : 1;
    });
    return count;
}

}  // namespace quadclass
