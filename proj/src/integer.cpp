#include "quadclass/integer.hpp"

#include "quadclass/errors.hpp"

#include <limits>

namespace quadclass {

Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (s.empty())
        throw InputError("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        throw InputError("malformed integer literal '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw InputError("malformed integer literal '" + s + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    return Integer(s, 10);
}

std::string to_string(const Integer& value) { return value.get_str(10); }

bool fits_int64(const Integer& value) {
    static const Integer lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
    static const Integer hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
    return value >= lo && value <= hi;
}

std::int64_t to_int64(const Integer& value) {
    if (!fits_int64(value))
        throw ResourceCapError("integer " + to_string(value) + " does not fit in 64 bits");
    if (value.fits_slong_p())
        return static_cast<std::int64_t>(value.get_si());
    return std::stoll(to_string(value));
}

Integer from_int64(std::int64_t value) {
    if (value >= std::numeric_limits<long>::min() && value <= std::numeric_limits<long>::max())
        return Integer(static_cast<long>(value));
    return Integer(std::to_string(value));
}

Integer abs_value(const Integer& value) { return abs(value); }

int sign_of(const Integer& value) { return sgn(value); }

Integer pow_ui(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool divides(const Integer& d, const Integer& n) {
    if (d == 0)
        return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

std::optional<Integer> exact_sqrt(const Integer& n) {
    if (n < 0)
        return std::nullopt;
    if (!mpz_perfect_square_p(n.get_mpz_t()))
        return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

}  // namespace quadclass
