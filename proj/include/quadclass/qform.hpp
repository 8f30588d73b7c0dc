#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadclass/integer.hpp"

namespace quadclass {

/// a*X^2 + b*XY + c*Y^2. Operations expect primitive positive definite forms.
struct QuadForm {
    Integer a;
    Integer b;
    Integer c;

    friend bool operator==(const QuadForm& f, const QuadForm& g) {
        return f.a == g.a && f.b == g.b && f.c == g.c;
    }
    // Lexicographic on (a, b, c); the canonical order for reports and fixtures.
    friend bool operator<(const QuadForm& f, const QuadForm& g) {
        if (f.a != g.a)
            return f.a < g.a;
        if (f.b != g.b)
            return f.b < g.b;
        return f.c < g.c;
    }
};

/// "(a,b,c)"
std::string to_string(const QuadForm& f);

/// A negative discriminant (0 or 1 mod 4) with its fundamental flag.
class Discriminant {
public:
    /// Throws InputError unless value < 0 and value = 0, 1 mod 4.
    static Discriminant from(const Integer& value);

    const Integer& value() const { return value_; }
    bool is_fundamental() const { return fundamental_; }

private:
    Discriminant(Integer value, bool fundamental) : value_(std::move(value)), fundamental_(fundamental) {}

    Integer value_;
    bool fundamental_;
};

bool is_fundamental_discriminant(const Integer& value);

Integer discriminant(const QuadForm& f);
bool is_primitive(const QuadForm& f);
bool is_reduced(const QuadForm& f);

/// The unique reduced form equivalent to f. Throws InputError unless f is positive definite.
QuadForm reduce(const QuadForm& f);

QuadForm identity_form(const Integer& disc);
bool is_principal(const QuadForm& f);

QuadForm inverse(const QuadForm& f);

/// Dirichlet composition followed by reduction.
QuadForm compose(const QuadForm& f, const QuadForm& g);

/// f^k by square-and-multiply; f^0 is the principal form.
QuadForm power(const QuadForm& f, const Integer& k);

/// (q, B, C) with 0 <= B < 2q minimal, or nullopt when q is inert in the order of
/// discriminant disc. The returned form is not reduced.
std::optional<QuadForm> prime_form(const Discriminant& disc, const Integer& q);

/// All primitive reduced forms of the discriminant, in canonical order.
/// Throws ResourceCapError when |disc| > max_disc.
std::vector<QuadForm> enumerate_reduced(const Discriminant& disc, std::int64_t max_disc);

/// |enumerate_reduced(disc)| without materializing the forms.
std::int64_t count_reduced(const Discriminant& disc, std::int64_t max_disc);

}  // namespace quadclass
