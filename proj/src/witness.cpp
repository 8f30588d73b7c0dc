#include "quadclass/witness.hpp"

#include "quadclass/errors.hpp"

#include "parallel.hpp"

namespace quadclass {

namespace {

unsigned long small_exponent(const Integer& n) {
    if (!n.fits_ulong_p() || n > 1'000'000)
        throw InputError("exponent " + to_string(n) + " is too large");
    return n.get_ui();
}

Integer y_pow_n(const Instance& inst) { return pow_ui(inst.y, small_exponent(inst.n)); }

FourRecord verify_four(const Integer& x, const Integer& y, const Integer& n, const Config& config) {
    const Integer value = x * x - 4 * pow_ui(y, small_exponent(n));
    const SquarefreeDecomp sf = squarefree_part(factor_cached(value, config));
    const FieldClassNumber field = class_number_of_field(value, config);
    FourRecord r;
    r.d = -sf.d;
    r.t = sf.t;
    r.disc = field.disc;
    r.h = field.h;
    r.n_divides_h = divides(n, field.h);
    return r;
}

}  // namespace

void validate_instance(const Instance& inst) {
    if (inst.x < 1 || inst.y < 1)
        throw InputError("x and y must be positive integers");
    if (inst.n < 3 || floor_mod(inst.n, 2) == 0)
        throw InputError("n must be an odd integer >= 3, got " + to_string(inst.n));
    if (inst.x * inst.x >= y_pow_n(inst))
        throw InputError("x^2 < y^n is required for an imaginary field");
}

QuadForm alpha_form_unreduced(const Instance& inst, const Config& config) {
    validate_instance(inst);
    if (gcd(2 * inst.x, inst.y) != 1)
        throw InputError("gcd(2x, y) must be 1, got gcd(" + to_string(2 * inst.x) + ", " +
                         to_string(inst.y) + ") = " + to_string(Integer(gcd(2 * inst.x, inst.y))));
    const Integer& y = inst.y;
    const SquarefreeDecomp sf = squarefree_part(factor_cached(y_pow_n(inst) - inst.x * inst.x, config));
    const Integer& d = sf.d;
    const Integer disc = floor_mod(-d, 4) == 1 ? Integer(-d) : Integer(-4 * d);

    const auto t_inv = mod_inverse(sf.t, y);
    if (!t_inv)
        throw InconsistencyError("alpha_form: t = " + to_string(sf.t) + " not invertible mod y");
    // sqrt(-d) = beta modulo alpha, since x - t sqrt(-d) lies in alpha.
    const Integer beta = floor_mod(inst.x * *t_inv, y);
    if (!divides(y, beta * beta + d))
        throw InconsistencyError("alpha_form: beta^2 != -d mod y for " + to_string(inst.x) + "," +
                                 to_string(y) + "," + to_string(inst.n));

    // Odd disc: ideal (y, (-B + sqrt(disc))/2) with B = beta mod y, B odd.
    // Even disc: (-B + sqrt(disc))/2 = -B/2 + sqrt(-d), so B = 2 beta.
    Integer B;
    if (floor_mod(disc, 2) == 1)
        B = floor_mod(beta, 2) == 1 ? beta : Integer(beta + y);
    else
        B = 2 * beta;
    const Integer four_y = 4 * y;
    if (!divides(four_y, B * B - disc))
        throw InconsistencyError("alpha_form: B^2 != disc mod 4y");
    return {y, B, (B * B - disc) / four_y};
}

QuadForm alpha_form(const Instance& inst, const Config& config) {
    return reduce(alpha_form_unreduced(inst, config));
}

WitnessReport verify_instance(const Instance& inst, const Config& config) {
    WitnessReport r;
    r.instance = inst;
    r.alpha_form = alpha_form(inst, config);

    const Integer value = inst.x * inst.x - y_pow_n(inst);
    const SquarefreeDecomp sf = squarefree_part(factor_cached(value, config));
    r.d = -sf.d;
    r.t = sf.t;
    const FieldClassNumber field = class_number_of_field(value, config);
    r.disc = field.disc;
    r.h = field.h;
    r.alpha_n_principal = is_principal(power(r.alpha_form, inst.n));
    r.alpha_order = order_of_class(r.alpha_form, r.h);
    r.cofactor_s = divides(r.alpha_order, inst.n) ? Integer(inst.n / r.alpha_order) : Integer(0);
    r.n_divides_h = divides(inst.n, r.h);
    return r;
}

ScanResult scan(const Integer& x, const Integer& n, const Integer& y_from, const Integer& y_to,
                ScanVariant variant, const Config& config) {
    if (x < 1)
        throw InputError("scan: x must be positive");
    if (n < 3 || floor_mod(n, 2) == 0)
        throw InputError("scan: n must be an odd integer >= 3");
    const unsigned long exp = small_exponent(n);

    ScanResult result;
    for (Integer y = y_from; y <= y_to; ++y) {
        const Integer yn = pow_ui(y, exp);
        bool admissible;
        if (y < 1)
            admissible = false;
        else if (variant == ScanVariant::standard)
            admissible = gcd(2 * x, y) == 1 && x * x < yn;
        else
            admissible = gcd(x, y) == 1 && x * x < 4 * yn;
        if (admissible) {
            ScanRecord rec;
            rec.y = y;
            result.records.push_back(std::move(rec));
        } else {
            result.skipped.push_back(y);
        }
    }

    detail::parallel_for(result.records.size(), config.threads, [&](std::size_t i) {
        ScanRecord& rec = result.records[i];
        try {
            if (variant == ScanVariant::standard)
                rec.witness = verify_instance({x, rec.y, n}, config);
            else
                rec.four = verify_four(x, rec.y, n, config);
        } catch (const ResourceCapError& e) {
            rec.error = e.what();
            rec.error_kind = "resource_cap";
        } catch (const InconsistencyError& e) {
            rec.error = e.what();
            rec.error_kind = "inconsistency";
        } catch (const InputError& e) {
            rec.error = e.what();
            rec.error_kind = "input";
        }
    });
    return result;
}

}  // namespace quadclass
