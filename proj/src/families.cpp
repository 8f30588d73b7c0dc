#include "quadclass/families.hpp"

#include "quadclass/errors.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <exception>
#include <optional>

namespace quadclass {

namespace {

// Values wider than this cannot be factored within any sensible budget; reject before work.
constexpr std::size_t kMaxValueBits = 256;

void require_odd_at_least(const Integer& v, long lo, const char* name) {
    if (v < lo || floor_mod(v, 2) == 0)
        throw InputError(std::string(name) + " must be an odd integer >= " + std::to_string(lo) +
                         ", got " + to_string(v));
}

void require_at_least(const Integer& v, long lo, const char* name) {
    if (v < lo)
        throw InputError(std::string(name) + " must be >= " + std::to_string(lo) + ", got " +
                         to_string(v));
}

unsigned long small(const Integer& v, const char* name) {
    if (!v.fits_ulong_p() || v > 100'000)
        throw ResourceCapError(std::string(name) + " = " + to_string(v) + " is too large");
    return v.get_ui();
}

Integer factorial(unsigned long k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

// Bits of base^exp, estimated without computing the power.
void preflight(const Integer& base, const Integer& exp, const std::string& what) {
    const double bits = static_cast<double>(mpz_sizeinbase(base.get_mpz_t(), 2)) * exp.get_d();
    if (bits > static_cast<double>(kMaxValueBits) + 64)
        throw ResourceCapError(what + " has about " + std::to_string(static_cast<long>(bits)) +
                               " bits, beyond the supported size");
}

void fill_member(FamilyMember& member, const Integer& divisor, const Config& config) {
    if (mpz_sizeinbase(member.value.get_mpz_t(), 2) > kMaxValueBits)
        throw ResourceCapError("value " + to_string(member.value) + " is too large to factor");
    const FieldClassNumber field = class_number_of_field(member.value, config);
    member.d_sf = field.d_sf;
    member.disc = field.disc;
    member.h = field.h;
    member.divisible = divides(divisor, field.h);
}

void evaluate_members(FamilyReport& report, const Config& config) {
    // Errors are collected per member and the lowest offset is reported, independent of threads.
    std::vector<std::exception_ptr> errors(report.members.size());
    detail::parallel_for(report.members.size(), config.threads, [&](std::size_t i) {
        try {
            fill_member(report.members[i], report.divisor, config);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i])
            continue;
        const std::string where = "member at offset " + to_string(report.members[i].offset) +
                                  " (value " + to_string(report.members[i].value) + "): ";
        try {
            std::rethrow_exception(errors[i]);
        } catch (const ResourceCapError& e) {
            throw ResourceCapError(where + e.what());
        } catch (const InputError& e) {
            throw InputError(where + e.what());
        } catch (const InconsistencyError& e) {
            throw InconsistencyError(where + e.what());
        }
    }
    report.all_asserted_pass = std::all_of(report.members.begin(), report.members.end(),
                                           [](const FamilyMember& m) { return !m.asserted || m.divisible; });
}

FamilyMember make_member(const Integer& base, const Integer& offset, bool asserted, std::string note) {
    FamilyMember m;
    m.offset = offset;
    m.value = base + offset;
    m.asserted = asserted;
    m.note = std::move(note);
    if (m.value >= 0)
        throw InputError("member at offset " + to_string(offset) + " has value " + to_string(m.value) +
                         " >= 0 (not an imaginary field)");
    return m;
}

std::string conditional_note(const Integer& x, const Integer& y) {
    if (x < 1)
        return "not asserted: x = 0 is outside the x^2 - y^n setting";
    if (gcd(2 * x, y) != 1)
        return "not asserted: gcd(2x, y) != 1 for x = " + to_string(x);
    return "conditional: x^2 - y^n with x = " + to_string(x) + ", y = " + to_string(y) +
           "; divisibility only guaranteed above an ineffective bound on y";
}

}  // namespace

std::string to_string(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::iizuka_squares:
        return "iizuka_squares";
    case FamilyKind::cor5_pair:
        return "cor5_pair";
    case FamilyKind::cor7_triple:
        return "cor7_triple";
    case FamilyKind::custom_offsets:
        return "custom_offsets";
    }
    return "unknown";
}

CohnResult cohn_check(const Integer& V, const Integer& n, const Config& config) {
    require_odd_at_least(V, 3, "V");
    require_odd_at_least(n, 3, "n");
    preflight(V, n, "1 - V^n");
    CohnResult r;
    r.value = 1 - pow_ui(V, small(n, "n"));
    const FieldClassNumber field = class_number_of_field(r.value, config);
    r.d_sf = field.d_sf;
    r.disc = field.disc;
    r.h = field.h;
    r.divisible = divides(n, field.h);
    r.is_exception = V == 3 && n == 5;
    return r;
}

HoqueResult hoque_check(const Integer& m, const Integer& p, const Integer& n, const Integer& r,
                        const Config& config) {
    require_odd_at_least(m, 3, "m");
    require_odd_at_least(p, 3, "p");
    require_at_least(n, 1, "n");
    if (r != -2 && r != 4)
        throw InputError("r must be -2 or 4, got " + to_string(r));
    preflight(p, 2 * n + m, "3^m p^(2n)");
    HoqueResult out;
    out.value = -(pow_ui(3, small(m, "m")) * pow_ui(p, small(2 * n, "2n")) + r);
    const FieldClassNumber field = class_number_of_field(out.value, config);
    out.d_sf = field.d_sf;
    out.disc = field.disc;
    out.h = field.h;
    out.divisible = divides(3, field.h);
    if (divides(3, p))
        out.note = "p divisible by 3: outside the usual hypotheses, reported only";
    return out;
}

FamilyReport iizuka_family(const Integer& n, const Integer& m, const Integer& l, const Config& config) {
    require_odd_at_least(n, 3, "n");
    require_at_least(m, 1, "m");
    require_at_least(l, 1, "l");
    const Integer F = factorial(small(m + 1, "m + 1"));
    preflight(F, n * l * n, "base_d");

    FamilyReport report;
    report.kind = FamilyKind::iizuka_squares;
    report.parameters = {{"n", n}, {"m", m}, {"l", l}};
    report.divisor = n;
    const Integer V = pow_ui(F, small(l, "l"));
    const Integer y = pow_ui(V, small(n, "n")) - 1;
    report.parameters.emplace_back("y", y);
    report.base_d = pow_ui(1 - pow_ui(V, small(n, "n")), small(n, "n"));

    for (Integer x = 0; x <= m; ++x) {
        std::string note = x == 0
            ? "conditional: square-free part equals that of 1 - V^n with V = ((m+1)!)^l even, "
              "outside the odd-V unconditional result"
            : conditional_note(x, y);
        report.members.push_back(make_member(report.base_d, x * x, false, std::move(note)));
    }
    evaluate_members(report, config);
    return report;
}

FamilyReport cor5_family(const Integer& n, const Integer& k, const Integer& l, const Config& config) {
    require_odd_at_least(n, 3, "n");
    require_at_least(k, 1, "k");
    require_at_least(l, 1, "l");
    const Integer F = factorial(small(k, "k"));
    preflight(F, n * l, "base_d");

    FamilyReport report;
    report.kind = FamilyKind::cor5_pair;
    report.divisor = n;
    const Integer odd_m = 2 * k - 1;
    report.parameters = {{"n", n}, {"k", k}, {"l", l}, {"m", odd_m}};
    const Integer y = pow_ui(F, small(l, "l")) - 1;
    if (y < 2)
        throw InputError("k!^l - 1 must be at least 2, got " + to_string(y));
    report.parameters.emplace_back("y", y);
    report.base_d = (k - 1) * (k - 1) + pow_ui(-y, small(n, "n"));

    report.members.push_back(make_member(report.base_d, 0, false, conditional_note(k - 1, y)));
    report.members.push_back(make_member(report.base_d, odd_m, false, conditional_note(k, y)));
    evaluate_members(report, config);
    return report;
}

FamilyReport cor7_family(const Integer& p, const Integer& k, const Integer& t, const Config& config) {
    if (p <= 3 || !is_prime(p))
        throw InputError("p must be a prime > 3, got " + to_string(p));
    require_at_least(k, 1, "k");
    require_at_least(t, 1, "t");
    preflight(p, 6 * t + 2 * k, "base_d");

    FamilyReport report;
    report.kind = FamilyKind::cor7_triple;
    report.divisor = 3;
    report.parameters = {{"p", p}, {"k", k}, {"t", t}};
    const Integer V = pow_ui(3, small(k, "k")) * pow_ui(p, small(2 * t, "2t"));
    report.parameters.emplace_back("V", V);
    report.base_d = 1 - pow_ui(V, 3);

    report.members.push_back(make_member(report.base_d, 0, true,
                                         "unconditional: 3 | h(1 - V^3) for odd V > 3"));
    const bool odd_power = floor_mod(3 * k, 2) == 1;
    report.members.push_back(make_member(
        report.base_d, 1, odd_power,
        odd_power ? "unconditional: 3 | h(sf(-(3^(3k) p^(6t) - 2))) with 3k odd"
                  : "not asserted: 3k is even, outside the odd-exponent unconditional result"));
    report.members.push_back(make_member(report.base_d, 3, false, conditional_note(2, V)));
    evaluate_members(report, config);
    return report;
}

std::vector<FamilyReport> search_successive(const SearchOptions& options, const Config& config) {
    if (options.n < 2)
        throw InputError("search: n must be >= 2");
    if (options.d_from > options.d_to)
        throw InputError("search: empty or reversed d range");
    for (const Integer& o : options.offsets)
        if (o < 0)
            throw InputError("search: offsets must be non-negative");
    const Integer max_offset =
        options.offsets.empty() ? Integer(0)
                                : *std::max_element(options.offsets.begin(), options.offsets.end());
    // d values whose shifted members would leave the imaginary range are dropped from the top.
    const Integer d_to = std::min(options.d_to, Integer(-1 - max_offset));
    if (d_to < options.d_from)
        throw InputError("search: no d in range keeps every d + offset negative");

    std::vector<FamilyReport> hits;
    if (options.max_hits == 0)
        return hits;

    const std::size_t block = 64 * std::max(1u, config.threads);
    const Integer span = d_to - options.d_from + 1;
    Integer done = 0;
    while (done < span && hits.size() < options.max_hits) {
        const Integer left = span - done;
        const std::size_t count = left < Integer(static_cast<unsigned long>(block)) ? left.get_ui() : block;
        std::vector<Integer> ds(count);
        for (std::size_t i = 0; i < count; ++i)
            ds[i] = options.ascending ? Integer(options.d_from + done + i)
                                      : Integer(d_to - done - i);
        std::vector<std::optional<FamilyReport>> found(count);
        detail::parallel_for(count, config.threads, [&](std::size_t i) {
            FamilyReport report;
            report.kind = FamilyKind::custom_offsets;
            report.divisor = options.n;
            report.base_d = ds[i];
            report.parameters = {{"n", options.n}};
            for (const Integer& o : options.offsets) {
                FamilyMember m = make_member(ds[i], o, false, "empirical search hit");
                fill_member(m, options.n, config);
                if (!m.divisible)
                    return;
                report.members.push_back(std::move(m));
            }
            found[i] = std::move(report);
        });
        for (auto& f : found) {
            if (f && hits.size() < options.max_hits)
                hits.push_back(std::move(*f));
        }
        done += count;
    }
    return hits;
}

}  // namespace quadclass
