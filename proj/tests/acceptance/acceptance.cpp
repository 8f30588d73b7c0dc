// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "../oracles.hpp"
#include "quadclass/classgroup.hpp"
#include "quadclass/errors.hpp"
#include "quadclass/families.hpp"
#include "quadclass/intmath.hpp"
#include "quadclass/qform.hpp"
#include "quadclass/witness.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace quadclass;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

Verdict fail(std::string why) { return {false, std::move(why)}; }

std::string str(const Integer& v) { return v.get_str(); }

Integer field_disc(const Integer& value) {
    return fundamental_discriminant(squarefree_part(value).d);
}

Verdict dual_oracle_class_numbers() {
    std::size_t count = 0;
    for (long D = -3; D >= -20000; --D) {
        if (!oracle::is_fundamental(D))
            continue;
        const Discriminant disc = Discriminant::from(D);
        const Integer a = class_number_forms(disc);
        const Integer b = class_number_analytic(disc);
        if (a != b)
            return fail("D=" + std::to_string(D) + " forms " + str(a) + " analytic " + str(b));
        ++count;
    }
    return {true, std::to_string(count) + " fundamental discriminants agree"};
}

Verdict class_number_one() {
    const std::set<long> heegner{-3, -4, -7, -8, -11, -19, -43, -67, -163};
    std::set<long> found;
    for (long D = -3; D >= -200; --D) {
        if (!oracle::is_fundamental(D))
            continue;
        if (class_number_forms(Discriminant::from(D)) == 1)
            found.insert(D);
    }
    if (found != heegner)
        return fail("h = 1 set differs from the expected nine discriminants");
    return {true, "h = 1 exactly on the 9 expected discriminants"};
}

Verdict cohn_grid() {
    std::size_t count = 0;
    auto run = [&](long n, long v_max) -> std::optional<std::string> {
        for (long V = 3; V <= v_max; V += 2) {
            const CohnResult r = cohn_check(V, n);
            const bool exception = V == 3 && n == 5;
            if (r.divisible == exception || r.is_exception != exception)
                return "V=" + std::to_string(V) + " n=" + std::to_string(n) + " h=" + str(r.h);
            if (exception && r.h != 1)
                return "exception point (3,5) has h=" + str(r.h);
            ++count;
        }
        return std::nullopt;
    };
    for (auto [n, v] : {std::pair{3L, 49L}, {5L, 25L}, {7L, 9L}})
        if (auto err = run(n, v))
            return fail(*err);
    return {true, std::to_string(count) + " points, sole exception (3,5) with h = 1"};
}

Verdict hoque_grid() {
    std::size_t checked = 0;
    std::size_t skipped = 0;
    for (long m : {3L, 5L})
        for (long p : {5L, 7L, 11L})
            for (long n : {1L, 2L})
                for (long r : {-2L, 4L}) {
                    const Integer value = -(pow_ui(3, m) * pow_ui(p, 2 * n) + r);
                    if (abs_value(field_disc(value)) > 100'000'000) {
                        ++skipped;
                        continue;
                    }
                    const HoqueResult res = hoque_check(m, p, n, r);
                    if (!res.divisible)
                        return fail("m=" + std::to_string(m) + " p=" + std::to_string(p) + " n=" +
                                    std::to_string(n) + " r=" + std::to_string(r) + " h=" + str(res.h));
                    ++checked;
                }
    return {true, std::to_string(checked) + " instances divisible by 3, " + std::to_string(skipped) +
                      " above the |disc| bound"};
}

Verdict witness_exemplar() {
    const WitnessReport r = verify_instance({2, 3, 3});
    if (r.d != 23 || r.disc != -23 || r.h != 3 || !(r.alpha_form == QuadForm{2, 1, 3}) ||
        r.alpha_order != 3 || !r.alpha_n_principal || !is_principal(power(r.alpha_form, 3)))
        return fail("got d=" + str(r.d) + " disc=" + str(r.disc) + " h=" + str(r.h) + " alpha=" +
                    to_string(r.alpha_form) + " order=" + str(r.alpha_order));
    return {true, "d=23 disc=-23 h=3 alpha=(2,1,3) order 3"};
}

Verdict witness_suite() {
    std::size_t checked = 0;
    std::size_t skipped = 0;
    for (long x : {1L, 2L, 3L})
        for (long n : {3L, 5L})
            for (long y = 3; y <= 99; y += 2) {
                if (std::gcd(2 * x, y) != 1)
                    continue;
                const Integer yn = pow_ui(y, n);
                if (Integer(x * x) >= yn)
                    continue;
                if (abs_value(field_disc(x * x - yn)) > 100'000'000) {
                    ++skipped;
                    continue;
                }
                const WitnessReport r = verify_instance({x, y, n});
                const std::string tag =
                    "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(n) + ")";
                if (!is_principal(power(r.alpha_form, n)) || !r.alpha_n_principal)
                    return fail(tag + ": alpha^n not principal");
                if (!divides(r.alpha_order, n))
                    return fail(tag + ": order " + str(r.alpha_order) + " does not divide n");
                if (r.alpha_order == n && !divides(n, r.h))
                    return fail(tag + ": order n but n does not divide h=" + str(r.h));
                ++checked;
            }
    return {true, std::to_string(checked) + " instances, " + std::to_string(skipped) +
                      " above the |disc| bound"};
}

Verdict cor7_exemplar() {
    const FamilyReport r = cor7_family(5, 1, 1);
    if (r.base_d != -421874)
        return fail("base_d=" + str(r.base_d));
    bool saw3 = false;
    for (const auto& m : r.members) {
        if ((m.offset == 0 || m.offset == 1) && !(m.asserted && m.divisible))
            return fail("offset " + str(m.offset) + " h=" + str(m.h));
        saw3 = saw3 || m.offset == 3;
    }
    if (!saw3 || !r.all_asserted_pass)
        return fail("offset-3 member missing or asserted failure");
    std::ostringstream detail;
    detail << "d=-421874, h =";
    for (const auto& m : r.members)
        detail << ' ' << m.h;
    return {true, detail.str()};
}

Verdict successive_search() {
    SearchOptions opts;
    opts.n = 3;
    opts.offsets = {0, 1, 4};
    opts.d_from = -1'000'000;
    opts.d_to = -1;
    opts.max_hits = 10;
    const auto hits = search_successive(opts);
    if (hits.empty())
        return fail("no hit in range");
    Config fresh;
    fresh.cache = nullptr;
    for (const auto& hit : hits)
        for (const auto& m : hit.members) {
            const Integer value = hit.base_d + m.offset;
            const FieldClassNumber h = class_number_of_field(value, fresh);
            const Discriminant disc = Discriminant::from(h.disc);
            if (h.h != m.h || !divides(3, h.h) || class_number_analytic(disc) != h.h)
                return fail("hit d=" + str(hit.base_d) + " offset " + str(m.offset) + " fails re-verification");
        }
    return {true, std::to_string(hits.size()) + " hits re-verified, first d=" + str(hits.front().base_d)};
}

// f(p x + q y, r x + s y) with p s - q r = 1.
QuadForm transform(const QuadForm& f, long p, long q, long r, long s) {
    return {f.a * p * p + f.b * p * r + f.c * r * r,
            2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
            f.a * q * q + f.b * q * s + f.c * s * s};
}

QuadForm random_equivalent(const QuadForm& f, std::mt19937_64& rng) {
    long p = 1, q = 0, r = 0, s = 1;
    const int steps = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < steps; ++i) {
        if (rng() % 2) {
            const long k = static_cast<long>(rng() % 7) - 3;
            q += p * k;
            s += r * k;
        } else {
            const long np = q, nq = -p, nr = s, ns = -r;
            p = np;
            q = nq;
            r = nr;
            s = ns;
        }
    }
    return transform(f, p, q, r, s);
}

Verdict form_group_properties() {
    std::mt19937_64 rng(20240611);
    std::size_t samples = 0;
    for (long D : {-23L, -84L, -104L, -116L, -679L}) {
        const Discriminant disc = Discriminant::from(D);
        const auto forms = enumerate_reduced(disc, 100'000'000);
        const std::set<QuadForm> set(forms.begin(), forms.end());
        const QuadForm e = identity_form(Integer(D));
        const std::string tag = "D=" + std::to_string(D) + ": ";
        if (!set.count(e))
            return fail(tag + "identity not reduced");
        for (const auto& f : forms) {
            if (!(reduce(f) == f) || !(reduce(reduce(f)) == reduce(f)))
                return fail(tag + "reduce not idempotent at " + to_string(f));
            if (!(compose(f, e) == f) || !(compose(e, f) == f))
                return fail(tag + "identity law at " + to_string(f));
            if (!is_principal(compose(f, inverse(f))))
                return fail(tag + "inverse law at " + to_string(f));
            for (const auto& g : forms) {
                const QuadForm fg = compose(f, g);
                if (!set.count(fg))
                    return fail(tag + "closure at " + to_string(f) + "*" + to_string(g));
                if (!(fg == compose(g, f)))
                    return fail(tag + "commutativity at " + to_string(f) + "*" + to_string(g));
                for (const auto& k : forms)
                    if (!(compose(fg, k) == compose(f, compose(g, k))))
                        return fail(tag + "associativity");
            }
        }
        for (int i = 0; i < 100; ++i) {
            const auto& f = forms[rng() % forms.size()];
            const auto& g = forms[rng() % forms.size()];
            const QuadForm f2 = random_equivalent(f, rng);
            const QuadForm g2 = random_equivalent(g, rng);
            if (discriminant(f2) != D || discriminant(g2) != D || !(reduce(f2) == f))
                return fail(tag + "random equivalent left the class");
            if (!(compose(f2, g2) == compose(f, g)))
                return fail(tag + "composition depends on representatives");
            ++samples;
        }
    }
    return {true, "5 discriminants, " + std::to_string(samples) + " random representative pairs"};
}

std::pair<int, std::string> run_binary(const std::string& args) {
    const std::string cmd = std::string(QUADCLASS_BINARY) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe)
        return {-1, ""};
    std::string text;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        text.append(buf, n);
    return {::pclose(pipe), text};
}

Verdict determinism() {
    namespace fs = std::filesystem;
    const std::string cmd = "family cor7 --p 5 --k 1 --t 1 --json --seed 42";
    const fs::path cache = fs::temp_directory_path() / "quadclass_acceptance_cache.jsonl";
    fs::remove(cache);
    const auto a = run_binary(cmd);
    const auto b = run_binary(cmd);
    const auto cold = run_binary("--cache " + cache.string() + " " + cmd);
    const auto warm = run_binary("--cache " + cache.string() + " " + cmd);
    const bool cache_used = fs::exists(cache) && fs::file_size(cache) > 0;
    fs::remove(cache);
    if (a.first != 0 || a.second.empty())
        return fail("binary exited with status " + std::to_string(a.first));
    if (a.second != b.second)
        return fail("uncached runs differ");
    if (cold.second != a.second || warm.second != a.second)
        return fail("cached runs differ from uncached output");
    if (!cache_used)
        return fail("cache file was not written");
    return {true, "4 runs byte-identical (" + std::to_string(a.second.size()) + " bytes)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"dual-oracle class numbers, fundamental D in [-20000, -3]", dual_oracle_class_numbers},
        {"class number one discriminants down to -200", class_number_one},
        {"1 - V^n grid", cohn_grid},
        {"-(3^m p^2n + r) grid", hoque_grid},
        {"witness exemplar (2,3,3)", witness_exemplar},
        {"witness structural suite", witness_suite},
        {"triple family (5,1,1)", cor7_exemplar},
        {"successive-field search n=3 offsets 0,1,4 over [-10^6, -1]", successive_search},
        {"form-group property suite", form_group_properties},
        {"CLI determinism with and without cache", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu: %s -- %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
