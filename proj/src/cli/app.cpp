#include "quadclass/cli.hpp"

#include "jsonl_cache.hpp"
#include "quadclass/errors.hpp"
#include "quadclass/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <random>
#include <sstream>

namespace quadclass::cli {

namespace {

enum class OutputFormat { table, json, csv };

struct RunConfig {
    Config lib;
    OutputFormat output = OutputFormat::table;
    std::string cache_path;
    bool verify_cache = false;
};

template <typename R>
void emit(std::ostream& out, OutputFormat format, const Json& json, const R& table) {
    switch (format) {
    case OutputFormat::json:
        out << json.dump(2) << '\n';
        break;
    case OutputFormat::csv:
        out << render_csv(table);
        break;
    case OutputFormat::table:
        out << render_table(table);
        break;
    }
}

std::vector<Integer> parse_offsets(const std::string& text) {
    std::vector<Integer> out;
    if (text.empty())
        return out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(parse_integer(item));
    return out;
}

// Recomputes a deterministic sample of cache entries without the cache.
int verify_cache(JsonlCache& cache, const RunConfig& rc, std::ostream& err) {
    auto entries = cache.entries();
    std::mt19937_64 rng(rc.lib.seed);
    std::shuffle(entries.begin(), entries.end(), rng);
    if (entries.size() > 32)
        entries.resize(32);
    Config fresh = rc.lib;
    fresh.cache = nullptr;
    std::size_t mismatches = 0;
    for (const auto& [key, value] : entries) {
        std::string recomputed;
        if (key.rfind("factor:", 0) == 0) {
            recomputed = encode_factorization(factor(parse_integer(key.substr(7)), factor_options(fresh)));
        } else if (key.rfind("h:", 0) == 0) {
            const Discriminant disc = Discriminant::from(parse_integer(key.substr(2)));
            recomputed = to_string(class_number_forms(disc, fresh));
            if (value.find(';') != std::string::npos)
                recomputed += value.substr(value.find(';'));
        } else {
            continue;
        }
        if (recomputed != value) {
            ++mismatches;
            err << "cache mismatch for " << key << ": stored " << value << ", recomputed "
                << recomputed << '\n';
        }
    }
    err << "verified " << entries.size() << " cache entries, " << mismatches << " mismatches\n";
    return mismatches == 0 ? kOk : kInconsistency;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    bool json = false;
    bool csv = false;

    CLI::App app{"Class groups of imaginary quadratic fields and class-number divisibility checks",
                 "quadclass"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    app.add_flag("--json", json, "Emit one JSON document");
    app.add_flag("--csv", csv, "Emit CSV (header + rows)");
    app.add_option("--max-disc", rc.lib.max_disc, "Cap on |disc| for form enumeration")
        ->check(CLI::PositiveNumber);
    app.add_option("--factor-budget", rc.lib.factor_budget, "Pollard rho iteration budget")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", rc.lib.seed, "Seed for randomized subroutines");
    app.add_option("--threads", rc.lib.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--cache", rc.cache_path, "Result cache file (QUADCLASS_CACHE overrides)");
    app.add_flag("--verify-cache", rc.verify_cache, "Recompute sampled cache entries before running");

    std::function<int()> action;
    auto set_action = [&](CLI::App* sub, std::function<int()> fn) {
        sub->callback([&action, fn = std::move(fn)] { action = fn; });
    };

    std::string d_text, n_text, x_text, y_text, from_text, to_text, variant = "standard";
    std::string v_text, m_text, p_text, r_text, k_text, l_text, t_text, offsets_text, disc_text;
    std::size_t max_hits = 1;
    bool ascending = false;

    auto* classnum = app.add_subcommand("classnum", "Class number h of Q(sqrt(d)), d < 0");
    classnum->add_option("d,--d", d_text, "Field parameter d (use -- before negative values)")->required();
    set_action(classnum, [&] {
        const Integer d = parse_integer(d_text);
        const FieldClassNumber field = class_number_of_field(d, rc.lib);
        emit(out, rc.output, to_json(field, d), to_table(field, d));
        return kOk;
    });

    auto* squarefree = app.add_subcommand("squarefree", "Square-free decomposition n = d t^2");
    squarefree->add_option("n,--n", n_text, "Non-zero integer")->required();
    set_action(squarefree, [&] {
        const Integer n = parse_integer(n_text);
        if (n == 0)
            throw InputError("n must be non-zero");
        const SquarefreeDecomp sf = squarefree_part(factor_cached(n, rc.lib));
        emit(out, rc.output, to_json(sf, n), to_table(sf, n));
        return kOk;
    });

    auto* witness = app.add_subcommand("witness", "Order-n witness class for Q(sqrt(x^2 - y^n))");
    witness->add_option("--x", x_text)->required();
    witness->add_option("--y", y_text)->required();
    witness->add_option("--n", n_text)->required();
    set_action(witness, [&] {
        const WitnessReport report =
            verify_instance({parse_integer(x_text), parse_integer(y_text), parse_integer(n_text)}, rc.lib);
        emit(out, rc.output, to_json(report), to_table(report));
        return report.n_divides_h ? kOk : kVerifiedFalse;
    });

    auto* scan_cmd = app.add_subcommand("scan", "Witness scan over a range of y");
    scan_cmd->add_option("--x", x_text)->required();
    scan_cmd->add_option("--n", n_text)->required();
    scan_cmd->add_option("--from", from_text)->required();
    scan_cmd->add_option("--to", to_text)->required();
    scan_cmd->add_option("--variant", variant)->check(CLI::IsMember({"standard", "four"}));
    set_action(scan_cmd, [&] {
        const ScanVariant v = variant == "four" ? ScanVariant::four : ScanVariant::standard;
        const ScanResult result = scan(parse_integer(x_text), parse_integer(n_text),
                                       parse_integer(from_text), parse_integer(to_text), v, rc.lib);
        emit(out, rc.output, to_json(result, v), to_table(result, v));
        // Divisibility below the threshold is expected data; only structural failures count.
        for (const auto& rec : result.records) {
            if (rec.error_kind == "inconsistency")
                return kInconsistency;
            if (rec.witness && (!rec.witness->alpha_n_principal || rec.witness->cofactor_s == 0))
                return kVerifiedFalse;
        }
        return kOk;
    });

    auto* check = app.add_subcommand("check", "Unconditional divisibility checks");
    check->require_subcommand(1);
    auto* cohn = check->add_subcommand("cohn", "n | h(1 - V^n) for odd V, n >= 3");
    cohn->add_option("--V", v_text)->required();
    cohn->add_option("--n", n_text)->required();
    set_action(cohn, [&] {
        const Integer V = parse_integer(v_text), n = parse_integer(n_text);
        const CohnResult r = cohn_check(V, n, rc.lib);
        emit(out, rc.output, to_json(r, V, n), to_table(r, V, n));
        return r.divisible != r.is_exception ? kOk : kVerifiedFalse;
    });
    auto* hoque = check->add_subcommand("hoque", "3 | h(sf(-(3^m p^(2n) + r)))");
    hoque->add_option("--m", m_text)->required();
    hoque->add_option("--p", p_text)->required();
    hoque->add_option("--n", n_text)->required();
    hoque->add_option("--r", r_text)->required();
    set_action(hoque, [&] {
        const Integer p = parse_integer(p_text);
        const HoqueResult r =
            hoque_check(parse_integer(m_text), p, parse_integer(n_text), parse_integer(r_text), rc.lib);
        emit(out, rc.output, to_json(r), to_table(r));
        return r.divisible || divides(3, p) ? kOk : kVerifiedFalse;
    });

    auto* family = app.add_subcommand("family", "Build and verify a family of fields");
    family->require_subcommand(1);
    auto family_action = [&](CLI::App* sub, std::function<FamilyReport()> build) {
        set_action(sub, [&, build = std::move(build)] {
            const FamilyReport report = build();
            emit(out, rc.output, to_json(report), to_table(report));
            return report.all_asserted_pass ? kOk : kVerifiedFalse;
        });
    };
    auto* iizuka = family->add_subcommand("iizuka", "Square offsets 0, 1, 4, ..., m^2");
    iizuka->add_option("--n", n_text)->required();
    iizuka->add_option("--m", m_text)->required();
    iizuka->add_option("--l", l_text)->required();
    family_action(iizuka, [&] {
        return iizuka_family(parse_integer(n_text), parse_integer(m_text), parse_integer(l_text), rc.lib);
    });
    auto* cor5 = family->add_subcommand("cor5", "Pairs d, d + (2k - 1)");
    cor5->add_option("--n", n_text)->required();
    cor5->add_option("--k", k_text)->required();
    cor5->add_option("--l", l_text)->required();
    family_action(cor5, [&] {
        return cor5_family(parse_integer(n_text), parse_integer(k_text), parse_integer(l_text), rc.lib);
    });
    auto* cor7 = family->add_subcommand("cor7", "Triples d, d + 1, d + 3 with 3 | h");
    cor7->add_option("--p", p_text)->required();
    cor7->add_option("--k", k_text)->required();
    cor7->add_option("--t", t_text)->required();
    family_action(cor7, [&] {
        return cor7_family(parse_integer(p_text), parse_integer(k_text), parse_integer(t_text), rc.lib);
    });

    auto* search = app.add_subcommand("search", "Search for d with n | h(d + o) for all offsets o");
    search->add_option("--n", n_text)->required();
    search->add_option("--offsets", offsets_text, "Comma-separated non-negative offsets");
    search->add_option("--from", from_text)->required();
    search->add_option("--to", to_text)->required();
    search->add_option("--max-hits", max_hits);
    search->add_flag("--ascending", ascending, "Walk up from --from instead of down from --to");
    set_action(search, [&] {
        SearchOptions opts;
        opts.n = parse_integer(n_text);
        opts.offsets = parse_offsets(offsets_text);
        opts.d_from = parse_integer(from_text);
        opts.d_to = parse_integer(to_text);
        opts.max_hits = max_hits;
        opts.ascending = ascending;
        const auto hits = search_successive(opts, rc.lib);
        emit(out, rc.output, to_json(hits), to_table(hits));
        return kOk;
    });

    auto* group = app.add_subcommand("group", "Class group structure for a negative discriminant");
    group->add_option("disc,--disc", disc_text, "Discriminant (use -- before negative values)")->required();
    set_action(group, [&] {
        const ClassGroupInfo info = group_structure(Discriminant::from(parse_integer(disc_text)), rc.lib);
        emit(out, rc.output, to_json(info), to_table(info));
        return kOk;
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    if (json && csv) {
        err << "error: --json and --csv are mutually exclusive\n";
        return kInputError;
    }
    rc.output = json ? OutputFormat::json : (csv ? OutputFormat::csv : OutputFormat::table);
    if (const char* env = std::getenv("QUADCLASS_CACHE"); env != nullptr && *env != '\0')
        rc.cache_path = env;

    try {
        std::unique_ptr<JsonlCache> cache;
        if (!rc.cache_path.empty()) {
            cache = std::make_unique<JsonlCache>(rc.cache_path, err);
            rc.lib.cache = cache.get();
            if (rc.verify_cache) {
                const int code = verify_cache(*cache, rc, err);
                if (code != kOk || !action)
                    return code;
            }
        }
        if (!action) {
            out << app.help();
            return rc.verify_cache ? kInputError : kOk;
        }
        return action();
    } catch (const ResourceCapError& e) {
        err << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const InconsistencyError& e) {
        err << "inconsistency: " << e.what() << '\n';
        return kInconsistency;
    }
}

}  // namespace quadclass::cli
