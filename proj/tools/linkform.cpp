// Command-line front end: classify, construct, search, verify.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 resource limit, 4 I/O error.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invariants.hpp"
#include "linkform/arith.hpp"
#include "linkform/classify.hpp"
#include "linkform/cohomology.hpp"
#include "linkform/errors.hpp"
#include "linkform/family.hpp"
#include "linkform/report.hpp"
#include "linkform/search.hpp"
#include "sampling.hpp"

using namespace linkform;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInvalidInput = 2, kResourceLimit = 3, kIoError = 4 };

enum class Format { table, json, csv };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, Format> kFormats = {{"table", Format::table}, {"json", Format::json}, {"csv", Format::csv}};

// LINKFORM_FACTOR_LIMIT: decimal magnitude guard, or "2^k".
arith::FactorOptions factor_options_from_env() {
    arith::FactorOptions opts;
    const char* env = std::getenv("LINKFORM_FACTOR_LIMIT");
    if (env == nullptr || *env == '\0') return opts;
    const std::string text(env);
    if (text.rfind("2^", 0) == 0) {
        const auto k = parse_uint(text.substr(2));
        if (!k || *k > 128) throw UsageError("LINKFORM_FACTOR_LIMIT: bad exponent in '" + text + "'");
        opts.magnitude_guard = *k == 128 ? kUIntMax : static_cast<UInt>(1) << static_cast<int>(*k);
        return opts;
    }
    const auto v = parse_uint(text);
    if (!v) throw UsageError("LINKFORM_FACTOR_LIMIT: not a decimal integer: '" + text + "'");
    opts.magnitude_guard = *v;
    return opts;
}

std::string prime_power_text(const std::optional<arith::PrimePower>& pp) {
    if (!pp) return "-";
    return to_string(pp->prime) + "^" + std::to_string(pp->exponent);
}

void print_classification_table(std::ostream& out, const FamilyParams& p, const H4Structure& h4, const BundleVerdict& bv) {
    const auto& inv = bv.invariants;
    out << "params      " << format_params(p) << "  (valid)\n";
    out << "a0, b0      " << to_string(inv.a0) << ", " << to_string(inv.b0) << '\n';
    out << "n           " << to_string(inv.n) << '\n';
    out << "|H^4|       " << (inv.h4_order == 0 ? std::string("infinite (Z)") : to_string(inv.h4_order)) << '\n';
    out << "SNF         (" << to_string(h4.d1) << ", " << to_string(h4.d2) << ")  cyclic\n";
    if (bv.linking) {
        const auto& lf = *bv.linking;
        out << "Bezout      e1 = " << to_string(lf.cert.e1) << ", e0 = " << to_string(lf.cert.e0)
            << "; f1 = " << to_string(lf.cert.f1) << ", f0 = " << to_string(lf.cert.f0) << '\n';
        out << "rho, kappa  " << to_string(lf.rho) << ", " << to_string(lf.kappa) << "  (mod " << to_string(lf.h4_order)
            << ", up to sign)\n";
    }
    const Verdict& v = bv.verdict;
    out << "verdict     " << to_string(v.kind);
    if (v.kind == VerdictKind::standard)
        out << "  lambda = " << to_string(*v.lambda) << ", lambda^2 = " << (v.sign > 0 ? "+" : "-") << "rho";
    if (v.kind == VerdictKind::nonstandard)
        out << "  obstructions: +rho " << prime_power_text(v.obstruction_plus) << ", -rho "
            << prime_power_text(v.obstruction_minus);
    out << '\n';
    out << "fast check  " << (bv.egs ? "p = " + to_string(bv.egs->p) : std::string("no witness")) << '\n';
    out << "conclusion  " << bv.conclusion << '\n';
}

void emit_classification(const FamilyParams& p, Format format, const arith::FactorOptions& opts,
                         nlohmann::json* wrapper = nullptr) {
    const H4Structure h4 = h4_structure(p);
    const BundleVerdict bv = bundle_verdict(p, opts);
    if (format == Format::table) {
        print_classification_table(std::cout, p, h4, bv);
        return;
    }
    if (format == Format::csv) {
        std::cout << report::kCsvHeader << '\n' << report::csv_row(classify_row(p, opts)) << '\n';
        return;
    }
    nlohmann::json j = report::classify_json(p, h4, bv);
    if (wrapper) {
        (*wrapper)["report"] = std::move(j);
        std::cout << wrapper->dump(2) << '\n';
    } else {
        std::cout << j.dump(2) << '\n';
    }
}

int report_invalid(const InvalidParameters& e, Format format) {
    if (format == Format::json) {
        nlohmann::json j = {{"valid", false}, {"violations", nlohmann::json::array()}};
        for (const auto& v : e.violations()) j["violations"].push_back(describe(v));
        std::cout << j.dump(2) << '\n';
    }
    std::cerr << "invalid parameters:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << describe(v) << '\n';
    return kInvalidInput;
}

int cmd_classify(const std::string& text, Format format, const arith::FactorOptions& opts) {
    try {
        emit_classification(validate(parse_params(text)), format, opts);
    } catch (const ParseError& e) {
        std::cerr << text << '\n' << std::string(e.position(), ' ') << "^\n" << e.what() << '\n';
        return kInvalidInput;
    } catch (const InvalidParameters& e) {
        return report_invalid(e, format);
    }
    return kOk;
}

int cmd_construct(const std::string& p_text, Format format, const arith::FactorOptions& opts) {
    const auto p = parse_int(p_text);
    if (!p) {
        std::cerr << "construct: '" << p_text << "' is not an integer\n";
        return kInvalidInput;
    }
    Int m;
    try {
        m = find_m(*p);
    } catch (const std::invalid_argument& e) {
        std::cerr << "construct: " << e.what() << '\n';
        return kInvalidInput;
    }
    FamilyParams family = [&] {
        try {
            return construct_corollary(*p);
        } catch (const InvalidParameters& e) {
            throw UsageError(std::string("construct: ") + e.what());
        }
    }();
    if (format == Format::json) {
        nlohmann::json wrapper = {{"p", report::int_json(*p)}, {"m", report::int_json(m)}};
        emit_classification(family, format, opts, &wrapper);
        return kOk;
    }
    if (format == Format::table) std::cout << "p = " << to_string(*p) << ", m = " << to_string(m) << '\n';
    emit_classification(family, format, opts);
    return kOk;
}

struct SearchOptions {
    SearchSpec spec;
    std::string filter = "all";
    std::optional<std::int64_t> primes_to;
    bool corollary = false;
    std::string min_order, max_order;
    std::string out_path;
};

class RowWriter {
public:
    RowWriter(std::ostream& out, Format format) : out_(out), format_(format) {
        if (format_ == Format::csv) out_ << report::kCsvHeader << '\n';
        if (format_ == Format::table)
            out_ << std::left << std::setw(28) << "params" << std::right << std::setw(12) << "n" << std::setw(10) << "rho"
                 << std::setw(10) << "kappa" << "  " << std::left << std::setw(12) << "verdict" << "egs\n";
    }

    void write(const CensusRow& r) {
        if (format_ == Format::csv) {
            out_ << report::csv_row(r) << '\n';
        } else if (format_ == Format::json) {
            out_ << report::row_json(r).dump() << '\n';
        } else {
            const auto cell = [](const std::optional<Int>& v) { return v ? to_string(*v) : std::string("-"); };
            out_ << std::left << std::setw(28) << format_params(r.params) << std::right << std::setw(12) << to_string(r.n)
                 << std::setw(10) << cell(r.rho) << std::setw(10) << cell(r.kappa) << "  " << std::left << std::setw(12)
                 << report::verdict_cell(r) << cell(r.egs_prime) << '\n';
        }
        if (!out_) throw IoError("write failed");
    }

private:
    std::ostream& out_;
    Format format_;
};

int cmd_search(SearchOptions o, Format format, const arith::FactorOptions& opts) {
    static const std::map<std::string, VerdictFilter> filters = {
        {"all", VerdictFilter::all}, {"standard", VerdictFilter::standard}, {"nonstandard", VerdictFilter::nonstandard}};
    o.spec.filter = filters.at(o.filter);
    if (!o.min_order.empty()) {
        const auto v = parse_int(o.min_order);
        if (!v) throw UsageError("--min-order: not an integer");
        o.spec.min_order = *v;
    }
    if (!o.max_order.empty()) {
        const auto v = parse_int(o.max_order);
        if (!v) throw UsageError("--max-order: not an integer");
        o.spec.max_order = *v;
    }
    if (o.corollary != o.primes_to.has_value()) throw UsageError("--corollary and --primes-to must be given together");
    if (o.spec.bound < 1) throw UsageError("--bound must be at least 1");

    // A census file is CSV unless JSON Lines is requested.
    const Format row_format = (!o.out_path.empty() && format == Format::table) ? Format::csv : format;
    std::ofstream file;
    if (!o.out_path.empty()) {
        file.open(o.out_path);
        if (!file) throw IoError("cannot open '" + o.out_path + "' for writing");
    }
    std::ostream& rows_out = o.out_path.empty() ? std::cout : file;
    std::ostream& summary_out = o.out_path.empty() ? std::cerr : std::cout;

    RowWriter writer(rows_out, row_format);
    std::vector<CensusRow> nonstandard;
    std::size_t count = 0, errors = 0;
    const auto sink = [&](const CensusRow& r) {
        writer.write(r);
        ++count;
        errors += r.error ? 1 : 0;
        if (r.verdict == VerdictKind::nonstandard) nonstandard.push_back(r);
    };

    if (o.corollary) {
        for (const auto& r : corollary_census(*o.primes_to, opts))
            if (accepts(o.spec, r)) sink(r);
    } else if (o.spec.threads > 1) {
        for (const auto& r : enumerate(o.spec, opts)) sink(r);
    } else {
        for_each_row(o.spec, sink, opts);
    }
    rows_out.flush();
    if (!rows_out) throw IoError("write failed");

    const auto types = distinct_types_report(nonstandard);
    summary_out << "rows: " << count << ", errors: " << errors << ", non-standard: " << nonstandard.size()
                << ", distinct |H^4| among non-standard: " << types.size() << '\n';
    for (const auto& [order, entry] : types)
        summary_out << "  |H^4| = " << to_string(order) << ": " << entry.count << " (e.g. "
                    << format_params(entry.representative) << ")\n";
    return kOk;
}

using invariants::Failure;

struct CheckStat {
    const char* name;
    Failure (*run)(const FamilyParams&);
    std::size_t passed = 0;
};

Failure cohomology_check(const FamilyParams& p) { return invariants::cohomology_cross_check(p); }

int cmd_verify(std::uint64_t seed, std::int64_t samples, std::int64_t bound) {
    if (samples < 1) throw UsageError("verify: --samples must be at least 1");
    if (bound < 1 || bound > kMaxParamMagnitude) throw UsageError("verify: --bound out of range");
    std::cout << "verify seed=" << seed << " samples=" << samples << " bound=" << bound << '\n';

    std::vector<CheckStat> checks = {
        {"linking identities", invariants::linking_identities},
        {"coprime implies standard", invariants::coprime_is_standard},
        {"verdict soundness", invariants::verdict_soundness},
        {"cohomology cross-check", cohomology_check},
        {"oracle equivalence", invariants::oracle_equivalence},
    };

    struct Counterexample {
        std::string check;
        std::string params;
        std::string message;
        std::int64_t size;
    };
    std::optional<Counterexample> smallest;
    std::size_t failures = 0;

    const auto record = [&](const std::string& check, const FamilyParams& p, const std::string& message) {
        ++failures;
        std::int64_t size = 0;
        for (std::int64_t x : p.raw()) size += x < 0 ? -x : x;
        if (!smallest || size < smallest->size) smallest = Counterexample{check, format_params(p), message, size};
    };

    std::mt19937_64 rng(seed);
    for (std::int64_t i = 0; i < samples; ++i) {
        const FamilyParams p = sampling::random_family(rng, bound);
        for (auto& c : checks) {
            Failure f;
            try {
                f = c.run(p);
            } catch (const std::exception& e) {
                f = std::string("threw: ") + e.what();
            }
            if (f)
                record(c.name, p, *f);
            else
                ++c.passed;
        }
    }
    std::size_t corollary_ok = 0, corollary_total = 0;
    for (Int q = 5; q <= 97; q += 4) {
        if (!arith::is_prime(static_cast<UInt>(q))) continue;
        ++corollary_total;
        const FamilyParams p = construct_corollary(q);
        if (auto f = invariants::verdict_soundness(p)) {
            record("corollary soundness", p, *f);
            continue;
        }
        const auto bv = bundle_verdict(p);
        if (!bv.egs || bv.egs->p != q || bv.verdict.kind != VerdictKind::nonstandard)
            record("corollary soundness", p, "fast witness missing or verdict not non-standard");
        else
            ++corollary_ok;
    }

    for (const auto& c : checks) std::cout << "  " << std::left << std::setw(28) << c.name << c.passed << '/' << samples << '\n';
    std::cout << "  " << std::left << std::setw(28) << "corollary soundness" << corollary_ok << '/' << corollary_total << '\n';
    if (smallest) {
        std::cout << "FAIL: " << failures << " violations; minimal counterexample\n"
                  << "  check:  " << smallest->check << "\n  params: " << smallest->params
                  << "\n  reason: " << smallest->message << '\n';
        return kVerifyFailed;
    }
    std::cout << "OK\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linking-form classifier for the 2-connected 7-manifolds M(a,b)"};
    app.require_subcommand(1);

    Format format = Format::table;
    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    };

    std::string params_text;
    auto* classify = app.add_subcommand("classify", "Classify one family given as \"a1,a2,a3;b1,b2,b3\"");
    classify->add_option("params", params_text, "Parameters a1,a2,a3;b1,b2,b3")->required();
    add_format(classify);

    std::string p_text;
    auto* construct = app.add_subcommand("construct", "Build and classify the non-standard family for a prime p = 1 mod 4");
    construct->add_option("p", p_text, "Prime congruent to 1 mod 4")->required();
    add_format(construct);

    SearchOptions search_opts;
    std::int64_t pin_p = 0;
    bool no_dedup = false;
    auto* search = app.add_subcommand("search", "Enumerate and classify families; write a census");
    search->add_option("--bound", search_opts.spec.bound, "Bound on |entries|")->default_val(1);
    search->add_option("--pin-p", pin_p, "Pin a1 = b1 = P");
    search->add_option("--filter", search_opts.filter, "Verdict filter")
        ->check(CLI::IsMember({"all", "standard", "nonstandard"}))
        ->default_val("all");
    search->add_option("--primes-to", search_opts.primes_to, "With --corollary: primes up to N");
    search->add_flag("--corollary", search_opts.corollary, "Census of constructed non-standard families");
    search->add_flag("--nonzero", search_opts.spec.require_nonzero, "Drop families with n = 0");
    search->add_flag("--coprime", search_opts.spec.require_coprime, "Keep only gcd(a1, b1) = 1");
    search->add_option("--min-order", search_opts.min_order, "Minimum |H^4|");
    search->add_option("--max-order", search_opts.max_order, "Maximum |H^4|");
    search->add_option("--threads", search_opts.spec.threads, "Worker threads (output order is unaffected)")->default_val(1);
    search->add_flag("--no-dedup", no_dedup, "Keep rows with equal canonical form");
    search->add_option("--out", search_opts.out_path, "Census output path");
    add_format(search);

    std::uint64_t seed = 42;
    std::int64_t samples = 1000;
    std::int64_t verify_bound = 401;
    auto* verify = app.add_subcommand("verify", "Run the invariant suite on seeded random families");
    verify->add_option("--seed", seed, "Random seed")->default_val(42);
    verify->add_option("--samples", samples, "Number of random families")->default_val(1000);
    verify->add_option("--bound", verify_bound, "Bound on |entries|")->default_val(401);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    try {
        const arith::FactorOptions opts = factor_options_from_env();
        if (*classify) return cmd_classify(params_text, format, opts);
        if (*construct) return cmd_construct(p_text, format, opts);
        if (*search) {
            if (search->count("--pin-p") > 0) search_opts.spec.pin_p = pin_p;
            search_opts.spec.dedup = !no_dedup;
            return cmd_search(search_opts, format, opts);
        }
        if (*verify) return cmd_verify(seed, samples, verify_bound);
    } catch (const ResourceExceeded& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kResourceLimit;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const UsageError& e) {
        std::cerr << e.what() << '\n';
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kInvalidInput;
    }
    return kInvalidInput;
}
