#include "linkform/search.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "linkform/errors.hpp"
#include "linkform/linking.hpp"

namespace linkform {
namespace {

using arith::SymbolValue;

// Values congruent to 1 mod 4 with |x| <= bound, ascending.
std::vector<std::int64_t> admissible_values(std::int64_t bound) {
    std::vector<std::int64_t> out;
    for (std::int64_t q = 1; q <= bound; q += 2) out.push_back(sign_normalize(q));
    std::sort(out.begin(), out.end());
    return out;
}

// (x2, x3) pairs free with respect to x1, ordered by (x2^2, x3^2).
std::vector<std::pair<std::int64_t, std::int64_t>> free_pairs(std::int64_t x1, std::int64_t bound) {
    std::vector<std::int64_t> by_square;
    for (std::int64_t q = 1; q <= bound; q += 2) by_square.push_back(sign_normalize(q));
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t x2 : by_square)
        for (std::int64_t x3 : by_square)
            if (arith::gcd(x1, Int{x2} + x3) == 1 && arith::gcd(x1, Int{x2} - x3) == 1) out.emplace_back(x2, x3);
    return out;
}

std::vector<std::int64_t> first_entries(const SearchSpec& spec) {
    if (spec.pin_p) return {*spec.pin_p};
    return admissible_values(spec.bound);
}

// Enumerates one a1 partition in canonical order.
void run_partition(const SearchSpec& spec, std::int64_t a1, const arith::FactorOptions& options,
                   const std::function<void(const CensusRow&)>& sink) {
    if (((a1 % 4) + 4) % 4 != 1) return;
    const auto a_pairs = free_pairs(a1, spec.bound);
    const auto b_firsts = first_entries(spec);
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> b_pairs;
    for (std::int64_t b1 : b_firsts) b_pairs.push_back(free_pairs(b1, spec.bound));

    std::optional<CanonicalKey> previous;
    for (const auto& [a2, a3] : a_pairs) {
        for (std::size_t i = 0; i < b_firsts.size(); ++i) {
            const std::int64_t b1 = b_firsts[i];
            if (((b1 % 4) + 4) % 4 != 1) continue;
            if (spec.require_coprime && arith::gcd(a1, b1) != 1) continue;
            for (const auto& [b2, b3] : b_pairs[i]) {
                const FamilyParams p = validate({a1, a2, a3, b1, b2, b3});
                if (spec.dedup) {
                    const CanonicalKey key = canonical_key(p);
                    if (previous && *previous == key) continue;
                    previous = key;
                }
                const CensusRow row = classify_row(p, options);
                if (accepts(spec, row)) sink(row);
            }
        }
    }
}

void check_spec(const SearchSpec& spec) {
    if (spec.bound < 1) throw std::invalid_argument("search bound must be at least 1");
    if (spec.bound > kMaxParamMagnitude) throw std::invalid_argument("search bound exceeds the parameter range");
    if (spec.pin_p && (*spec.pin_p > kMaxParamMagnitude || *spec.pin_p < -kMaxParamMagnitude))
        throw std::invalid_argument("pinned p exceeds the parameter range");
}

}  // namespace

Int find_m(Int p) {
    if (p < 5 || p % 4 != 1 || !arith::is_prime(static_cast<UInt>(p)))
        throw std::invalid_argument("find_m: " + to_string(p) + " is not a prime congruent to 1 mod 4");
    for (Int m = 1; m <= p - 2; ++m) {
        if (arith::jacobi(m, p) == SymbolValue::minus_one && arith::jacobi(m + 1, p) == SymbolValue::plus_one) return m;
    }
    throw std::logic_error("find_m: no consecutive non-square/square pair below " + to_string(p));
}

std::int64_t sign_normalize(std::int64_t odd_magnitude) {
    if (odd_magnitude <= 0 || odd_magnitude % 2 == 0) throw std::invalid_argument("sign_normalize: need a positive odd value");
    return odd_magnitude % 4 == 1 ? odd_magnitude : -odd_magnitude;
}

FamilyParams construct_corollary(Int p) {
    const Int m = find_m(p);
    if (p > kMaxParamMagnitude) throw std::invalid_argument("construct_corollary: p exceeds the parameter range");
    const auto pi = static_cast<std::int64_t>(p);
    const auto mi = static_cast<std::int64_t>(m);
    const FamilyParams params = validate({pi, sign_normalize(2 * mi - 1), sign_normalize(2 * mi + 1), pi,
                                          sign_normalize(2 * mi + 1), sign_normalize(2 * mi + 3)});

    const ManifoldInvariants inv = derived(params);
    const auto egs = egs_fast_check(params);
    if (inv.n != -p * p || inv.a0 != -m || inv.b0 != -(m + 1) || !egs || egs->p != p ||
        bundle_verdict(params).verdict.kind != VerdictKind::nonstandard)
        throw std::logic_error("construct_corollary: postcondition failed for p = " + to_string(p));
    return params;
}

CensusRow classify_row(const FamilyParams& p, const arith::FactorOptions& options) {
    const ManifoldInvariants inv = derived(p);
    CensusRow row{p, inv.n, inv.h4_order, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    if (inv.n == 0) return row;
    try {
        const BundleVerdict bv = bundle_verdict(p, options);
        row.rho = bv.linking->rho;
        row.kappa = bv.linking->kappa;
        row.verdict = bv.verdict.kind;
        if (bv.egs) row.egs_prime = bv.egs->p;
    } catch (const ResourceExceeded& e) {
        const LinkingFormData lf = linking_form(p);
        row.rho = lf.rho;
        row.kappa = lf.kappa;
        row.error = e.what();
    }
    return row;
}

bool accepts(const SearchSpec& spec, const CensusRow& row) {
    if (spec.require_nonzero && row.n == 0) return false;
    if (spec.require_coprime && arith::gcd(row.params.a().x1, row.params.b().x1) != 1) return false;
    if ((spec.min_order || spec.max_order) && row.h4_order == 0) return false;
    if (spec.min_order && row.h4_order < *spec.min_order) return false;
    if (spec.max_order && row.h4_order > *spec.max_order) return false;
    if (row.error) return true;  // never dropped silently
    switch (spec.filter) {
        case VerdictFilter::all: return true;
        case VerdictFilter::standard:
            return row.verdict == VerdictKind::standard || row.verdict == VerdictKind::trivial_torsion;
        case VerdictFilter::nonstandard: return row.verdict == VerdictKind::nonstandard;
    }
    return false;
}

void for_each_row(const SearchSpec& spec, const std::function<void(const CensusRow&)>& sink,
                  const arith::FactorOptions& options) {
    check_spec(spec);
    for (std::int64_t a1 : first_entries(spec)) run_partition(spec, a1, options, sink);
}

std::vector<CensusRow> enumerate(const SearchSpec& spec, const arith::FactorOptions& options) {
    check_spec(spec);
    const auto partitions = first_entries(spec);
    std::vector<std::vector<CensusRow>> results(partitions.size());
    const std::size_t workers = std::max(1u, spec.threads);
    for (std::size_t start = 0; start < partitions.size(); start += workers) {
        std::vector<std::future<void>> jobs;
        for (std::size_t i = start; i < std::min(partitions.size(), start + workers); ++i) {
            jobs.push_back(std::async(std::launch::async, [&, i] {
                run_partition(spec, partitions[i], options, [&](const CensusRow& r) { results[i].push_back(r); });
            }));
        }
        for (auto& job : jobs) job.get();
    }
    std::vector<CensusRow> out;
    for (auto& part : results) std::move(part.begin(), part.end(), std::back_inserter(out));
    return out;
}

std::vector<CensusRow> corollary_census(Int primes_to, const arith::FactorOptions& options) {
    std::vector<CensusRow> rows;
    for (Int p = 5; p <= primes_to; p += 4) {
        if (!arith::is_prime(static_cast<UInt>(p))) continue;
        rows.push_back(classify_row(construct_corollary(p), options));
    }
    return rows;
}

std::map<Int, TypeEntry> distinct_types_report(std::span<const CensusRow> rows) {
    std::map<Int, TypeEntry> out;
    for (const CensusRow& row : rows) {
        if (row.verdict != VerdictKind::nonstandard) continue;
        auto it = out.find(row.h4_order);
        if (it == out.end())
            out.emplace(row.h4_order, TypeEntry{1, row.params});
        else
            ++it->second.count;
    }
    return out;
}

}  // namespace linkform
