#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linkform/arith.hpp"
#include "linkform/classify.hpp"
#include "linkform/family.hpp"

namespace linkform {

/// Smallest m in [1, p-2] with (m/p) = -1 and (m+1/p) = +1.
/// p must be a prime congruent to 1 mod 4.
Int find_m(Int p);

/// The unique signed value congruent to 1 mod 4 with the given odd magnitude.
std::int64_t sign_normalize(std::int64_t odd_magnitude);

/// a = (p, +-(2m-1), +-(2m+1)), b = (p, +-(2m+1), +-(2m+3)) with m = find_m(p)
/// and signs fixed by sign_normalize. n = -p^2 and the form is non-standard;
/// both are asserted.
FamilyParams construct_corollary(Int p);

enum class VerdictFilter { all, standard, nonstandard };

struct SearchSpec {
    std::int64_t bound = 1;                // |entry| <= bound
    std::optional<std::int64_t> pin_p;     // a1 = b1 = p
    VerdictFilter filter = VerdictFilter::all;
    bool require_nonzero = false;          // drop n == 0
    bool require_coprime = false;          // keep only gcd(a1, b1) == 1
    std::optional<Int> min_order;          // on |n|; n == 0 never matches a range
    std::optional<Int> max_order;
    bool dedup = true;
    unsigned threads = 1;
};

/// One classified family. rho/kappa are absent for n == 0; verdict is
/// absent for n == 0 or when `error` is set.
struct CensusRow {
    FamilyParams params;
    Int n;
    Int h4_order;
    std::optional<Int> rho;
    std::optional<Int> kappa;
    std::optional<VerdictKind> verdict;
    std::optional<Int> egs_prime;
    std::optional<std::string> error;
};

CensusRow classify_row(const FamilyParams& p, const arith::FactorOptions& options = {});

/// True when the row passes the search filters.
bool accepts(const SearchSpec& spec, const CensusRow& row);

/// Streams matching rows in lexicographic order of canonical_key.
void for_each_row(const SearchSpec& spec, const std::function<void(const CensusRow&)>& sink,
                  const arith::FactorOptions& options = {});

/// Collects the stream; partitions by a1 across spec.threads workers and
/// merges in order, so the result is independent of the thread count.
std::vector<CensusRow> enumerate(const SearchSpec& spec, const arith::FactorOptions& options = {});

/// Rows for construct_corollary(p), p prime, p == 1 mod 4, p <= primes_to.
std::vector<CensusRow> corollary_census(Int primes_to, const arith::FactorOptions& options = {});

struct TypeEntry {
    std::size_t count;
    FamilyParams representative;  // first row seen with this order
};

/// Non-standard rows grouped by |H^4|.
std::map<Int, TypeEntry> distinct_types_report(std::span<const CensusRow> rows);

}  // namespace linkform
