#pragma once

#include <string>

#include <json.hpp>

#include "linkform/classify.hpp"
#include "linkform/cohomology.hpp"
#include "linkform/search.hpp"

namespace linkform::report {

/// JSON number when the value fits in int64, decimal string otherwise.
nlohmann::json int_json(Int x);

/// Inverse of int_json; throws std::invalid_argument on other JSON types.
Int int_from_json(const nlohmann::json& j);

nlohmann::json params_json(const FamilyParams& p);
nlohmann::json linking_json(const LinkingFormData& lf);
nlohmann::json verdict_json(const Verdict& v, const std::optional<EgsWitness>& egs);

/// Full single-family report: invariants, SNF, linking data, verdict.
nlohmann::json classify_json(const FamilyParams& p, const H4Structure& h4, const BundleVerdict& bv);

inline constexpr const char* kCsvHeader = "a1,a2,a3,b1,b2,b3,n,h4_order,rho,kappa,verdict,egs_prime";

/// Empty cells for absent values; verdict is "error" for rows that hit a limit.
std::string csv_row(const CensusRow& row);
std::string verdict_cell(const CensusRow& row);

/// Same field names as the CSV columns, plus "error" when set.
nlohmann::json row_json(const CensusRow& row);

}  // namespace linkform::report
