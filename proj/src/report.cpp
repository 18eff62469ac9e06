#include "linkform/report.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace linkform::report {
namespace {

std::string cell(const std::optional<Int>& v) { return v ? to_string(*v) : std::string{}; }

nlohmann::json prime_power_json(const arith::PrimePower& pp) {
    return {{"prime", int_json(pp.prime)}, {"exponent", pp.exponent}};
}

}  // namespace

nlohmann::json int_json(Int x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return to_string(x);
}

Int int_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_string()) {
        if (const auto v = parse_int(j.get<std::string>())) return *v;
    }
    throw std::invalid_argument("expected an integer, got " + j.dump());
}

nlohmann::json params_json(const FamilyParams& p) {
    const RawParams raw = p.raw();
    nlohmann::json j;
    for (int i = 0; i < 6; ++i) j[std::string(param_name(i))] = raw[static_cast<std::size_t>(i)];
    return j;
}

nlohmann::json linking_json(const LinkingFormData& lf) {
    return {{"n", int_json(lf.n)},           {"h4_order", int_json(lf.h4_order)}, {"rho", int_json(lf.rho)},
            {"kappa", int_json(lf.kappa)},   {"e1", int_json(lf.cert.e1)},        {"e0", int_json(lf.cert.e0)},
            {"f1", int_json(lf.cert.f1)},    {"f0", int_json(lf.cert.f0)},        {"sign_ambiguous", lf.sign_ambiguous}};
}

nlohmann::json verdict_json(const Verdict& v, const std::optional<EgsWitness>& egs) {
    nlohmann::json j = {{"kind", std::string(to_string(v.kind))}, {"sign", v.sign}};
    if (v.lambda) j["lambda"] = int_json(*v.lambda);
    if (v.obstruction_plus) j["obstruction_plus"] = prime_power_json(*v.obstruction_plus);
    if (v.obstruction_minus) j["obstruction_minus"] = prime_power_json(*v.obstruction_minus);
    if (egs) j["egs_prime"] = int_json(egs->p);
    return j;
}

nlohmann::json classify_json(const FamilyParams& p, const H4Structure& h4, const BundleVerdict& bv) {
    nlohmann::json j;
    j["params"] = params_json(p);
    j["params_text"] = format_params(p);
    j["a0"] = int_json(bv.invariants.a0);
    j["b0"] = int_json(bv.invariants.b0);
    j["n"] = int_json(bv.invariants.n);
    j["h4_order"] = int_json(bv.invariants.h4_order);
    j["snf"] = {{"d1", int_json(h4.d1)}, {"d2", int_json(h4.d2)}};
    j["linking"] = bv.linking ? linking_json(*bv.linking) : nlohmann::json(nullptr);
    j["verdict"] = verdict_json(bv.verdict, bv.egs);
    j["homotopy_bundle"] = bv.homotopy_bundle ? nlohmann::json(*bv.homotopy_bundle) : nlohmann::json(nullptr);
    j["conclusion"] = bv.conclusion;
    return j;
}

std::string verdict_cell(const CensusRow& row) {
    if (row.error) return "error";
    if (row.n == 0) return std::string(to_string(VerdictKind::infinite_torsion));
    return row.verdict ? std::string(to_string(*row.verdict)) : std::string{};
}

std::string csv_row(const CensusRow& row) {
    std::ostringstream out;
    for (std::int64_t x : row.params.raw()) out << x << ',';
    out << to_string(row.n) << ',' << to_string(row.h4_order) << ',' << cell(row.rho) << ',' << cell(row.kappa) << ','
        << verdict_cell(row) << ',' << cell(row.egs_prime);
    return out.str();
}

nlohmann::json row_json(const CensusRow& row) {
    nlohmann::json j = params_json(row.params);
    const auto opt = [](const std::optional<Int>& v) { return v ? int_json(*v) : nlohmann::json(nullptr); };
    j["n"] = int_json(row.n);
    j["h4_order"] = int_json(row.h4_order);
    j["rho"] = opt(row.rho);
    j["kappa"] = opt(row.kappa);
    j["verdict"] = verdict_cell(row);
    j["egs_prime"] = opt(row.egs_prime);
    if (row.error) j["error"] = *row.error;
    return j;
}

}  // namespace linkform::report
