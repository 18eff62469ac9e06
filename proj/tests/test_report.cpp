#include <random>

#include "linkform/report.hpp"
#include "test_util.hpp"

using namespace linkform;
using linkform::testing::random_family;

namespace {

nlohmann::json full_report(const FamilyParams& p) {
    return report::classify_json(p, h4_structure(p), bundle_verdict(p));
}

}  // namespace

TEST_CASE("int_json switches to strings above int64") {
    CHECK(report::int_json(-25) == nlohmann::json(-25));
    const Int big = Int{1} << 80;
    CHECK(report::int_json(big).is_string());
    CHECK(report::int_from_json(report::int_json(big)) == big);
    CHECK(report::int_from_json(report::int_json(-big)) == -big);
    CHECK_THROWS(report::int_from_json(nlohmann::json(1.5)));
}

TEST_CASE("classify report for the p = 5 family") {
    const auto j = full_report(validate({5, 5, -7, 5, -7, 9}));
    CHECK(j["params_text"] == "5,5,-7;5,-7,9");
    CHECK(j["n"] == -25);
    CHECK(j["h4_order"] == 25);
    CHECK(j["a0"] == -3);
    CHECK(j["b0"] == -4);
    CHECK(j["snf"]["d1"] == 1);
    CHECK(j["snf"]["d2"] == 25);
    CHECK(j["linking"]["rho"] == 18);
    CHECK(j["linking"]["kappa"] == 7);
    CHECK(j["verdict"]["kind"] == "nonstandard");
    CHECK(j["verdict"]["obstruction_plus"]["prime"] == 5);
    CHECK(j["verdict"]["obstruction_plus"]["exponent"] == 2);
    CHECK(j["verdict"]["egs_prime"] == 5);
    CHECK(j["homotopy_bundle"] == false);
    CHECK_FALSE(j["verdict"].contains("lambda"));
}

TEST_CASE("classify report for n = 0 has no linking data") {
    const auto j = full_report(validate({1, 1, 1, 1, 1, 1}));
    CHECK(j["linking"].is_null());
    CHECK(j["homotopy_bundle"].is_null());
    CHECK(j["verdict"]["kind"] == "infinite");
}

TEST_CASE("JSON reports round-trip through re-derivation") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
        const FamilyParams p = random_family(rng, 401);
        const auto parsed = nlohmann::json::parse(full_report(p).dump());
        RawParams raw;
        for (int k = 0; k < 6; ++k) raw[static_cast<std::size_t>(k)] = parsed["params"][std::string(param_name(k))];
        const FamilyParams q = validate(raw);
        REQUIRE(q == p);
        const auto inv = derived(q);
        REQUIRE(report::int_from_json(parsed["a0"]) == inv.a0);
        REQUIRE(report::int_from_json(parsed["b0"]) == inv.b0);
        REQUIRE(report::int_from_json(parsed["n"]) == inv.n);
        REQUIRE(report::int_from_json(parsed["h4_order"]) == inv.h4_order);
        const auto h4 = h4_structure(q);
        REQUIRE(report::int_from_json(parsed["snf"]["d1"]) == h4.d1);
        REQUIRE(report::int_from_json(parsed["snf"]["d2"]) == h4.d2);
        const auto bv = bundle_verdict(q);
        REQUIRE(parsed["verdict"]["kind"] == std::string(to_string(bv.verdict.kind)));
        if (inv.n == 0) continue;
        const auto& lk = parsed["linking"];
        REQUIRE(report::int_from_json(lk["rho"]) == bv.linking->rho);
        REQUIRE(report::int_from_json(lk["kappa"]) == bv.linking->kappa);
        REQUIRE(report::int_from_json(lk["e1"]) == bv.linking->cert.e1);
        REQUIRE(report::int_from_json(lk["e0"]) == bv.linking->cert.e0);
        REQUIRE(report::int_from_json(lk["f1"]) == bv.linking->cert.f1);
        REQUIRE(report::int_from_json(lk["f0"]) == bv.linking->cert.f0);
        if (bv.verdict.lambda) REQUIRE(report::int_from_json(parsed["verdict"]["lambda"]) == *bv.verdict.lambda);
    }
}

TEST_CASE("CSV rows") {
    CHECK(std::string(report::kCsvHeader) == "a1,a2,a3,b1,b2,b3,n,h4_order,rho,kappa,verdict,egs_prime");
    CHECK(report::csv_row(classify_row(validate({5, 5, -7, 5, -7, 9}))) == "5,5,-7,5,-7,9,-25,25,18,7,nonstandard,5");
    CHECK(report::csv_row(classify_row(validate({1, 1, 1, 1, 5, 1}))) == "1,1,1,1,5,1,3,3,1,1,standard,");
    CHECK(report::csv_row(classify_row(validate({1, 1, 1, 1, 1, 1}))) == "1,1,1,1,1,1,0,0,,,infinite,");
    const auto j = report::row_json(classify_row(validate({5, 5, -7, 5, -7, 9})));
    CHECK(j["rho"] == 18);
    CHECK(j["verdict"] == "nonstandard");
    CHECK(j["egs_prime"] == 5);
}
