#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "padiclab/cache.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/padic.hpp"
#include "padiclab/report.hpp"

using namespace padiclab;
namespace fs = std::filesystem;

TEST_CASE("p-adic approximations from rationals and residues") {
    PAdicApprox a = PAdicApprox::from_rational(Rat(18, 5), Int(3), 3);
    CHECK(a.valuation == 2);
    CHECK_FALSE(a.is_unit());
    CHECK(a.unit == 22); // 2/5 mod 27
    CHECK(a.residue_mod(5) == 198);
    CHECK(a.residue_mod(3) == 9); // 9 * 5 = 45 = 18 mod 27
    CHECK_THROWS_AS(a.residue_mod(6), PrecisionExhausted);

    PAdicApprox neg = PAdicApprox::from_rational(Rat(1, 3), Int(3), 2);
    CHECK(neg.valuation == -1);
    CHECK_THROWS_AS(neg.residue_mod(1), PrecisionExhausted);

    PAdicApprox r = PAdicApprox::from_residue(Int(43), Int(7), 2);
    CHECK(r.is_unit());
    CHECK(r.precision == 2);
    CHECK(r.residue_mod(2) == 43);
    CHECK(r.residue_mod(1) == 1);
    CHECK_FALSE(r.str().empty());

    PAdicApprox shallow = PAdicApprox::from_residue(Int(21), Int(7), 2);
    CHECK(shallow.valuation == 1);
    CHECK(shallow.precision == 1);
    CHECK(shallow.residue_mod(2) == 21);

    PAdicApprox unknown = PAdicApprox::from_residue(Int(0), Int(7), 2);
    CHECK(unknown.valuation == 2); // lower bound only
    CHECK(unknown.precision == 0);
    CHECK(unknown.residue_mod(2) == 0);

    PAdicApprox z = PAdicApprox::exact_zero(Int(5));
    CHECK(z.zero);
    CHECK(z.residue_mod(7) == 0);
}

TEST_CASE("p-adic arithmetic tracks residues") {
    PAdicApprox x = PAdicApprox::from_residue(Int(4), Int(5), 3);
    PAdicApprox y = PAdicApprox::from_residue(Int(2), Int(5), 3);
    CHECK((x * y).residue_mod(3) == 8);
    CHECK((x + y).residue_mod(3) == 6);
    CHECK((x - y).residue_mod(3) == 2);
    CHECK((-PAdicApprox::from_residue(Int(1), Int(7), 2)).residue_mod(2) == 48);

    PAdicApprox a = PAdicApprox::from_residue(Int(43), Int(7), 2);
    CHECK(a.congruent_mod(PAdicApprox::from_residue(Int(92), Int(7), 2), 2));
    PAdicApprox b = PAdicApprox::from_residue(Int(50), Int(7), 2);
    CHECK(a.congruent_mod(b, 1));
    CHECK_FALSE(a.congruent_mod(b, 2));
}

TEST_CASE("limit estimates read the difference profile") {
    std::vector<Rat> tower = {Rat(2), Rat(-4), Rat(-346), Rat(17948984)};
    LimitEstimate est = try_padic_limit_estimate(tower, Int(3), 10);
    CHECK(est.cauchy);
    CHECK(est.profile == std::vector<long>{1, 2, 3});
    CHECK(est.value.residue_mod(3) == 5);
    CHECK_THROWS_AS(est.value.residue_mod(4), PrecisionExhausted);

    std::vector<Rat> capped_same = tower;
    LimitEstimate capped = try_padic_limit_estimate(capped_same, Int(3), 2);
    CHECK(capped.value.residue_mod(2) == 5);

    std::vector<Rat> ties = {Rat(5), Rat(5), Rat(5)};
    LimitEstimate tied = try_padic_limit_estimate(ties, Int(3), 4);
    CHECK(tied.cauchy);
    CHECK(tied.value.residue_mod(4) == 5);

    std::vector<Rat> flat = {Rat(1), Rat(2)};
    CHECK_FALSE(try_padic_limit_estimate(flat, Int(3), 5).cauchy);
    CHECK_THROWS_AS(padic_limit_estimate(flat, Int(3), 5), NonCauchy);

    std::vector<Rat> degrading = {Rat(0), Rat(9), Rat(12)};
    CHECK_FALSE(try_padic_limit_estimate(degrading, Int(3), 5).cauchy);
}

TEST_CASE("run report: status table and JSON") {
    RunReport rep;
    rep.command = "demo";
    rep.add("first", true, "ok", 2);
    rep.add("second", true, "fine");
    CHECK(rep.all_pass());

    rep.add("third", false, "broken");
    CHECK_FALSE(rep.all_pass());

    CheckRecord skip;
    skip.name = "fourth";
    skip.status = "skip";
    skip.detail = "not requested";
    rep.checks.push_back(skip);
    CHECK_FALSE(rep.all_pass()); // skip is not a failure, third still is

    std::string table = rep.table();
    CHECK(table.find("[PASS] first") != std::string::npos);
    CHECK(table.find("[FAIL] third") != std::string::npos);
    CHECK(table.find("[SKIP] fourth") != std::string::npos);
    CHECK(table.find("(certified precision 2)") != std::string::npos);
    CHECK(table.find("fine") != std::string::npos);

    std::string json = rep.to_json_string();
    CHECK(json.find("\"all_pass\": false") != std::string::npos);
    CHECK(json.find("\"certified_precision\": 2") != std::string::npos);
    CHECK(json.find("\"epsilon\"") == std::string::npos); // unset sign ledger

    rep.epsilon = -1;
    rep.epsilon_evidence.push_back("sign fixed by the unit tower");
    std::string signed_json = rep.to_json_string();
    CHECK(signed_json.find("\"epsilon\": -1") != std::string::npos);
    CHECK(signed_json.find("sign fixed by the unit tower") != std::string::npos);
}

TEST_CASE("series cache: memoization, persistence, corruption recovery") {
    const std::string dir = "toolchain_cache_dir";
    fs::remove_all(dir);

    QSeries sample(-1, 8, {Rat(1), Rat(0), Rat(-2), Rat(1, 2)});
    int builds = 0;
    auto build = [&]() {
        ++builds;
        return sample;
    };

    {
        SeriesCache cache(dir);
        QSeries a = cache.get_or_build("w1 level=32", 8, build);
        CHECK(builds == 1);
        CHECK(agree_through(a, sample, 8));
        QSeries b = cache.get_or_build("w1 level=32", 8, build);
        CHECK(builds == 1); // memory layer hit
        CHECK(b.min_exp() == -1);
        CHECK_FALSE(cache.get("w1 level=32", 9).has_value());
        CHECK(fs::exists(dir + "/w1_level_32_T8.qs"));
    }

    {
        SeriesCache fresh(dir);
        QSeries c = fresh.get_or_build("w1 level=32", 8, build);
        CHECK(builds == 1); // disk hit across instances
        CHECK(c.coeff(2) == Rat(1, 2));
    }

    {
        std::ofstream out(dir + "/w1_level_32_T8.qs", std::ios::trunc);
        out << "not a series\n";
    }
    {
        SeriesCache fresh(dir);
        CHECK_FALSE(fresh.get("w1 level=32", 8).has_value());
        QSeries d = fresh.get_or_build("w1 level=32", 8, build);
        CHECK(builds == 2); // corrupt entry forces a rebuild
        CHECK(agree_through(d, sample, 8));
    }

    SeriesCache memory_only("");
    QSeries e = memory_only.get_or_build("w1 level=32", 8, build);
    CHECK(builds == 3);
    memory_only.get_or_build("w1 level=32", 8, build);
    CHECK(builds == 3);

    fs::remove_all(dir);
}

TEST_CASE("cache directory from the environment") {
    unsetenv("PADICLAB_CACHE");
    CHECK_FALSE(cache_dir_from_env().has_value());
    setenv("PADICLAB_CACHE", "", 1);
    CHECK_FALSE(cache_dir_from_env().has_value());
    setenv("PADICLAB_CACHE", "/tmp/padiclab-cache-test", 1);
    REQUIRE(cache_dir_from_env().has_value());
    CHECK(*cache_dir_from_env() == "/tmp/padiclab-cache-test");
    unsetenv("PADICLAB_CACHE");
}
