#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sstream>

#include "cli.hpp"
#include "sba/quiver_core/bq_format.hpp"

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run_sba(std::vector<std::string> args) {
    for (auto& a : args)
        if (a.find(".bq") != std::string::npos || a.find(".sbg") != std::string::npos || a.find(".dis") != std::string::npos)
            a = std::string(SBA_FIXTURE_DIR) + "/" + a;
    std::ostringstream out, err;
    int status = sba::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("documented command lines") {
    auto c = run_sba({"classify", "fig1.sbg"});
    CHECK(c.status == 0);
    CHECK(c.out == "Infinite (reason: ≥2 distinguished vertices)\n");

    auto k = run_sba({"cartan", "sec7_B.bq", "--q", "--det"});
    CHECK(k.status == 0);
    CHECK(k.out == "det_q = 1 - q^2; det = 0\n");
    CHECK(run_sba({"cartan", "sec7_A.bq", "--q", "--det"}).out == "det_q = 1; det = 1\n");

    auto i = run_sba({"iso", "toy.bq", "toy.bq"});
    CHECK(i.status == 0);
    CHECK(i.out == "isomorphic (identity)\n");
}

TEST_CASE("exit statuses") {
    CHECK(run_sba({}).status == 2);
    CHECK(run_sba({"frobnicate"}).status == 2);
    CHECK(run_sba({"classify", "fig1.sbg", "--no-such-flag"}).status == 2);
    auto missing = run_sba({"check", "missing.bq"});
    CHECK(missing.status == 2);
    CHECK(missing.err.find("missing.bq:0") != std::string::npos);
    auto domain = run_sba({"reflect", "sec74.bq", "--vertex", "3", "--minus"});
    CHECK(domain.status == 1);
    CHECK(domain.err.find("NotSourceOrSink") != std::string::npos);
    CHECK(run_sba({"move", "disk_special.dis", "--polygon", "1", "--angle", "0"}).status == 1);
    CHECK(run_sba({"reflect", "sec74.bq", "--vertex", "1"}).status == 2);
    CHECK(run_sba({"reflect", "sec74.bq", "--vertex", "1", "--plus", "--minus"}).status == 2);
    CHECK(run_sba({"--help"}).status == 0);
}

TEST_CASE("json mirrors") {
    auto c = run_sba({"--json", "classify", "fig1.sbg", "gamma1_m2.sbg", "--jobs", "2"});
    REQUIRE(c.status == 0);
    auto j = nlohmann::json::parse(c.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["type"] == "Infinite");
    CHECK(j[1]["branch"] == "ii");
    CHECK(j[1].contains("witness"));

    auto k = nlohmann::json::parse(run_sba({"cartan", "sec7_B.bq", "--json"}).out);
    CHECK(k["det_q"] == "1 - q^2");
    CHECK(k["det"] == "0");

    auto cuts = nlohmann::json::parse(run_sba({"cuts", "toy.bq", "--good", "--limit", "5", "--json"}).out);
    CHECK(cuts["count"] == 5);
    CHECK(cuts["cuts"].size() == 5);
}

TEST_CASE("cuts honour the limit") {
    auto r = run_sba({"cuts", "toy.bq", "--good", "--limit", "4"});
    CHECK(r.status == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
    auto all = run_sba({"cuts", "toy.bq", "--good"});
    CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 12);
    CHECK(run_sba({"cuts", "toy.bq", "--limit", "0"}).out.empty());
}

TEST_CASE("canonical output is stable and re-parses") {
    for (std::vector<std::string> cmd : {std::vector<std::string>{"build", "fig1.sbg"}, {"build", "torus.dis"},
                                         {"trivext", "toy.bq"}, {"reflect", "sec74.bq", "--vertex", "1", "--minus"}}) {
        auto first = run_sba(cmd);
        REQUIRE(first.status == 0);
        CHECK(run_sba(cmd).out == first.out);
        auto again = sba::quiver_core::serialize_bq(sba::quiver_core::parse_bq(first.out));
        CHECK(first.out.rfind(again, 0) == 0);
    }
    auto moved = run_sba({"move", "derived_a.dis", "--polygon", "2", "--angle", "0"});
    CHECK(moved.out.find("polygon: BOUNDARY, 2, 1\n") != std::string::npos);
    auto pendant = run_sba({"move", "disk_pendant.dis", "--polygon", "2", "--pendant", "3"});
    CHECK(pendant.out.find("polygon: BOUNDARY, 3, 2, 1, 3\n") != std::string::npos);
    auto refl = run_sba({"reflect", "annulus.dis", "--arc", "1", "--minus"});
    CHECK(refl.out.find("polygon: BOUNDARY, 2, 3, 4, 1\n") != std::string::npos);
}

TEST_CASE("check reports invalid inputs") {
    auto ok = run_sba({"check", "toy.bq", "fig1.sbg", "torus.dis", "--jobs", "3"});
    CHECK(ok.status == 0);
    CHECK(ok.out.find("toy.bq: ok (skew-gentle)") != std::string::npos);
    CHECK(ok.out.find("torus.dis: ok (dissection, 2 polygons, 0 trivial)") != std::string::npos);
    CHECK(run_sba({"check", "a2.bq"}).out.find("ok (gentle)") != std::string::npos);
}

TEST_CASE("projectives and dissect") {
    auto p = run_sba({"projectives", "fig1.sbg", "--vertex", "2+"});
    CHECK(p.out == "P(2+): 2+ | 1+ 1- | 4 | 3 | 2+  (dim 6, socle 2+)\n");
    auto d = run_sba({"dissect", "derived_b.dis"});
    CHECK(d.out.find("puncture q1: 1, 2\n") != std::string::npos);
    CHECK(d.out.find("det_q formula = 1 - q^2\n") != std::string::npos);
}
