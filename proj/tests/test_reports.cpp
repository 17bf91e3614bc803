#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fredkin/reports.hpp"

#include <cmath>
#include <cstdlib>

using namespace fredkin;

TEST_CASE("fmt17 round-trips doubles exactly") {
    for (double x : {1.0 / 3.0, M_PI, 6.626070156e-34, -0.0, 123456789.123456789}) {
        const double back = std::strtod(fmt17(x).c_str(), nullptr);
        CHECK(back == x);
    }
}

TEST_CASE("fits recover exact lines") {
    // y = 3x - 2
    auto lin = linear_fit({0, 1, 2, 3}, {-2, 1, 4, 7});
    CHECK(lin.slope == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(lin.intercept == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(lin.r2 == doctest::Approx(1.0).epsilon(1e-12));

    // y = 5 x^{-2}
    std::vector<double> xs{1, 2, 4, 8}, ys;
    for (double x : xs) ys.push_back(5.0 / (x * x));
    auto plaw = loglog_fit(xs, ys);
    CHECK(plaw.slope == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(std::exp(plaw.intercept) == doctest::Approx(5.0).epsilon(1e-12));

    CHECK_THROWS_AS(loglog_fit({1.0, -2.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(linear_fit({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("svg output is byte-stable and well-formed") {
    SvgSeries line{"gap", {2, 3, 4, 5}, {1.0, 0.5, 0.25, 0.125}, false};
    SvgSeries dots{"mc", {2, 3, 4}, {0.9, 0.55, 0.2}, true};
    const std::string a = svg_plot({line, dots}, "title", "slope -2", true, true);
    const std::string b = svg_plot({line, dots}, "title", "slope -2", true, true);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("polyline") != std::string::npos);
    CHECK(a.find("slope -2") != std::string::npos);
    CHECK(a.find("gap") != std::string::npos);
}

TEST_CASE("metadata blocks carry version, config and seed") {
    RunMeta meta{"gap-scan", "n-min=2; n-max=6;", 42};
    const std::string pre = csv_preamble(meta);
    CHECK(pre.find("# version=0.1.0") != std::string::npos);
    CHECK(pre.find("# command=gap-scan") != std::string::npos);
    CHECK(pre.find("# seed=42") != std::string::npos);

    auto j = json_with_meta(meta);
    CHECK(j["meta"]["version"] == "0.1.0");
    CHECK(j["meta"]["seed"] == 42);
    CHECK(j["meta"]["config"] == "n-min=2; n-max=6;");
}
