#include <doctest.h>

#include <sstream>

#include "pamlyap/figure2.hpp"

using namespace pam;

TEST_SUITE("figure2") {

TEST_CASE("curves are ordered and the gamma_1 column is identically zero") {
    Figure2Data data = compute_figure2(0.05, 5.0, 25, 5);
    REQUIRE(data.nu.size() == 25);
    REQUIRE(data.gamma_over_k_norm.size() == 4);
    for (std::size_t i = 0; i < data.nu.size(); ++i) {
        CHECK(data.gamma_tilde_norm[i] < 0.0);
        double prev = 0.0;
        for (const auto& curve : data.gamma_over_k_norm) {
            CHECK(curve[i] > prev);
            prev = curve[i];
        }
    }
    const std::string csv = figure2_csv(data);
    std::istringstream is(csv);
    std::string header;
    std::getline(is, header);
    CHECK(header == "nu,gamma_tilde_norm,gamma_1_norm,gamma_2_over_2_norm,gamma_3_over_3_norm,"
                    "gamma_4_over_4_norm,gamma_5_over_5_norm");
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        // third field is the normalized gamma_1 column
        std::istringstream ls(line);
        std::string field;
        std::getline(ls, field, ',');
        std::getline(ls, field, ',');
        std::getline(ls, field, ',');
        CHECK(field == "0");
    }
    CHECK(rows == 25);
}

TEST_CASE("csv generation is byte-deterministic") {
    const std::string a = figure2_csv(compute_figure2(0.05, 5.0, 40, 4));
    const std::string b = figure2_csv(compute_figure2(0.05, 5.0, 40, 4));
    CHECK(a == b);
}

TEST_CASE("svg has the fixed viewbox and one polyline per curve") {
    Figure2Data data = compute_figure2(0.1, 2.0, 10, 3);
    const std::string svg = figure2_svg(data);
    CHECK(svg.find("viewBox=\"0 0 800 600\"") != std::string::npos);
    std::size_t count = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++count;
        pos += 1;
    }
    CHECK(count == 4);  // gamma_tilde, gamma_1, gamma_2/2, gamma_3/3
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(compute_figure2(0.0, 5.0, 10, 4), std::invalid_argument);
    CHECK_THROWS_AS(compute_figure2(0.1, 6.0, 10, 4), std::invalid_argument);
    CHECK_THROWS_AS(compute_figure2(0.1, 5.0, 10, 9), std::invalid_argument);
}

}  // TEST_SUITE
