// Tabular and chart output: cell rendering at full precision, CSV framing
// and quoting, file emission, and the SVG line chart structure.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <qufti/report.hpp>

using namespace qufti;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("cell rendering", "[report]") {
    REQUIRE(CsvCell::of_number(0.25).render() == "0.25");
    REQUIRE(CsvCell::of_number(2.25).render() == "2.25");
    REQUIRE(CsvCell::of_number(1.0 / 3.0).render() == "0.333333333333333");
    REQUIRE(CsvCell::of_number(1e20).render() == "1e+20");
    REQUIRE(CsvCell::of_number(0.0001).render() == "0.0001");
    REQUIRE(CsvCell::of_integer(42).render() == "42");
    REQUIRE(CsvCell::of_text("nrd").render() == "nrd");
    REQUIRE(CsvCell::of_number(std::numeric_limits<double>::quiet_NaN()).render() == "nan");
}

TEST_CASE("numeric cells re-parse to the original value", "[report]") {
    for (double x : {0.755177817018, 2.25e-7, 3.141592653589793, 1.0 / 7.0}) {
        const std::string text = CsvCell::of_number(x).render();
        const double parsed = std::strtod(text.c_str(), nullptr);
        REQUIRE(std::abs(parsed - x) <= 1e-14 * std::abs(x));
    }
}

TEST_CASE("table framing", "[report]") {
    REQUIRE_THROWS_AS(CsvTable({}), ArityError);

    CsvTable table({"a", "b"});
    REQUIRE(table.columns() == 2);
    REQUIRE(table.column("b") == 1);
    REQUIRE_THROWS_AS(table.column("c"), IndexError);
    REQUIRE_THROWS_AS(table.add_row({CsvCell::of_integer(1)}), ArityError);

    // Header-only document: exactly one line.
    REQUIRE(table.to_csv() == "a,b\n");

    table.add_row({CsvCell::of_integer(1), CsvCell::of_number(0.5)});
    table.add_row({CsvCell::of_integer(2), CsvCell::of_number(1.5)});
    table.add_row({CsvCell::of_integer(3), CsvCell::of_number(2.5)});
    const std::string csv = table.to_csv();
    REQUIRE(count_occurrences(csv, "\n") == 4);
    REQUIRE(csv == "a,b\n1,0.5\n2,1.5\n3,2.5\n");
}

TEST_CASE("fields with separators are quoted", "[report]") {
    CsvTable table({"label"});
    table.add_row({CsvCell::of_text("a,b")});
    table.add_row({CsvCell::of_text("say \"hi\"")});
    REQUIRE(table.to_csv() == "label\n\"a,b\"\n\"say \"\"hi\"\"\"\n");
}

TEST_CASE("CSV files round-trip through disk", "[report]") {
    CsvTable table({"m", "variance"});
    table.add_row({CsvCell::of_integer(3), CsvCell::of_number(0.591687044262)});

    const std::string path = "test_report_sweep.csv";
    emit_csv(table, path);
    REQUIRE(slurp(path) == table.to_csv());
    std::remove(path.c_str());

    REQUIRE_THROWS_AS(emit_csv(table, "no-such-directory/sweep.csv"), IoError);
}

TEST_CASE("SVG chart structure", "[report]") {
    std::vector<SvgSeries> series;
    series.push_back({"nrd", {{2.0, 0.25}, {3.0, 0.2958}, {4.0, 0.2517}}});
    series.push_back({"qcrb", {{2.0, 0.25}, {3.0, 0.25}, {4.0, 0.25}}});
    series.push_back({"a<b", {{2.0, 1.0}, {3.0, 2.0}}});

    const std::string path = "test_report_chart.svg";
    emit_svg(path, "strategy comparison", "m", "total variance", series);
    const std::string svg = slurp(path);
    std::remove(path.c_str());

    REQUIRE(svg.find("<svg") != std::string::npos);
    REQUIRE(count_occurrences(svg, "<polyline") == series.size());
    REQUIRE(svg.find("nrd") != std::string::npos);
    REQUIRE(svg.find("qcrb") != std::string::npos);
    // Labels are escaped for XML.
    REQUIRE(svg.find("a&lt;b") != std::string::npos);
    REQUIRE(svg.find("a<b") == std::string::npos);
}

TEST_CASE("SVG chart skips unusable points", "[report]") {
    // Non-positive values cannot appear on a log axis; the chart still
    // renders the remaining points.
    std::vector<SvgSeries> series;
    series.push_back({"sparse", {{0.0, 0.0}, {1.0, 1.0}, {2.0, 10.0}}});

    const std::string path = "test_report_sparse.svg";
    emit_svg(path, "sparse", "x", "y", series);
    const std::string svg = slurp(path);
    std::remove(path.c_str());
    REQUIRE(svg.find("<svg") != std::string::npos);
    REQUIRE(count_occurrences(svg, "<polyline") == 1);
}
