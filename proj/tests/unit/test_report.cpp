// SPDX-License-Identifier: Apache-2.0
//
// mcrb - misspecified Cramer-Rao bounds for MIMO radar DOA under multipath
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "mcrb/report.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <locale>
#include <sstream>

using namespace mcrb;

namespace
{
std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Table sample_table()
{
    Table t;
    t.name = "sample";
    t.columns = {"x_deg", "label", "count", "y"};
    t.rows.push_back({0.1, std::string("plain"), std::int64_t(3), std::monostate{}});
    t.rows.push_back({-2.5e-7, std::string("a,\"b\""), std::int64_t(-1), 1e300});
    return t;
}
} // namespace

TEST_CASE("numbers use the shortest round-trip form with a '.' separator")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(117.612786) == "117.612786");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()).empty());
    CHECK(format_number(std::numeric_limits<double>::infinity()).empty());
    const double x = 0.1666128976604697;
    CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("number format ignores the global locale")
{
    std::locale old;
    try
    {
        std::locale::global(std::locale("de_DE.UTF-8"));
    }
    catch (const std::runtime_error &)
    {
        // locale not installed; the check below still runs under "C"
    }
    CHECK(format_number(1.5) == "1.5");
    std::locale::global(old);
}

TEST_CASE("RFC 4180 quoting")
{
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
    CHECK(csv_escape("cr\r") == "\"cr\r\"");
}

TEST_CASE("CSV layout: header, CRLF, empty degenerate cells")
{
    const std::string csv = to_csv(sample_table());
    CHECK(csv == "x_deg,label,count,y\r\n"
                 "0.1,plain,3,\r\n"
                 "-2.5e-07,\"a,\"\"b\"\"\",-1,1e+300\r\n");
}

TEST_CASE("table accessors")
{
    const Table t = sample_table();
    CHECK(t.column("count") == 2);
    CHECK_THROWS_AS(t.column("nope"), InvalidArgument);
    const auto y = t.numbers("y");
    CHECK(std::isnan(y[0]));
    CHECK(y[1] == 1e300);
}

TEST_CASE("SVG output is standalone and deterministic")
{
    Table t;
    t.name = "curve";
    t.columns = {"x", "a", "b"};
    for (int i = 0; i < 20; ++i)
        t.rows.push_back({double(i), std::exp(-0.1 * i), i == 7 ? Cell{} : Cell{1.0 + i}});
    Figure f;
    f.name = "curve";
    f.table = "curve";
    f.title = "A & B <test>";
    f.x = "x";
    f.y = {"a", "b"};
    f.log_y = true;
    const std::string svg = to_svg(f, t);
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    CHECK(svg.find("A &amp; B &lt;test&gt;") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    // the gap at i = 7 splits series b into two polylines
    std::size_t lines = 0;
    for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1))
        ++lines;
    CHECK(lines == 3);
    CHECK(to_svg(f, t) == svg);
}

TEST_CASE("heatmap SVG draws the iso-contour")
{
    Table t;
    t.name = "map";
    t.columns = {"u", "v", "z"};
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            t.rows.push_back({double(i), double(j), 0.2 * (i + j)});
    Figure f;
    f.kind = Figure::Kind::kHeatmap;
    f.name = "map";
    f.table = "map";
    f.x = "u";
    f.y = {"v", "z"};
    f.contour = 1.0;
    const std::string svg = to_svg(f, t);
    CHECK(svg.find("<rect") != std::string::npos);
    CHECK(svg.find("stroke=\"#000\" stroke-width=\"1.5\"") != std::string::npos);
}

TEST_CASE("outputs and manifest")
{
    const auto dir = std::filesystem::temp_directory_path() / "mcrb_test_report";
    std::filesystem::remove_all(dir);
    ExperimentConfig cfg = parse_config(R"({"experiment":"bounds"})");
    ExperimentResult r;
    r.tables.push_back(sample_table());
    const auto files = write_outputs(r, cfg, dir, false);
    REQUIRE(files.size() == 2);
    CHECK(files[0].name == "sample.csv");
    CHECK(files[1].name == "manifest.json");
    CHECK(slurp(dir / "sample.csv") == to_csv(sample_table()));
    CHECK(files[0].fnv1a == fnv1a64(to_csv(sample_table())));

    const std::string m = slurp(dir / "manifest.json");
    CHECK(m == manifest_json(cfg, {files[0]}));
    CHECK(m.find("\"config_hash\": \"fnv1a64:") != std::string::npos);
    CHECK(m.find("\"seed\"") != std::string::npos);
    CHECK(m.find("\"versions\"") != std::string::npos);
    CHECK(m.find("thread") == std::string::npos);
    // the manifest is itself a valid config
    CHECK(to_canonical_json(parse_config(m)) == to_canonical_json(cfg));
    std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable output directory is a validation error")
{
    const auto blocker = std::filesystem::temp_directory_path() / "mcrb_test_blocker";
    std::ofstream(blocker) << "x";
    ExperimentResult r;
    r.tables.push_back(sample_table());
    CHECK_THROWS_AS(write_outputs(r, parse_config(R"({"experiment":"bounds"})"), blocker / "sub", false),
                    ConfigError);
    std::filesystem::remove(blocker);
}
