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

#include "json.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <limits>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#ifndef MCRB_VERSION
#define MCRB_VERSION "0.0.0"
#endif

namespace mcrb
{
namespace
{
using json = nlohmann::json;

constexpr double kW = 860.0, kH = 480.0;
constexpr double kLeft = 80.0, kRight = 330.0, kTop = 40.0, kBottom = 60.0;

const std::array<const char *, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                           "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string hex64(std::uint64_t v)
{
    std::array<char, 17> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + 16, v, 16);
    std::string s(buf.data(), res.ptr);
    return std::string(16 - s.size(), '0') + s;
}

std::string xml_escape(const std::string &s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Fixed 2-decimal coordinates keep SVG output compact and deterministic.
std::string px(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
    return std::string(buf.data(), res.ptr);
}

std::string tick_label(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 4);
    return std::string(buf.data(), res.ptr);
}

std::vector<double> nice_ticks(double lo, double hi)
{
    if (!(hi > lo))
        return {lo};
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw)
        {
            step = m * mag;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step)
        t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return t;
}

struct Axis
{
    double lo = 0.0, hi = 1.0;
    bool log = false;
    double p0 = 0.0, p1 = 1.0; // pixel range

    double map(double v) const
    {
        const double a = log ? std::log10(v) : v;
        const double l = log ? std::log10(lo) : lo;
        const double h = log ? std::log10(hi) : hi;
        return p0 + (a - l) / (h - l) * (p1 - p0);
    }
};

void finite_range(const std::vector<double> &v, bool log, double &lo, double &hi)
{
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (double x : v)
        if (std::isfinite(x) && (!log || x > 0.0))
        {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
}

void widen(Axis &a)
{
    if (!std::isfinite(a.lo))
    {
        a.lo = a.log ? 0.1 : 0.0;
        a.hi = a.log ? 10.0 : 1.0;
    }
    if (a.hi <= a.lo)
    {
        a.lo = a.log ? a.lo / 2.0 : a.lo - 1.0;
        a.hi = a.log ? a.hi * 2.0 : a.hi + 1.0;
    }
    if (a.log)
    {
        a.lo = std::pow(10.0, std::floor(std::log10(a.lo)));
        a.hi = std::pow(10.0, std::ceil(std::log10(a.hi)));
    }
}

void frame(std::ostringstream &o, const Figure &f, const Axis &x, const Axis &y)
{
    o << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\""
      << px(kW - kLeft - kRight) << "\" height=\"" << px(kH - kTop - kBottom)
      << "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (double t : nice_ticks(x.lo, x.hi))
    {
        const double X = x.map(t);
        o << "<line x1=\"" << px(X) << "\" y1=\"" << px(kH - kBottom) << "\" x2=\"" << px(X)
          << "\" y2=\"" << px(kH - kBottom + 5) << "\" stroke=\"#000\"/>\n"
          << "<text x=\"" << px(X) << "\" y=\"" << px(kH - kBottom + 18)
          << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    std::vector<double> yt;
    if (y.log)
        for (double e = std::log10(y.lo); e <= std::log10(y.hi) + 1e-9; e += 1.0)
            yt.push_back(std::pow(10.0, e));
    else
        yt = nice_ticks(y.lo, y.hi);
    for (double t : yt)
    {
        const double Y = y.map(t);
        o << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(Y) << "\" x2=\"" << px(kLeft)
          << "\" y2=\"" << px(Y) << "\" stroke=\"#000\"/>\n"
          << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(Y + 4)
          << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    o << "<text x=\"" << px((kLeft + kW - kRight) / 2) << "\" y=\"" << px(kTop - 14)
      << "\" text-anchor=\"middle\" font-weight=\"bold\">" << xml_escape(f.title) << "</text>\n"
      << "<text x=\"" << px((kLeft + kW - kRight) / 2) << "\" y=\"" << px(kH - 16)
      << "\" text-anchor=\"middle\">" << xml_escape(f.x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << px((kTop + kH - kBottom) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << px((kTop + kH - kBottom) / 2)
      << ")\">" << xml_escape(f.y_label) << "</text>\n";
}

std::string line_svg(const Figure &f, const Table &t)
{
    const std::vector<double> xs = t.numbers(f.x);
    std::vector<std::vector<double>> ys;
    std::vector<double> all;
    for (const auto &c : f.y)
    {
        ys.push_back(t.numbers(c));
        for (double &v : ys.back())
            if (std::isfinite(v))
                v = std::max(v, f.y_floor);
        all.insert(all.end(), ys.back().begin(), ys.back().end());
    }
    Axis x{0, 1, false, kLeft, kW - kRight};
    Axis y{0, 1, f.log_y, kH - kBottom, kTop};
    finite_range(xs, false, x.lo, x.hi);
    finite_range(all, y.log, y.lo, y.hi);
    widen(x);
    widen(y);

    std::ostringstream o;
    frame(o, f, x, y);
    for (std::size_t s = 0; s < ys.size(); ++s)
    {
        const char *color = kPalette[s % kPalette.size()];
        std::string pts;
        auto flush = [&] {
            if (!pts.empty())
                o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
                  << pts << "\"/>\n";
            pts.clear();
        };
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            const double v = ys[s][i];
            if (!std::isfinite(v) || !std::isfinite(xs[i]) || (y.log && v <= 0.0))
            {
                flush();
                continue;
            }
            if (!pts.empty())
                pts += ' ';
            pts += px(x.map(xs[i])) + "," + px(y.map(std::clamp(v, y.lo, y.hi)));
        }
        flush();
        const double ly = kTop + 16.0 + 18.0 * double(s);
        o << "<line x1=\"" << px(kW - kRight + 10) << "\" y1=\"" << px(ly) << "\" x2=\""
          << px(kW - kRight + 30) << "\" y2=\"" << px(ly) << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n"
          << "<text x=\"" << px(kW - kRight + 34) << "\" y=\"" << px(ly + 4) << "\">"
          << xml_escape(f.y[s]) << "</text>\n";
    }
    return o.str();
}

std::string ramp(double u)
{
    // blue -> white -> red around the contour level
    u = std::clamp(u, 0.0, 1.0);
    int r, g, b;
    if (u < 0.5)
    {
        const double k = u / 0.5;
        r = int(std::lround(40 + k * 215));
        g = int(std::lround(80 + k * 175));
        b = 255;
    }
    else
    {
        const double k = (u - 0.5) / 0.5;
        r = 255;
        g = int(std::lround(255 - k * 215));
        b = int(std::lround(255 - k * 215));
    }
    std::array<char, 8> buf{};
    std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", r, g, b);
    return buf.data();
}

std::string heatmap_svg(const Figure &f, const Table &t)
{
    const std::vector<double> xs = t.numbers(f.x);
    const std::vector<double> ys = t.numbers(f.y.at(0));
    const std::vector<double> zs = t.numbers(f.y.at(1));
    std::map<double, std::size_t> xi, yi;
    for (double v : xs)
        xi.emplace(v, 0);
    for (double v : ys)
        yi.emplace(v, 0);
    std::size_t k = 0;
    for (auto &p : xi)
        p.second = k++;
    k = 0;
    for (auto &p : yi)
        p.second = k++;
    const std::size_t nx = xi.size(), ny = yi.size();
    std::vector<double> grid(nx * ny, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < xs.size(); ++i)
        grid[yi[ys[i]] * nx + xi[xs[i]]] = zs[i];

    Axis x{xi.begin()->first, xi.rbegin()->first, false, kLeft, kW - kRight};
    Axis y{yi.begin()->first, yi.rbegin()->first, false, kH - kBottom, kTop};
    widen(x);
    widen(y);
    // log scale around the contour level, clipped at a factor 4 either way
    auto u_of = [&](double z) { return 0.5 + std::log(z / f.contour) / (2.0 * std::log(4.0)); };

    std::ostringstream o;
    const double cw = (x.p1 - x.p0) / double(std::max<std::size_t>(nx - 1, 1));
    const double ch = (y.p0 - y.p1) / double(std::max<std::size_t>(ny - 1, 1));
    std::vector<double> xv(nx), yv(ny);
    for (const auto &p : xi)
        xv[p.second] = p.first;
    for (const auto &p : yi)
        yv[p.second] = p.first;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
        {
            const double z = grid[j * nx + i];
            const std::string fill = std::isfinite(z) && z > 0.0 ? ramp(u_of(z)) : "#808080";
            o << "<rect x=\"" << px(x.map(xv[i]) - cw / 2) << "\" y=\"" << px(y.map(yv[j]) - ch / 2)
              << "\" width=\"" << px(cw) << "\" height=\"" << px(ch) << "\" fill=\"" << fill
              << "\"/>\n";
        }
    // marching squares at the contour level
    auto lerp = [](double a, double b, double za, double zb, double lvl) {
        return a + (lvl - za) / (zb - za) * (b - a);
    };
    for (std::size_t j = 0; j + 1 < ny; ++j)
        for (std::size_t i = 0; i + 1 < nx; ++i)
        {
            const double z00 = grid[j * nx + i], z10 = grid[j * nx + i + 1];
            const double z01 = grid[(j + 1) * nx + i], z11 = grid[(j + 1) * nx + i + 1];
            if (!std::isfinite(z00) || !std::isfinite(z10) || !std::isfinite(z01)
                || !std::isfinite(z11))
                continue;
            std::vector<std::pair<double, double>> pts;
            const double L = f.contour;
            if ((z00 < L) != (z10 < L))
                pts.emplace_back(lerp(xv[i], xv[i + 1], z00, z10, L), yv[j]);
            if ((z10 < L) != (z11 < L))
                pts.emplace_back(xv[i + 1], lerp(yv[j], yv[j + 1], z10, z11, L));
            if ((z01 < L) != (z11 < L))
                pts.emplace_back(lerp(xv[i], xv[i + 1], z01, z11, L), yv[j + 1]);
            if ((z00 < L) != (z01 < L))
                pts.emplace_back(xv[i], lerp(yv[j], yv[j + 1], z00, z01, L));
            for (std::size_t s = 0; s + 1 < pts.size(); s += 2)
                o << "<line x1=\"" << px(x.map(pts[s].first)) << "\" y1=\""
                  << px(y.map(pts[s].second)) << "\" x2=\"" << px(x.map(pts[s + 1].first))
                  << "\" y2=\"" << px(y.map(pts[s + 1].second))
                  << "\" stroke=\"#000\" stroke-width=\"1.5\"/>\n";
        }
    frame(o, f, x, y);
    const double lx = kW - kRight + 20;
    for (int s = 0; s <= 8; ++s)
    {
        const double u = double(s) / 8.0;
        const double z = f.contour * std::pow(4.0, 2.0 * u - 1.0);
        const double ly = kTop + 20.0 + 22.0 * double(8 - s);
        o << "<rect x=\"" << px(lx) << "\" y=\"" << px(ly - 10) << "\" width=\"20\" height=\"20\" fill=\""
          << ramp(u) << "\"/>\n<text x=\"" << px(lx + 26) << "\" y=\"" << px(ly + 4) << "\">"
          << tick_label(z) << "</text>\n";
    }
    return o.str();
}

} // namespace

std::string format_number(double x)
{
    if (!std::isfinite(x))
        return {};
    if (x == 0.0)
        return "0";
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

std::string csv_escape(const std::string &field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string to_csv(const Table &t)
{
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c)
    {
        if (c)
            out += ',';
        out += csv_escape(t.columns[c]);
    }
    out += "\r\n";
    for (const auto &row : t.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
        {
            if (c)
                out += ',';
            const Cell &cell = row[c];
            if (const double *d = std::get_if<double>(&cell))
                out += format_number(*d);
            else if (const auto *i = std::get_if<std::int64_t>(&cell))
                out += std::to_string(*i);
            else if (const auto *s = std::get_if<std::string>(&cell))
                out += csv_escape(*s);
        }
        out += "\r\n";
    }
    return out;
}

std::string to_svg(const Figure &f, const Table &t)
{
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(kW) << "\" height=\"" << px(kH)
      << "\" viewBox=\"0 0 " << px(kW) << " " << px(kH)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
    o << (f.kind == Figure::Kind::kHeatmap ? heatmap_svg(f, t) : line_svg(f, t));
    o << "</svg>\n";
    return o.str();
}

std::string library_version() { return MCRB_VERSION; }

std::string manifest_json(const ExperimentConfig &cfg, const std::vector<WrittenFile> &outputs)
{
    const std::string canonical = to_canonical_json(cfg);
    json m;
    m["tool"] = "mcrb";
    m["experiment"] = std::string(kind_name(cfg.kind));
    m["config"] = json::parse(canonical);
    m["config_hash"] = "fnv1a64:" + hex64(fnv1a64(canonical));
    m["seed"] = cfg.montecarlo.seed;
    m["trials"] = cfg.montecarlo.trials;
    m["versions"] = json{{"mcrb", library_version()},
                         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "."
                                       + std::to_string(EIGEN_MAJOR_VERSION) + "."
                                       + std::to_string(EIGEN_MINOR_VERSION)},
                         {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "."
                                               + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "."
                                               + std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                         {"compiler", __VERSION__},
                         {"rng", "mt19937_64 seeded by splitmix64(base_seed, scene, trial)"}};
    json files = json::array();
    for (const auto &f : outputs)
        files.push_back(json{{"file", f.name}, {"fnv1a64", hex64(f.fnv1a)}});
    m["outputs"] = files;
    return m.dump(2) + "\n";
}

std::vector<WrittenFile> write_outputs(const ExperimentResult &result, const ExperimentConfig &cfg,
                                       const std::filesystem::path &out_dir, bool svg)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw ConfigError("--out: cannot create directory " + out_dir.string() + ": " + ec.message());

    std::vector<WrittenFile> files;
    auto emit = [&](const std::string &name, const std::string &text) {
        std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ConfigError("--out: cannot write " + (out_dir / name).string());
        out << text;
        files.push_back({name, fnv1a64(text)});
    };
    for (const auto &t : result.tables)
        emit(t.name + ".csv", to_csv(t));
    if (svg)
        for (const auto &f : result.figures)
            emit(f.name + ".svg", to_svg(f, result.table(f.table)));
    const std::string manifest = manifest_json(cfg, files);
    emit("manifest.json", manifest);
    return files;
}

} // namespace mcrb
