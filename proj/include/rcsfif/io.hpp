#pragma once

// File formats: data CSV (header x,y[,d]) or JSON, model JSON, sample CSV,
// report JSON and a dependency-free SVG plot. All writes go through a temp
// file followed by rename.

#include "rcsfif/analysis.hpp"
#include "rcsfif/attractor.hpp"
#include "rcsfif/constraint.hpp"
#include "rcsfif/error.hpp"
#include "rcsfif/mesh.hpp"
#include "rcsfif/model.hpp"
#include "rcsfif/validate.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace rcsfif::io {

using json = nlohmann::json;

/// Shortest decimal representation that round-trips.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    std::string s(buf);
    if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
    return s;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::IoError, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(Errc::IoError, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(Errc::IoError, "cannot rename to " + path.string() + ": " + ec.message());
}

// ---------------------------------------------------------------------------
// Data sets
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double parse_number(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": cannot parse '" +
                                          std::string(field) + "' as a number");
    }
    return v;
}

} // namespace detail

/// CSV with header "x,y" or "x,y,d"; '#' lines and blank lines are ignored.
inline DataSet parse_data_csv(std::string_view text) {
    std::vector<RawPoint> pts;
    std::optional<std::size_t> columns;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line =
            detail::trim(text.substr(pos, end == std::string_view::npos ? text.npos : end - pos));
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto fields = detail::split(line, ',');
        if (!columns) {
            if (fields.size() == 2 && fields[0] == "x" && fields[1] == "y") {
                columns = 2;
            } else if (fields.size() == 3 && fields[0] == "x" && fields[1] == "y" &&
                       fields[2] == "d") {
                columns = 3;
            } else {
                throw Error(Errc::ParseError, "line " + std::to_string(line_no) +
                                                  ": expected header 'x,y' or 'x,y,d'");
            }
            continue;
        }
        if (fields.size() != *columns) {
            throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(*columns) + " fields");
        }
        RawPoint p;
        p.x = detail::parse_number(fields[0], line_no);
        p.y = detail::parse_number(fields[1], line_no);
        if (*columns == 3) p.d = detail::parse_number(fields[2], line_no);
        pts.push_back(p);
    }
    if (!columns) throw Error(Errc::ParseError, "empty data file");
    return validate_dataset(pts);
}

inline json data_to_json(const DataSet& data) {
    json j;
    j["knots"] = data.knots();
    j["values"] = data.values();
    j["derivatives"] = data.has_derivatives() ? json(data.derivatives()) : json(nullptr);
    return j;
}

inline DataSet data_from_json(const json& j) {
    try {
        auto x = j.at("knots").get<std::vector<double>>();
        auto y = j.at("values").get<std::vector<double>>();
        std::optional<std::vector<double>> d;
        if (j.contains("derivatives") && !j.at("derivatives").is_null()) {
            d = j.at("derivatives").get<std::vector<double>>();
        }
        return DataSet::from_columns(std::move(x), std::move(y), std::move(d));
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("data JSON: ") + e.what());
    }
}

inline DataSet parse_data_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, e.what());
    }
    return data_from_json(j);
}

/// Reads CSV or JSON data; JSON when the extension is .json or the text starts with '{'.
inline DataSet read_data_file(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    const auto body = detail::trim(text);
    if (path.extension() == ".json" || (!body.empty() && body.front() == '{')) {
        return parse_data_json(text);
    }
    return parse_data_csv(text);
}

inline std::string data_to_csv(const DataSet& data) {
    std::string out = data.has_derivatives() ? "x,y,d\n" : "x,y\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        out += format_double(data.x(i)) + "," + format_double(data.y(i));
        if (data.has_derivatives()) out += "," + format_double(data.d(i));
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

inline json model_to_json(const FifModel& model) {
    json j;
    j["data"] = data_to_json(model.data());
    j["alphas"] = model.params().alpha;
    j["u"] = model.params().u;
    j["v"] = model.params().v;
    j["kappa"] = model.params().kappa;
    return j;
}

/// Coefficients are always recomputed from data and parameters.
inline FifModel model_from_json(const json& j) {
    IfsParams p;
    try {
        p.alpha = j.at("alphas").get<std::vector<double>>();
        p.u = j.at("u").get<std::vector<double>>();
        p.v = j.at("v").get<std::vector<double>>();
        if (j.contains("kappa")) p.kappa = j.at("kappa").get<double>();
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("model JSON: ") + e.what());
    }
    return build_model(data_from_json(j.at("data")), p);
}

inline void save_model(const FifModel& model, const std::filesystem::path& path) {
    write_file_atomic(path, model_to_json(model).dump(2) + "\n");
}

inline FifModel load_model(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, path.string() + ": " + e.what());
    }
    return model_from_json(j);
}

// ---------------------------------------------------------------------------
// Samples and reports
// ---------------------------------------------------------------------------

inline std::string samples_to_csv(const std::vector<Sample>& samples) {
    std::string out = "x,y,d\n";
    for (const auto& s : samples) {
        out += format_double(s.x) + "," + format_double(s.y) + "," + format_double(s.dy) + "\n";
    }
    return out;
}

namespace detail {

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace detail

inline json constraint_to_json(const Constraint& c) {
    return std::visit(overloaded{
                          [](const Positivity&) { return json{{"type", "positivity"}}; },
                          [](const Rectangle& r) {
                              return json{{"type", "rectangle"},
                                          {"c", detail::finite_or_null(r.lower)},
                                          {"d", detail::finite_or_null(r.upper)}};
                          },
                          [](const AboveLine& l) {
                              return json{{"type", "above_line"}, {"m", l.slope}, {"k", l.intercept}};
                          },
                          [](const BelowLine& l) {
                              return json{{"type", "below_line"}, {"m", l.slope}, {"k", l.intercept}};
                          },
                      },
                      c);
}

inline json alpha_interval_to_json(const AlphaInterval& iv) {
    return json{{"lo", detail::finite_or_null(iv.lo)},
                {"hi", detail::finite_or_null(iv.hi)},
                {"lo_closed", iv.lo_closed},
                {"hi_closed", iv.hi_closed},
                {"lo_label", iv.lo_label},
                {"hi_label", iv.hi_label}};
}

inline json thresholds_to_json(const ThresholdSet& t) {
    json terms = json::array();
    for (const auto& term : t.terms) {
        terms.push_back(json{{"label", term.label}, {"value", detail::finite_or_null(term.value)}});
    }
    return json{{"terms", terms},
                {"binding", detail::finite_or_null(t.binding)},
                {"binding_label", t.binding_label},
                {"feasible", t.feasible()}};
}

/// Thresholds are reported at the given alphas (one per interval).
inline json bounds_to_json(const BoundsReport& report, const std::vector<double>& alphas) {
    json j;
    j["constraint"] = constraint_to_json(report.constraint());
    json intervals = json::array();
    for (std::size_t i = 0; i < report.intervals(); ++i) {
        json e;
        e["interval"] = i + 1;
        e["alpha_interval"] = alpha_interval_to_json(report.alpha_intervals()[i]);
        e["u"] = report.u()[i];
        e["alpha"] = alphas.at(i);
        e["v_threshold"] = thresholds_to_json(report.thresholds(i, alphas.at(i)));
        intervals.push_back(e);
    }
    j["intervals"] = intervals;
    return j;
}

inline json validation_to_json(const ValidationReport& report) {
    json j;
    j["constraint"] = constraint_to_json(report.constraint);
    json intervals = json::array();
    for (std::size_t i = 0; i < report.intervals.size(); ++i) {
        const auto& v = report.intervals[i];
        intervals.push_back(json{
            {"interval", i + 1},
            {"status", to_string(v.status)},
            {"boundary_case", v.boundary},
            {"binding_threshold_label", v.binding_threshold_label},
            {"alpha_interval", alpha_interval_to_json(v.alpha_interval)},
            {"margins",
             json{{"alpha", detail::finite_or_null(v.alpha_margin)},
                  {"v", detail::finite_or_null(v.v_margin)}}},
            {"alpha", v.alpha},
            {"v", v.v},
            {"v_threshold", detail::finite_or_null(v.v_threshold)},
        });
    }
    j["intervals"] = intervals;
    return j;
}

inline json margin_to_json(const MarginReport& m, const Constraint& c) {
    return json{{"constraint", constraint_to_json(c)},
                {"margin", m.margin},
                {"x", m.x},
                {"y", m.y},
                {"depth", m.depth},
                {"samples", m.samples}};
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

struct PlotOptions {
    std::optional<Constraint> constraint;
    std::string title;
};

/// Fixed 800x600 plot: sampled polyline, knots as circles, optional constraint overlay.
inline std::string render_svg(const DataSet& data, const std::vector<Sample>& samples,
                              const PlotOptions& opt = {}) {
    constexpr double width = 800.0;
    constexpr double height = 600.0;
    constexpr double left = 70.0;
    constexpr double right = 20.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;

    const double x0 = data.first_x();
    const double x1 = data.last_x();
    double y0 = std::numeric_limits<double>::infinity();
    double y1 = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        y0 = std::min(y0, s.y);
        y1 = std::max(y1, s.y);
    }
    for (double y : data.values()) {
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    if (opt.constraint) {
        std::visit(overloaded{
                       [&](const Positivity&) { y0 = std::min(y0, 0.0); },
                       [&](const Rectangle& r) {
                           if (std::isfinite(r.lower)) y0 = std::min(y0, r.lower);
                           if (std::isfinite(r.upper)) y1 = std::max(y1, r.upper);
                       },
                       [&](const auto& l) {
                           for (double x : {x0, x1}) {
                               y0 = std::min(y0, l.slope * x + l.intercept);
                               y1 = std::max(y1, l.slope * x + l.intercept);
                           }
                       },
                   },
                   *opt.constraint);
    }
    if (!(y1 > y0)) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    const auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
    const auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * (height - top - bottom); };
    const auto f = [](double v) { return format_fixed(v, 2); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" "
         "height=\"600\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    if (!opt.title.empty()) {
        s += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"16\">" + opt.title + "</text>\n";
    }
    // axes and ticks
    s += "<g stroke=\"black\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + f(left) + "\" y1=\"" + f(height - bottom) + "\" x2=\"" + f(width - right) +
         "\" y2=\"" + f(height - bottom) + "\"/>\n";
    s += "<line x1=\"" + f(left) + "\" y1=\"" + f(top) + "\" x2=\"" + f(left) + "\" y2=\"" +
         f(height - bottom) + "\"/>\n";
    s += "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    constexpr int ticks = 5;
    for (int k = 0; k <= ticks; ++k) {
        const double xv = x0 + (x1 - x0) * k / ticks;
        const double yv = y0 + (y1 - y0) * k / ticks;
        s += "<line x1=\"" + f(px(xv)) + "\" y1=\"" + f(height - bottom) + "\" x2=\"" + f(px(xv)) +
             "\" y2=\"" + f(height - bottom + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + f(px(xv)) + "\" y=\"" + f(height - bottom + 20) +
             "\" text-anchor=\"middle\">" + f(xv) + "</text>\n";
        s += "<line x1=\"" + f(left - 5) + "\" y1=\"" + f(py(yv)) + "\" x2=\"" + f(left) +
             "\" y2=\"" + f(py(yv)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + f(left - 8) + "\" y=\"" + f(py(yv) + 4) + "\" text-anchor=\"end\">" +
             f(yv) + "</text>\n";
    }
    s += "</g>\n";

    if (opt.constraint) {
        std::visit(
            overloaded{
                [&](const Positivity&) {
                    s += "<line x1=\"" + f(px(x0)) + "\" y1=\"" + f(py(0.0)) + "\" x2=\"" +
                         f(px(x1)) + "\" y2=\"" + f(py(0.0)) +
                         "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
                },
                [&](const Rectangle& r) {
                    const double lo = std::isfinite(r.lower) ? r.lower : y0;
                    const double hi = std::isfinite(r.upper) ? r.upper : y1;
                    s += "<rect x=\"" + f(px(x0)) + "\" y=\"" + f(py(hi)) + "\" width=\"" +
                         f(px(x1) - px(x0)) + "\" height=\"" + f(py(lo) - py(hi)) +
                         "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
                },
                [&](const auto& l) {
                    s += "<line x1=\"" + f(px(x0)) + "\" y1=\"" + f(py(l.slope * x0 + l.intercept)) +
                         "\" x2=\"" + f(px(x1)) + "\" y2=\"" + f(py(l.slope * x1 + l.intercept)) +
                         "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
                },
            },
            *opt.constraint);
    }

    s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    std::string previous;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        std::string point = f(px(samples[k].x)) + "," + f(py(samples[k].y));
        if (point == previous) continue;
        if (!previous.empty()) s += " ";
        s += point;
        previous = std::move(point);
    }
    s += "\"/>\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        s += "<circle cx=\"" + f(px(data.x(i))) + "\" cy=\"" + f(py(data.y(i))) +
             "\" r=\"4\" fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace rcsfif::io
