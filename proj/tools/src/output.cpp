#include "output.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace quasibif::cli {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    return out + "\"";
}

std::string value_text(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double map(double v) const { return log ? std::log10(v) : v; }
    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

Axis fit_axis(const std::vector<double>& values, bool log) {
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values)
        if (a.usable(v)) {
            lo = std::min(lo, a.map(v));
            hi = std::max(hi, a.map(v));
        }
    if (!(lo <= hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    a.lo = lo - pad;
    a.hi = hi + pad;
    return a;
}

std::string tick_text(double mapped, bool log) {
    return log ? fmt::format("1e{:.3g}", mapped) : fmt::format("{:.4g}", mapped);
}

}  // namespace

std::string csv_number(double x) { return value_text(x); }

std::string CsvTable::text() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + csv_field(header_[i]);
    out += "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
        out += "\n";
    }
    return out;
}

Record& Record::section(const std::string& name) {
    if (!text_.empty()) text_ += "\n";
    text_ += "[" + name + "]\n";
    return *this;
}

Record& Record::set(const std::string& key, double value) { return raw(key, value_text(value)); }

Record& Record::set(const std::string& key, int value) { return raw(key, std::to_string(value)); }

Record& Record::set(const std::string& key, bool value) { return raw(key, value ? "true" : "false"); }

Record& Record::set(const std::string& key, const std::string& value) { return raw(key, quote(value)); }

Record& Record::set(const std::string& key, const std::vector<double>& values) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + value_text(values[i]);
    return raw(key, s + "]");
}

Record& Record::raw(const std::string& key, const std::string& value_text) {
    const bool bare = !key.empty() && key.find_first_not_of(
                                          "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") ==
                                          std::string::npos;
    text_ += (bare ? key : quote(key)) + " = " + value_text + "\n";
    return *this;
}

std::string Plot::svg() const {
    constexpr double width = 720.0, height = 480.0;
    constexpr double left = 80.0, right = 30.0, top = 40.0, bottom = 60.0;
    std::vector<double> xs, ys;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xs.push_back(x);
            ys.push_back(y);
        }
    for (const auto& m : vertical_lines) xs.push_back(m.x);
    const Axis ax = fit_axis(xs, log_x);
    const Axis ay = fit_axis(ys, log_y);
    auto px = [&](double x) { return left + (ax.map(x) - ax.lo) / (ax.hi - ax.lo) * (width - left - right); };
    auto py = [&](double y) { return height - bottom - (ay.map(y) - ay.lo) / (ay.hi - ay.lo) * (height - top - bottom); };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n", width,
        height);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
    out += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
                       width / 2, xml_escape(title));
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left, top,
                       width - left - right, height - top - bottom);
    for (int i = 0; i <= 4; ++i) {
        const double t = i / 4.0;
        const double mx = ax.lo + t * (ax.hi - ax.lo);
        const double my = ay.lo + t * (ay.hi - ay.lo);
        const double sx = left + t * (width - left - right);
        const double sy = height - bottom - t * (height - top - bottom);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"black\"/>\n", sx,
                           height - bottom, height - bottom + 5);
        out += fmt::format(
            "<text x=\"{:.2f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            sx, height - bottom + 18, tick_text(mx, log_x));
        out += fmt::format("<line x1=\"{0}\" y1=\"{2:.2f}\" x2=\"{1}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n", left - 5, left,
                           sy);
        out += fmt::format(
            "<text x=\"{}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            left - 8, sy + 4, tick_text(my, log_y));
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
                       left + (width - left - right) / 2, height - 16, xml_escape(x_label));
    out += fmt::format(
        "<text x=\"18\" y=\"{0}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 18 {0})\">{1}</text>\n",
        top + (height - top - bottom) / 2, xml_escape(y_label));
    for (const auto& m : vertical_lines) {
        if (!ax.usable(m.x)) continue;
        out += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n",
            px(m.x), top, height - bottom);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                           px(m.x) + 3, top + 12, xml_escape(m.label));
    }
    int legend_row = 0;
    for (const auto& s : series) {
        std::vector<std::string> runs;
        std::string cur;
        for (const auto& [x, y] : s.points) {
            if (!ax.usable(x) || !ay.usable(y)) {
                if (!cur.empty()) runs.push_back(std::move(cur));
                cur.clear();
                continue;
            }
            cur += fmt::format("{:.2f},{:.2f} ", px(x), py(y));
        }
        if (!cur.empty()) runs.push_back(std::move(cur));
        const std::string dash = s.dashed ? " stroke-dasharray=\"5 3\"" : "";
        for (const auto& r : runs)
            out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{} points=\"{}\"/>\n", s.stroke,
                               s.width, dash, r);
        if (!s.label.empty()) {
            const double ly = top + 14 + 16 * legend_row++;
            out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"{}/>\n",
                               width - right - 150, ly - 4, width - right - 125, ly - 4, s.stroke, s.width, dash);
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                               width - right - 120, ly, xml_escape(s.label));
        }
    }
    out += "</svg>\n";
    return out;
}

std::string write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
    return path.string();
}

}  // namespace quasibif::cli
