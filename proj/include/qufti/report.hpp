// qufti/report.hpp
//
// Flat-file result emission: CSV tables with a fixed 15-significant-digit
// decimal rendering (LF line endings, '.' decimal separator, RFC-4180-style
// quoting) and standalone SVG line charts with a log-scale y axis.  The
// rendering path is locale-independent and deterministic, so identical
// results produce byte-identical files.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "qufti/error.hpp"

namespace qufti {

namespace detail {

/// Shortest-faithful decimal with the given significant digits (the %g rule:
/// scientific notation only when the exponent demands it), via
/// std::to_chars, which is locale-independent.
inline std::string format_significant(double value, int digits) {
    char buffer[64];
    const std::to_chars_result res =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, digits);
    return std::string(buffer, res.ptr);
}

}  // namespace detail

/// One CSV cell: free text, a real number (15 significant digits), or an
/// integer (exact decimal).
struct CsvCell {
    enum class Kind { text, number, integer };
    Kind kind = Kind::text;
    std::string text;
    double number = 0.0;
    long long whole = 0;

    static CsvCell of_text(std::string value) {
        CsvCell c;
        c.kind = Kind::text;
        c.text = std::move(value);
        return c;
    }
    static CsvCell of_number(double value) {
        CsvCell c;
        c.kind = Kind::number;
        c.number = value;
        return c;
    }
    static CsvCell of_integer(long long value) {
        CsvCell c;
        c.kind = Kind::integer;
        c.whole = value;
        return c;
    }

    std::string render() const {
        switch (kind) {
            case Kind::number: return detail::format_significant(number, 15);
            case Kind::integer: return std::to_string(whole);
            case Kind::text: break;
        }
        return text;
    }
};

/// Rectangular table with a header row; every row must match the header
/// arity.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
        if (header_.empty()) {
            throw ArityError("CsvTable: header must have at least one column");
        }
    }

    void add_row(std::vector<CsvCell> row) {
        if (row.size() != header_.size()) {
            throw ArityError("CsvTable: row arity " + std::to_string(row.size()) +
                             " does not match header arity " + std::to_string(header_.size()));
        }
        rows_.push_back(std::move(row));
    }

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<CsvCell>>& rows() const { return rows_; }
    std::size_t columns() const { return header_.size(); }

    /// Column index by header name.
    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (header_[i] == name) return i;
        }
        throw IndexError("CsvTable: no column named '" + name + "'");
    }

    /// Full document: header line plus one line per row, LF-terminated.
    std::string to_csv() const {
        std::string out;
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (i) out += ',';
            out += quote(header_[i]);
        }
        out += '\n';
        for (const std::vector<CsvCell>& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += quote(row[i].render());
            }
            out += '\n';
        }
        return out;
    }

private:
    static std::string quote(const std::string& field) {
        if (field.find_first_of(",\"\n") == std::string::npos) return field;
        std::string out = "\"";
        for (char ch : field) {
            if (ch == '"') out += '"';
            out += ch;
        }
        out += '"';
        return out;
    }

    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

/// Writes the table to `path`; failures carry the path in the message.
inline void emit_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("emit_csv: cannot open '" + path + "' for writing");
    }
    out << table.to_csv();
    out.flush();
    if (!out) {
        throw IoError("emit_csv: write to '" + path + "' failed");
    }
}

/// One chart series: a labelled polyline.
struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace detail

/// Writes a standalone SVG line chart with one polyline per series.  The y
/// axis is logarithmic by default (variances span decades); points that are
/// non-finite, or non-positive under a log axis, are skipped.
inline void emit_svg(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series, bool log_y = true) {
    static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                     "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
    constexpr double kWidth = 800.0, kHeight = 520.0;
    constexpr double kLeft = 80.0, kRight = 30.0, kTop = 50.0, kBottom = 60.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    const auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!log_y || y > 0.0);
    };

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const SvgSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!usable(x, y)) continue;
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (!(x_min <= x_max)) {  // no drawable points: keep a unit box
        x_min = 0.0;
        x_max = 1.0;
        y_min = log_y ? 0.1 : 0.0;
        y_max = 1.0;
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min * (log_y ? 10.0 : 1.0) + (log_y ? 0.0 : 1.0);

    const double ly_min = log_y ? std::log10(y_min) : y_min;
    const double ly_max = log_y ? std::log10(y_max) : y_max;
    const auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto sy = [&](double y) {
        const double ly = log_y ? std::log10(y) : y;
        return kTop + (1.0 - (ly - ly_min) / (ly_max - ly_min)) * plot_h;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           detail::format_significant(kWidth, 6) + "\" height=\"" +
           detail::format_significant(kHeight, 6) + "\" viewBox=\"0 0 800 520\">\n";
    svg += "<rect width=\"800\" height=\"520\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + detail::xml_escape(title) + "</text>\n";

    // Axes.
    svg += "<line x1=\"" + detail::format_significant(kLeft, 6) + "\" y1=\"" +
           detail::format_significant(kTop + plot_h, 6) + "\" x2=\"" +
           detail::format_significant(kLeft + plot_w, 6) + "\" y2=\"" +
           detail::format_significant(kTop + plot_h, 6) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + detail::format_significant(kLeft, 6) + "\" y1=\"" +
           detail::format_significant(kTop, 6) + "\" x2=\"" +
           detail::format_significant(kLeft, 6) + "\" y2=\"" +
           detail::format_significant(kTop + plot_h, 6) + "\" stroke=\"black\"/>\n";

    // X ticks: six evenly spaced values.
    for (int i = 0; i <= 5; ++i) {
        const double x = x_min + (x_max - x_min) * i / 5.0;
        const double px = sx(x);
        svg += "<line x1=\"" + detail::format_significant(px, 6) + "\" y1=\"" +
               detail::format_significant(kTop + plot_h, 6) + "\" x2=\"" +
               detail::format_significant(px, 6) + "\" y2=\"" +
               detail::format_significant(kTop + plot_h + 5, 6) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::format_significant(px, 6) + "\" y=\"" +
               detail::format_significant(kTop + plot_h + 20, 6) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::format_significant(x, 4) + "</text>\n";
    }
    // Y ticks: decade lines under a log axis, five evenly spaced otherwise.
    if (log_y) {
        const int dec_lo = static_cast<int>(std::floor(ly_min));
        const int dec_hi = static_cast<int>(std::ceil(ly_max));
        for (int dec = dec_lo; dec <= dec_hi; ++dec) {
            const double y = std::pow(10.0, dec);
            if (y < y_min * 0.999 || y > y_max * 1.001) continue;
            const double py = sy(y);
            svg += "<line x1=\"" + detail::format_significant(kLeft, 6) + "\" y1=\"" +
                   detail::format_significant(py, 6) + "\" x2=\"" +
                   detail::format_significant(kLeft + plot_w, 6) + "\" y2=\"" +
                   detail::format_significant(py, 6) +
                   "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            svg += "<text x=\"" + detail::format_significant(kLeft - 8, 6) + "\" y=\"" +
                   detail::format_significant(py + 4, 6) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
                   detail::format_significant(y, 4) + "</text>\n";
        }
    } else {
        for (int i = 0; i <= 4; ++i) {
            const double y = y_min + (y_max - y_min) * i / 4.0;
            const double py = sy(y);
            svg += "<text x=\"" + detail::format_significant(kLeft - 8, 6) + "\" y=\"" +
                   detail::format_significant(py + 4, 6) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
                   detail::format_significant(y, 4) + "</text>\n";
        }
    }
    svg += "<text x=\"" + detail::format_significant(kLeft + plot_w / 2, 6) + "\" y=\"" +
           detail::format_significant(kHeight - 15, 6) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           detail::xml_escape(x_label) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + detail::format_significant(kTop + plot_h / 2, 6) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 " +
           detail::format_significant(kTop + plot_h / 2, 6) + ")\">" +
           detail::xml_escape(y_label) + "</text>\n";

    // Series polylines plus a legend entry each.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string pts;
        for (const auto& [x, y] : series[si].points) {
            if (!usable(x, y)) continue;
            if (!pts.empty()) pts += ' ';
            pts += detail::format_significant(sx(x), 8) + "," +
                   detail::format_significant(sy(y), 8);
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
        const double ly = kTop + 16.0 + 18.0 * static_cast<double>(si);
        svg += "<line x1=\"" + detail::format_significant(kLeft + plot_w - 150, 6) + "\" y1=\"" +
               detail::format_significant(ly - 4, 6) + "\" x2=\"" +
               detail::format_significant(kLeft + plot_w - 125, 6) + "\" y2=\"" +
               detail::format_significant(ly - 4, 6) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + detail::format_significant(kLeft + plot_w - 118, 6) + "\" y=\"" +
               detail::format_significant(ly, 6) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::xml_escape(series[si].label) + "</text>\n";
    }
    svg += "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("emit_svg: cannot open '" + path + "' for writing");
    }
    out << svg;
    out.flush();
    if (!out) {
        throw IoError("emit_svg: write to '" + path + "' failed");
    }
}

}  // namespace qufti
