#include "wepkit/svg.hpp"

#include "wepkit/text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

namespace wepkit::svg {

namespace {

constexpr std::array<const char*, 6> kPalette{"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#b07aa1"};

std::string num(double v) { return text::format_fixed(v, 1); }

std::string header(double width, double height) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
           "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string text_at(double x, double y, std::string_view s, std::string_view anchor = "middle",
                    std::string_view extra = "") {
    std::string out = "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + std::string(anchor) + "\"";
    if (!extra.empty()) out += " " + std::string(extra);
    return out + ">" + escape(s) + "</text>\n";
}

std::string line(double x1, double y1, double x2, double y2, std::string_view stroke, std::string_view extra = "") {
    std::string out = "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
                      "\" stroke=\"" + std::string(stroke) + "\"";
    if (!extra.empty()) out += " " + std::string(extra);
    return out + "/>\n";
}

std::string rect(double x, double y, double w, double h, std::string_view fill, std::string_view extra = "") {
    std::string out = "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(std::max(w, 0.0)) +
                      "\" height=\"" + num(std::max(h, 0.0)) + "\" fill=\"" + std::string(fill) + "\"";
    if (!extra.empty()) out += " " + std::string(extra);
    return out + "/>\n";
}

// Linear interpolation of the sorted sample at quantile q.
double quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string legend(const std::vector<std::string>& names, double x, double y) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const double yy = y + 16.0 * static_cast<double>(i);
        out += rect(x, yy - 9, 10, 10, kPalette[i % kPalette.size()]);
        out += text_at(x + 14, yy, names[i], "start");
    }
    return out;
}

}  // namespace

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string bar_chart(const std::vector<BarPanel>& panels, const std::string& title) {
    std::vector<std::string> series;
    for (const auto& p : panels) {
        for (const auto& g : p.groups) {
            for (const auto& b : g.bars) {
                if (std::ranges::find(series, b.series) == series.end()) series.push_back(b.series);
            }
        }
    }
    const double panel_w = 240, plot_h = 200, top = 50, left = 50, gap = 30;
    const double width = left + static_cast<double>(panels.size()) * (panel_w + gap) + 100;
    const double height = top + plot_h + 70;
    std::string out = header(width, height);
    out += text_at(width / 2, 20, title, "middle", "font-size=\"14\"");
    auto y_of = [&](double v) { return top + plot_h * (1.0 - std::clamp(v, 0.0, 100.0) / 100.0); };

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const auto& panel = panels[pi];
        const double x0 = left + static_cast<double>(pi) * (panel_w + gap);
        out += text_at(x0 + panel_w / 2, top - 10, panel.title);
        for (int tick = 0; tick <= 100; tick += 20) {
            const double y = y_of(tick);
            out += line(x0, y, x0 + panel_w, y, "#dddddd");
            if (pi == 0) out += text_at(x0 - 5, y + 4, std::to_string(tick), "end");
        }
        out += line(x0, top, x0, top + plot_h, "black");
        out += line(x0, top + plot_h, x0 + panel_w, top + plot_h, "black");

        const double group_w = panel.groups.empty() ? panel_w : panel_w / static_cast<double>(panel.groups.size());
        for (std::size_t gi = 0; gi < panel.groups.size(); ++gi) {
            const auto& g = panel.groups[gi];
            const double gx = x0 + group_w * static_cast<double>(gi);
            const double bar_w = (group_w * 0.8) / static_cast<double>(std::max<std::size_t>(g.bars.size(), 1));
            double highest = 0.0;
            for (std::size_t bi = 0; bi < g.bars.size(); ++bi) {
                const auto& b = g.bars[bi];
                const auto si = static_cast<std::size_t>(std::ranges::find(series, b.series) - series.begin());
                const double bx = gx + group_w * 0.1 + bar_w * static_cast<double>(bi);
                out += rect(bx, y_of(b.value), bar_w - 2, y_of(0) - y_of(b.value), kPalette[si % kPalette.size()]);
                double top_value = b.value;
                if (b.standard_error && *b.standard_error > 0) {
                    const double cx = bx + (bar_w - 2) / 2;
                    top_value = b.value + *b.standard_error;
                    out += line(cx, y_of(b.value - *b.standard_error), cx, y_of(top_value), "black");
                }
                highest = std::max(highest, top_value);
                out += text_at(bx + (bar_w - 2) / 2, y_of(top_value) - 3, num(b.value), "middle", "font-size=\"8\"");
            }
            if (!g.annotation.empty()) {
                out += text_at(gx + group_w / 2, y_of(highest) - 13, g.annotation, "middle", "font-weight=\"bold\"");
            }
            out += text_at(gx + group_w / 2, top + plot_h + 15, g.label);
        }
        if (panel.baseline) {
            const double y = y_of(*panel.baseline);
            out += line(x0, y, x0 + panel_w, y, "#d62728", "stroke-dasharray=\"6,4\" stroke-width=\"1.5\"");
        }
    }
    out += legend(series, width - 90, top + 10);
    const double ly = top + 10 + 16.0 * static_cast<double>(series.size());
    out += line(width - 90, ly - 4, width - 80, ly - 4, "#d62728", "stroke-dasharray=\"3,2\" stroke-width=\"1.5\"");
    out += text_at(width - 76, ly, "random baseline", "start");
    return out + "</svg>\n";
}

std::string heat_map(const HeatMap& map) {
    const double cell_w = 90, cell_h = 20, left = 130, top = 60;
    const double width = left + cell_w * static_cast<double>(map.column_labels.size()) + 120;
    const double height = top + cell_h * static_cast<double>(map.row_labels.size()) + 40;
    double vmax = 0.0;
    for (const auto& row : map.values) {
        for (const auto& v : row) {
            if (v) vmax = std::max(vmax, *v);
        }
    }
    if (vmax <= 0.0) vmax = 1.0;
    std::string out = header(width, height);
    out += text_at(width / 2, 20, map.title, "middle", "font-size=\"14\"");
    for (std::size_t c = 0; c < map.column_labels.size(); ++c) {
        out += text_at(left + cell_w * (static_cast<double>(c) + 0.5), top - 8, map.column_labels[c], "middle",
                       "font-size=\"9\"");
    }
    for (std::size_t r = 0; r < map.row_labels.size(); ++r) {
        const double y = top + cell_h * static_cast<double>(r);
        out += text_at(left - 6, y + cell_h * 0.7, map.row_labels[r], "end");
        for (std::size_t c = 0; c < map.column_labels.size(); ++c) {
            const double x = left + cell_w * static_cast<double>(c);
            const auto v = r < map.values.size() && c < map.values[r].size() ? map.values[r][c] : std::nullopt;
            if (!v) {
                out += rect(x, y, cell_w, cell_h, "#eeeeee", "stroke=\"white\"");
                out += text_at(x + cell_w / 2, y + cell_h * 0.7, "n/a");
                continue;
            }
            // White to dark red.
            const double t = std::clamp(*v / vmax, 0.0, 1.0);
            const int g = static_cast<int>(std::lround(255 * (1.0 - t)));
            const std::string fill = "rgb(" + std::to_string(255 - static_cast<int>(std::lround(t * 80))) + "," +
                                     std::to_string(g) + "," + std::to_string(g) + ")";
            out += rect(x, y, cell_w, cell_h, fill, "stroke=\"white\"");
            std::string label = text::format_fixed(*v, 2);
            if (r < map.annotations.size() && c < map.annotations[r].size()) label += map.annotations[r][c];
            out += text_at(x + cell_w / 2, y + cell_h * 0.7, label, "middle", t > 0.6 ? "fill=\"white\"" : "");
        }
    }
    out += text_at(left, height - 12, "KL divergence in nats; * p<0.10, ** p<0.05, *** p<0.01", "start",
                   "font-size=\"9\"");
    return out + "</svg>\n";
}

std::string box_plot(const std::vector<std::string>& categories, const std::vector<BoxSeries>& series,
                     const std::string& title, double axis_min, double axis_max) {
    const double row_h = 14.0 * static_cast<double>(std::max<std::size_t>(series.size(), 1)) + 8;
    const double left = 130, top = 50, plot_w = 420;
    const double width = left + plot_w + 140;
    const double height = top + row_h * static_cast<double>(categories.size()) + 40;
    auto x_of = [&](double v) { return left + plot_w * (std::clamp(v, axis_min, axis_max) - axis_min) / (axis_max - axis_min); };
    std::string out = header(width, height);
    out += text_at(width / 2, 20, title, "middle", "font-size=\"14\"");
    const double span = axis_max - axis_min;
    for (int i = 0; i <= 10; ++i) {
        const double v = axis_min + span * i / 10.0;
        const double x = x_of(v);
        out += line(x, top, x, height - 30, "#eeeeee");
        out += text_at(x, height - 16, text::format_double(std::round(v * 10) / 10));
    }
    for (std::size_t c = 0; c < categories.size(); ++c) {
        const double y0 = top + row_h * static_cast<double>(c);
        out += text_at(left - 6, y0 + row_h / 2 + 4, categories[c], "end");
        for (std::size_t s = 0; s < series.size(); ++s) {
            if (c >= series[s].samples.size() || series[s].samples[c].empty()) continue;
            auto sorted = series[s].samples[c];
            std::ranges::sort(sorted);
            const double q1 = quantile(sorted, 0.25), q2 = quantile(sorted, 0.5), q3 = quantile(sorted, 0.75);
            const double iqr = q3 - q1;
            double lo = q1, hi = q3;
            for (double v : sorted) {
                if (v >= q1 - 1.5 * iqr) { lo = v; break; }
            }
            for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
                if (*it <= q3 + 1.5 * iqr) { hi = *it; break; }
            }
            const double cy = y0 + 4 + 14.0 * static_cast<double>(s) + 5;
            const char* colour = kPalette[s % kPalette.size()];
            out += line(x_of(lo), cy, x_of(q1), cy, colour);
            out += line(x_of(q3), cy, x_of(hi), cy, colour);
            out += rect(x_of(q1), cy - 5, x_of(q3) - x_of(q1), 10, colour, "fill-opacity=\"0.5\" stroke=\"black\"");
            out += line(x_of(q2), cy - 5, x_of(q2), cy + 5, "black", "stroke-width=\"2\"");
        }
    }
    std::vector<std::string> names;
    for (const auto& s : series) names.push_back(s.label);
    out += legend(names, left + plot_w + 20, top + 10);
    return out + "</svg>\n";
}

}  // namespace wepkit::svg
