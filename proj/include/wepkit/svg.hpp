#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Self-contained SVG renderers for the reports. No external fonts, scripts or
// stylesheets; every figure is also emitted as a table elsewhere.
namespace wepkit::svg {

std::string escape(std::string_view s);

struct Bar {
    std::string series;  // legend entry, e.g. "standard" / "cot"
    double value = 0.0;
    std::optional<double> standard_error;
};

struct BarGroup {
    std::string label;  // x-axis category, e.g. a scenario
    std::vector<Bar> bars;
    std::string annotation;  // significance stars between the series
};

struct BarPanel {
    std::string title;
    std::vector<BarGroup> groups;
    std::optional<double> baseline;  // drawn as a dashed line
};

/// Panels side by side on a shared 0-100 axis.
std::string bar_chart(const std::vector<BarPanel>& panels, const std::string& title);

struct HeatMap {
    std::string title;
    std::vector<std::string> row_labels;
    std::vector<std::string> column_labels;
    std::vector<std::vector<std::optional<double>>> values;  // [row][column]; nullopt renders as n/a
    std::vector<std::vector<std::string>> annotations;       // stars per cell
};

std::string heat_map(const HeatMap& map);

struct BoxSeries {
    std::string label;
    std::vector<std::vector<double>> samples;  // one per category
};

/// Horizontal box-and-whisker plot (whiskers at 1.5 IQR, outliers omitted).
std::string box_plot(const std::vector<std::string>& categories, const std::vector<BoxSeries>& series,
                     const std::string& title, double axis_min = 0.0, double axis_max = 100.0);

}  // namespace wepkit::svg
