#pragma once

#include <string>
#include <utility>
#include <vector>

namespace leosim {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool right_axis = false;
    std::string color = "#1f77b4";
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string left_label;
    std::string right_label;
    std::vector<Series> series;
    int width = 720;
    int height = 440;

    std::string render() const;
};

// [lo, hi] widened by `margin` of its span on each side; a flat range gets +-1.
std::pair<double, double> range_with_margin(double lo, double hi, double margin = 0.05);

}  // namespace leosim
