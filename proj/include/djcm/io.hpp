#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "djcm/observables.hpp"
#include "json.hpp"

namespace djcm::io {

// 17 significant digits, '.' decimal point regardless of locale.
std::string format_double(double v);

// header.size() == columns.size(); all columns equal length.
std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns);

// Long format x,y,q with x fastest.
std::string husimi_csv_text(const HusimiGrid& grid);

// Pretty-printed with sorted keys and a trailing newline.
std::string json_text(const nlohmann::json& j);

// Creates parent directories.  Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace djcm::io

namespace djcm::svg {

struct Rgb {
    unsigned char r, g, b;
};

// 256-entry perceptual colormap, index 0 = minimum.
const std::vector<Rgb>& colormap();

struct Line {
    std::string label;
    const std::vector<double>* x;
    const std::vector<double>* y;
};

std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Line>& lines);

std::string heatmap(const std::string& title, const HusimiGrid& grid);

}  // namespace djcm::svg
