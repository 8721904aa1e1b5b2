// Copyright 2026 The mgroc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg_plot.hpp"

#include "mgroc/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mgroc::svg {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x0, x1, y0, y1;
    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void open_svg(std::ostringstream& os, const std::string& title) {
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
       << "</text>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
    os << "<g stroke=\"black\" fill=\"none\">\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight << "\" height=\""
       << kHeight - kTop - kBottom << "\"/>\n</g>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = f.x0 + (f.x1 - f.x0) * i / 5.0;
        const double yv = f.y0 + (f.y1 - f.y0) * i / 5.0;
        os << "<text x=\"" << f.px(xv) << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"middle\">"
           << std::setprecision(3) << std::defaultfloat << xv << std::fixed << std::setprecision(2) << "</text>\n";
        os << "<text x=\"" << kLeft - 6 << "\" y=\"" << f.py(yv) + 4 << "\" text-anchor=\"end\">"
           << std::setprecision(3) << std::defaultfloat << yv << std::fixed << std::setprecision(2) << "</text>\n";
    }
    os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">" << escape(xlabel)
       << "</text>\n";
    os << "<text transform=\"translate(16," << kHeight / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(ylabel) << "</text>\n";
}

}  // namespace

std::string histogram(std::span<const double> values, const std::string& title, const std::string& color) {
    std::ostringstream os;
    open_svg(os, title);
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    double lo = *lo_it, hi = *hi_it;
    if (hi <= lo) hi = lo + 1.0;
    const auto bins = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(std::sqrt(values.size()))), 5, 40);
    std::vector<std::size_t> counts(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
        ++counts[std::min(b, bins - 1)];
    }
    const double top = static_cast<double>(*std::max_element(counts.begin(), counts.end()));
    const Frame f{lo, hi, 0.0, top * 1.05};
    axes(os, f, "score", "count");
    const double bw = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double x0 = f.px(lo + bw * static_cast<double>(b));
        const double x1 = f.px(lo + bw * static_cast<double>(b + 1));
        const double y = f.py(static_cast<double>(counts[b]));
        os << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"" << x1 - x0 << "\" height=\"" << f.py(0) - y
           << "\" fill=\"" << color << "\" fill-opacity=\"0.6\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string roc_plot(const std::vector<Series>& series, const std::string& title) {
    std::ostringstream os;
    open_svg(os, title);
    const Frame f{0.0, 1.0, 0.0, 1.0};
    axes(os, f, "false positive rate", "true positive rate");
    os << "<line x1=\"" << f.px(0) << "\" y1=\"" << f.py(0) << "\" x2=\"" << f.px(1) << "\" y2=\"" << f.py(1)
       << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"2,3\"/>\n";
    double legend_y = kTop + 16;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"" << s.width << '"';
        if (s.dashed) os << " stroke-dasharray=\"6,4\"";
        os << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) os << f.px(s.x[i]) << ',' << f.py(s.y[i]) << ' ';
        os << "\"/>\n";
        if (!s.name.empty()) {
            const double lx = f.px(0.62);
            os << "<line x1=\"" << lx << "\" y1=\"" << legend_y + kHeight * 0.55 << "\" x2=\"" << lx + 24 << "\" y2=\""
               << legend_y + kHeight * 0.55 << "\" stroke=\"" << s.color << "\" stroke-width=\"" << s.width << '"'
               << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
            os << "<text x=\"" << lx + 30 << "\" y=\"" << legend_y + kHeight * 0.55 + 4 << "\">" << escape(s.name)
               << "</text>\n";
            legend_y += 16;
        }
    }
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace mgroc::svg
