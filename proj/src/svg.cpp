#include "azitrack/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "azitrack/common.hpp"

namespace azitrack {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 40.0;

double x_of(int frame, int last_frame) {
    const double span = std::max(1, last_frame);
    return kMargin + (kWidth - 2 * kMargin) * double(frame) / span;
}

double y_of(double az_rad) {
    // [-pi, pi) mapped top-to-bottom as +180..-180 degrees
    return kMargin + (kHeight - 2 * kMargin) * (kPi - az_rad) / kTwoPi;
}

std::string mask_color(double m) {
    // blue (m=0) -> red (m=1)
    const int r = int(std::lround(255.0 * std::clamp(m, 0.0, 1.0)));
    const int b = 255 - r;
    return "rgb(" + std::to_string(r) + ",60," + std::to_string(b) + ")";
}

// Break polylines at wrap jumps so tracks crossing +-pi do not draw a
// vertical stroke across the plot.
void polyline(std::ofstream& out, const std::vector<std::pair<int, double>>& pts,
              int last_frame, const std::string& style) {
    std::string path;
    bool open = false;
    double prev = 0.0;
    for (const auto& [frame, az] : pts) {
        if (open && std::abs(az - prev) > kPi) open = false;
        path += open ? " L" : (path.empty() ? "M" : " M");
        path += std::to_string(x_of(frame, last_frame)) + " " + std::to_string(y_of(az));
        open = true;
        prev = az;
    }
    if (!path.empty()) {
        out << "<path d=\"" << path << "\" fill=\"none\" " << style << "/>\n";
    }
}

} // namespace

void write_scenario_svg(const std::string& path, const std::vector<Observation>& obs,
                        const TruthTable& truth, const TrackResult* tracks,
                        const std::string& title) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);

    int last_frame = int(truth.size()) - 1;
    for (const auto& o : obs) last_frame = std::max(last_frame, o.frame);
    if (tracks) last_frame = std::max(last_frame, int(tracks->points.size()) - 1);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    }
    for (int deg = -180; deg <= 180; deg += 90) {
        const double y = y_of(deg2rad(double(deg)));
        out << "<line x1=\"" << kMargin << "\" y1=\"" << y << "\" x2=\"" << kWidth - kMargin
            << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"4\" y=\"" << y + 4 << "\" font-family=\"sans-serif\" "
            << "font-size=\"10\">" << deg << "</text>\n";
    }

    for (const auto& o : obs) {
        const double m = o.masks.empty() ? 0.5 : o.masks.back();
        out << "<circle cx=\"" << x_of(o.frame, last_frame) << "\" cy=\"" << y_of(o.az.rad)
            << "\" r=\"1.5\" fill=\"" << mask_color(m) << "\" fill-opacity=\"0.6\"/>\n";
    }

    if (!truth.empty()) {
        const std::size_t q_count = truth.front().size();
        for (std::size_t q = 0; q < q_count; ++q) {
            std::vector<std::pair<int, double>> pts;
            for (std::size_t f = 0; f < truth.size(); ++f) {
                if (truth[f][q].active) pts.emplace_back(int(f), truth[f][q].az.rad);
            }
            polyline(out, pts, last_frame,
                     "stroke=\"#888888\" stroke-width=\"2\" stroke-dasharray=\"6 3\"");
        }
    }

    if (tracks) {
        const char* colors[] = {"#000000", "#006600", "#660066", "#666600", "#006666"};
        for (int q = 0; q < tracks->num_speakers; ++q) {
            std::vector<std::pair<int, double>> pts;
            for (std::size_t f = 0; f < tracks->points.size(); ++f) {
                pts.emplace_back(int(f), tracks->points[f][q].az.rad);
            }
            polyline(out, pts, last_frame,
                     std::string("stroke=\"") + colors[q % 5] + "\" stroke-width=\"1.5\"");
        }
    }

    out << "</svg>\n";
    if (!out) throw IoError("write failed: " + path);
}

} // namespace azitrack
