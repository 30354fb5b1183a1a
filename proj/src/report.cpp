#include "ilw/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ilw::report {

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void Report::check(const std::string& name, bool pass, double value, double tolerance) {
    assertions.push_back({name, pass, value, tolerance});
}

bool Report::all_pass() const {
    return std::all_of(assertions.begin(), assertions.end(),
                       [](const Assertion& a) { return a.pass; });
}

json Report::to_json() const {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    json arr = json::array();
    for (const Assertion& a : assertions) {
        json e;
        e["name"] = a.name;
        e["pass"] = a.pass;
        e["value"] = a.value;
        e["tolerance"] = a.tolerance;
        arr.push_back(std::move(e));
    }
    j["assertions"] = std::move(arr);
    j["wall_ms"] = wall_ms;
    return j;
}

void CsvWriter::comment(const std::string& key, double value) {
    os_ << "# " << key << "=" << fmt17(value) << "\r\n";
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
    os_ << "# " << key << "=" << value << "\r\n";
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) os_ << ",";
        os_ << names[i];
    }
    os_ << "\r\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) os_ << ",";
        os_ << fmt17(values[i]);
    }
    os_ << "\r\n";
}

namespace {

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

const char* palette(size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#17becf"};
    return colors[i % 6];
}

} // namespace

void write_svg(std::ostream& os, const std::string& title,
               const std::string& xlabel, const std::string& ylabel,
               const std::vector<Series>& series) {
    const double W = 800, H = 600;
    const double x0 = 75, x1 = 770, y0 = 550, y1 = 50;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Series& s : series) {
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (!(xmin < xmax)) { xmin -= 0.5; xmax += 0.5; }
    if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const auto px = [&](double x) { return x0 + (x - xmin) / (xmax - xmin) * (x1 - x0); };
    const auto py = [&](double y) { return y0 + (y - ymin) / (ymax - ymin) * (y1 - y0); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
       << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
       << "<text x=\"" << W / 2 << "\" y=\"28\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
       << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
       << "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 5.0;
        const double fy = ymin + (ymax - ymin) * i / 5.0;
        const double tx = px(fx), ty = py(fy);
        os << "<line x1=\"" << tx << "\" y1=\"" << y0 << "\" x2=\"" << tx << "\" y2=\""
           << y0 + 5 << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << tx << "\" y=\"" << y0 + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << tick_label(fx) << "</text>\n"
           << "<line x1=\"" << x0 - 5 << "\" y1=\"" << ty << "\" x2=\"" << x0 << "\" y2=\""
           << ty << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << x0 - 8 << "\" y=\"" << ty + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << tick_label(fy) << "</text>\n";
        if (i > 0) {
            os << "<line x1=\"" << x0 << "\" y1=\"" << ty << "\" x2=\"" << x1 << "\" y2=\""
               << ty << "\" stroke=\"#dddddd\"/>\n";
        }
    }

    os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << H - 10
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
       << "</text>\n"
       << "<text x=\"18\" y=\"" << (y0 + y1) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
          "transform=\"rotate(-90 18 " << (y0 + y1) / 2 << ")\">" << ylabel << "</text>\n";

    for (size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << palette(s)
           << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < series[s].x.size(); ++i) {
            if (i) os << " ";
            os << px(series[s].x[i]) << "," << py(series[s].y[i]);
        }
        os << "\"/>\n";
    }

    for (size_t s = 0; s < series.size(); ++s) {
        const double ly = y1 + 18 + 18 * static_cast<double>(s);
        os << "<line x1=\"" << x1 - 150 << "\" y1=\"" << ly << "\" x2=\"" << x1 - 120
           << "\" y2=\"" << ly << "\" stroke=\"" << palette(s) << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << x1 - 112 << "\" y=\"" << ly + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label
           << "</text>\n";
    }

    os << "</svg>\n";
}

} // namespace ilw::report
