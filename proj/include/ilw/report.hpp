#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace ilw::report {

using json = nlohmann::ordered_json;

// Shortest text that round-trips a double (17 significant digits).
std::string fmt17(double x);

struct Assertion {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
};

struct Report {
    std::string command;
    json inputs = json::object();
    json outputs = json::object();
    std::vector<Assertion> assertions;
    double wall_ms = 0.0;

    void check(const std::string& name, bool pass, double value, double tolerance);
    bool all_pass() const;
    json to_json() const;
};

// RFC-4180-style table: CRLF rows, header line, 17-digit floats.
// Scalar metadata goes into leading `# key=value` comment lines.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}
    void comment(const std::string& key, double value);
    void comment(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);

private:
    std::ostream& os_;
};

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Standalone 800x600 line plot with axes, ticks, and a legend.
void write_svg(std::ostream& os, const std::string& title,
               const std::string& xlabel, const std::string& ylabel,
               const std::vector<Series>& series);

} // namespace ilw::report
