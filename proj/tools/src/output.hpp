#pragma once

#include <string>
#include <utility>
#include <vector>

namespace quasibif::cli {

// 17 significant digits; inf and nan spelled out.
std::string csv_number(double x);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    std::size_t size() const { return rows_.size(); }
    std::string text() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Structured-text record in the config language: key = value lines under [section] headers.
class Record {
public:
    Record& section(const std::string& name);
    Record& set(const std::string& key, double value);
    Record& set(const std::string& key, int value);
    Record& set(const std::string& key, bool value);
    Record& set(const std::string& key, const std::string& value);
    Record& set(const std::string& key, const char* value) { return set(key, std::string(value)); }
    Record& set(const std::string& key, const std::vector<double>& values);
    Record& raw(const std::string& key, const std::string& value_text);
    std::string text() const { return text_; }

private:
    std::string text_;
};

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string stroke = "#1f3a93";
    double width = 2.0;
    bool dashed = false;
};

struct Marker {
    double x = 0.0;
    std::string label;
};

// Minimal polyline plot with axes; non-finite points break a polyline.
struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
    std::vector<Marker> vertical_lines;

    std::string svg() const;
};

// Creates dir as needed and writes name inside it; returns the path written.
std::string write_file(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace quasibif::cli
