#include "edgecast/curve_table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace edgecast::io {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

CurveTable::CurveTable(std::string x_label, std::vector<std::string> y_labels)
    : x_label_(std::move(x_label)), y_labels_(std::move(y_labels)) {}

void CurveTable::set_metadata(std::string key, std::string value) {
    metadata_.emplace_back(std::move(key), std::move(value));
}

void CurveTable::append(double x, const std::vector<double>& ys) {
    if (ys.size() != y_labels_.size())
        throw std::invalid_argument("curve table: row width mismatch");
    if (!rows_.empty() && !(x > rows_.back().front()))
        throw std::invalid_argument("curve table: x values must be strictly increasing");
    std::vector<double> row;
    row.reserve(ys.size() + 1);
    row.push_back(x);
    row.insert(row.end(), ys.begin(), ys.end());
    rows_.push_back(std::move(row));
}

std::string CurveTable::to_csv() const {
    std::string out;
    for (const auto& [k, v] : metadata_) out += "# " + k + " = " + v + "\n";
    out += x_label_;
    for (const auto& label : y_labels_) out += "," + label;
    out += "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += format_number(row[i]);
        }
        out += "\n";
    }
    return out;
}

std::string CurveTable::to_json() const {
    nlohmann::json j;
    for (const auto& [k, v] : metadata_) j["metadata"][k] = v;
    j["x_label"] = x_label_;
    j["y_labels"] = y_labels_;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows_) j["rows"].push_back(row);
    return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace edgecast::io
