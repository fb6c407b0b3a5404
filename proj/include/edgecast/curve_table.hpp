#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace edgecast::io {

/// Formats a double with 12 significant digits, locale-independent; the one
/// number format used in every emitted artifact so reruns diff byte-for-byte.
std::string format_number(double value);

/// FNV-1a 64-bit, used to stamp outputs with a hash of the effective config.
std::uint64_t fnv1a_hash(const std::string& text);

/// (x, y...) samples of a curve plus provenance metadata. The first column is
/// the abscissa and must be strictly increasing.
class CurveTable {
public:
    CurveTable(std::string x_label, std::vector<std::string> y_labels);

    void set_metadata(std::string key, std::string value);
    void append(double x, const std::vector<double>& ys);

    std::size_t size() const { return rows_.size(); }

    /// CSV with '#'-prefixed metadata comments, a header row, and
    /// 12-significant-digit values.
    std::string to_csv() const;
    std::string to_json() const;

private:
    std::string x_label_;
    std::vector<std::string> y_labels_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Thrown on filesystem failures; the CLI maps it to its I/O exit code.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace edgecast::io
