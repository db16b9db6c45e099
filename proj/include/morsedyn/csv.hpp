#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace morsedyn {

/// Minimal CSV writer: UTF-8, header row, '.' decimal separator, values
/// printed with %.17g so outputs round-trip bit-exactly.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    }

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out_ << ',';
            out_ << cols[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        char buf[32];
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            std::snprintf(buf, sizeof buf, "%.17g", values[i]);
            out_ << buf;
        }
        out_ << '\n';
    }

    /// Mixed row: leading label columns then numbers.
    void row(const std::vector<std::string>& labels, const std::vector<double>& values) {
        char buf[32];
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (i) out_ << ',';
            out_ << labels[i];
        }
        for (const double v : values) {
            out_ << ',';
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out_ << buf;
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

} // namespace morsedyn
