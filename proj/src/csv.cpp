// SPDX-License-Identifier: Apache-2.0
#include "wnf/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace wnf {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::string& meta_comment)
    : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    out_ << "# " << meta_comment << "\n";
}

CsvWriter::~CsvWriter() = default;

void CsvWriter::sep() {
    if (row_started_) out_ << ",";
    row_started_ = true;
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (const auto& n : names) {
        sep();
        out_ << n;
    }
    end_row();
}

void CsvWriter::field(double v) {
    sep();
    out_ << format_double(v);
}

void CsvWriter::field(int v) {
    sep();
    out_ << v;
}

void CsvWriter::field(long v) {
    sep();
    out_ << v;
}

void CsvWriter::field(std::uint64_t v) {
    sep();
    out_ << v;
}

void CsvWriter::field(const std::string& v) {
    sep();
    out_ << v;
}

void CsvWriter::end_row() {
    out_ << "\n";
    row_started_ = false;
}

std::string hash_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

std::string meta_line(const std::string& config_hash, std::uint64_t seed) {
    return "config_hash=" + config_hash + " seed=" + std::to_string(seed) +
           " version=" WNF_VERSION;
}

}  // namespace wnf
