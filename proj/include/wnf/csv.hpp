// SPDX-License-Identifier: Apache-2.0
#ifndef WNF_CSV_HPP
#define WNF_CSV_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace wnf {

/// Shortest round-trip decimal rendering of a double (via std::to_chars).
std::string format_double(double v);

/// Column-oriented CSV writer. The first line is a '#' comment carrying run
/// metadata (config hash, seed, tool version); numeric fields are written
/// with full round-trip precision.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& meta_comment);
    ~CsvWriter();

    void header(const std::vector<std::string>& names);
    void field(double v);
    void field(int v);
    void field(long v);
    void field(std::uint64_t v);
    void field(const std::string& v);
    void end_row();

private:
    std::ofstream out_;
    bool row_started_ = false;
    void sep();
};

/// FNV-1a hash of a config's canonical serialization, hex-encoded.
std::string hash_hex(const std::string& text);

/// Metadata comment line content for CSV headers.
std::string meta_line(const std::string& config_hash, std::uint64_t seed);

}  // namespace wnf

#endif
