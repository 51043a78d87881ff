#include "sav/report.hpp"

#include <charconv>
#include <stdexcept>

namespace sav {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : os_(path), ncols_(columns.size()) {
    if (!os_) throw std::runtime_error("CsvWriter: cannot open " + path);
    for (size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != ncols_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << "\n";
}

std::string CsvWriter::num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::string& config_json, uint64_t seed) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_manifest: cannot open " + path);
    os << "{\n  \"command\": \"" << command << "\",\n  \"seed\": " << seed
       << ",\n  \"config_hash\": " << fnv1a64(config_json) << ",\n  \"version\": \"sparseavg-0.1\""
       << ",\n  \"config\": " << config_json << "\n}\n";
}

}  // namespace sav
