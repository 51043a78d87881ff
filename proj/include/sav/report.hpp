#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace sav {

/// Deterministic CSV writer: fixed column order, '\n' endings, no timestamps,
/// so identical runs produce byte-identical files.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    static std::string num(double v);  // shortest round-trip double formatting

  private:
    std::ofstream os_;
    size_t ncols_;
};

/// Run manifest: config echo, seed, code version; content-addressed hash of
/// the config string. No wall-clock fields.
void write_manifest(const std::string& path, const std::string& command,
                    const std::string& config_json, uint64_t seed);

uint64_t fnv1a64(const std::string& s);

}  // namespace sav
