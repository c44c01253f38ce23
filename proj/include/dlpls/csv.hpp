#pragma once

#include <string>
#include <vector>

namespace dlpls {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// String-celled table used for the emitted diagnostic artifacts.
/// parse(emit(t)) reproduces the table exactly.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string emit(char delim = ',') const;
    static CsvTable parse(const std::string& text, char delim = ',');

    /// Atomic write: temp file in the same directory, then rename.
    void write(const std::string& path, char delim = ',') const;
    static CsvTable read(const std::string& path, char delim = ',');

    bool operator==(const CsvTable&) const = default;
};

/// Atomic text-file write (temp + rename).
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace dlpls
