#include "dlpls/csv.hpp"

#include "dlpls/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dlpls {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string CsvTable::emit(char delim) const {
    std::ostringstream out;
    auto put_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << delim;
            out << row[i];
        }
        out << '\n';
    };
    put_row(header);
    for (const auto& row : rows) put_row(row);
    return out.str();
}

CsvTable CsvTable::parse(const std::string& text, char delim) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, delim)) cells.push_back(cell);
        if (!line.empty() && line.back() == delim) cells.emplace_back();
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    if (first) throw data_error("csv: empty document");
    return t;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw data_error("cannot write file: " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw data_error("cannot rename " + tmp + " to " + path);
    }
}

void CsvTable::write(const std::string& path, char delim) const {
    write_text_atomic(path, emit(delim));
}

CsvTable CsvTable::read(const std::string& path, char delim) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), delim);
}

} // namespace dlpls
