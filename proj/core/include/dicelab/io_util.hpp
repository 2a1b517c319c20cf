#pragma once

#include <string>
#include <vector>

namespace dicelab {

// 17 significant digits: doubles round-trip bit-exactly through text.
std::string fmt_g17(double v);
double parse_double(const std::string& s);

std::string read_text_file(const std::string& path);            // IoError
void write_text_file(const std::string& path, const std::string& text);

bool file_exists(const std::string& path);
void ensure_directory(const std::string& path);

// RFC-4180: quote fields containing comma, quote, or newline.
std::string csv_field(const std::string& raw);
std::string csv_row(const std::vector<std::string>& fields);

std::vector<std::string> split(const std::string& s, char sep);

}  // namespace dicelab
