#include "dicelab/io_util.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dicelab/error.hpp"

namespace dicelab {

const char* err_name(Err code) {
  switch (code) {
    case Err::FaceOutOfRange: return "FaceOutOfRange";
    case Err::BadSum: return "BadSum";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::MethodUnavailable: return "MethodUnavailable";
    case Err::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case Err::TooLarge: return "TooLarge";
    case Err::GridTooSmall: return "GridTooSmall";
    case Err::PairingFailure: return "PairingFailure";
    case Err::TruncationTooSmall: return "TruncationTooSmall";
    case Err::WitnessSearchFailed: return "WitnessSearchFailed";
    case Err::DomainError: return "DomainError";
    case Err::BadPattern: return "BadPattern";
    case Err::BadConfig: return "BadConfig";
    case Err::IoError: return "IoError";
  }
  return "UnknownError";
}

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || end == nullptr || *end != '\0') {
    fail(Err::IoError, "bad numeric field: " + s);
  }
  return v;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(Err::IoError, "read failed on " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Err::IoError, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) fail(Err::IoError, "write failed on " + path);
}

bool file_exists(const std::string& path) {
  std::error_code ec;
  return std::filesystem::exists(path, ec);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) fail(Err::IoError, "cannot create directory " + path + ": " + ec.message());
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace dicelab
