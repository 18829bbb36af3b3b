#include "htl/sample_io.h"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

namespace htl {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool ParseDouble(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

bool IsHeader(const std::vector<std::string_view>& fields) {
  const std::size_t d = fields.size() - 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (Trim(fields[i]) != "x" + std::to_string(i + 1)) return false;
  }
  return Trim(fields[d]) == "y";
}

void AppendDouble(std::string& out, double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

}  // namespace

CsvError::CsvError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

LabeledSampleSet ReadSamplesCsv(std::istream& in) {
  std::vector<double> points;
  std::vector<std::int8_t> labels;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::string line;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const auto fields = SplitFields(trimmed);
    if (fields.size() < 3) {
      throw CsvError(line_no, "expected at least 3 fields (d >= 2 coordinates and a label)");
    }
    if (!seen_row && IsHeader(fields)) {
      dim = fields.size() - 1;
      seen_row = true;
      continue;
    }
    if (dim == 0) dim = fields.size() - 1;
    seen_row = true;
    if (fields.size() != dim + 1) {
      throw CsvError(line_no, "expected " + std::to_string(dim + 1) + " fields, found " +
                                  std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      double v;
      if (!ParseDouble(Trim(fields[i]), v) || !std::isfinite(v)) {
        throw CsvError(line_no, "field " + std::to_string(i + 1) + " is not a finite number");
      }
      points.push_back(v);
    }
    const std::string_view label = Trim(fields[dim]);
    if (label == "1" || label == "+1") {
      labels.push_back(1);
    } else if (label == "-1") {
      labels.push_back(-1);
    } else {
      throw CsvError(line_no, "label must be -1 or 1");
    }
  }
  if (labels.empty()) throw CsvError(line_no, "no samples found");
  return LabeledSampleSet(std::move(points), std::move(labels), dim);
}

LabeledSampleSet ReadSamplesCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadSamplesCsv(in);
}

void WriteSamplesCsv(const SampleView& samples, std::ostream& out) {
  std::string row;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    row.clear();
    for (double v : samples.x(i)) {
      AppendDouble(row, v);
      row.push_back(',');
    }
    row += samples.y(i) > 0 ? "1\n" : "-1\n";
    out << row;
  }
}

void WriteSamplesCsvFile(const SampleView& samples, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  WriteSamplesCsv(samples, out);
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string GitBlobHash(const std::string& bytes) {
  const std::string header = "blob " + std::to_string(bytes.size()) + std::string(1, '\0');
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr);
  EVP_DigestUpdate(ctx, header.data(), header.size());
  EVP_DigestUpdate(ctx, bytes.data(), bytes.size());
  EVP_DigestFinal_ex(ctx, digest.data(), &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

}  // namespace htl
