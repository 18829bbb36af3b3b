// Sample CSV format: one row per sample, `x_1,...,x_d,y` with y in {-1,1}.
// An optional header row `x1,...,xd,y` is accepted on read and never written.

#ifndef HTL_SAMPLE_IO_H_
#define HTL_SAMPLE_IO_H_

#include <cstddef>
#include <iosfwd>
#include <string>

#include "htl/core_types.h"

namespace htl {

// Parse failure; `line()` is 1-based.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

LabeledSampleSet ReadSamplesCsv(std::istream& in);
LabeledSampleSet ReadSamplesCsvFile(const std::string& path);

void WriteSamplesCsv(const SampleView& samples, std::ostream& out);
void WriteSamplesCsvFile(const SampleView& samples, const std::string& path);

// Git blob object id (SHA-1 over "blob <len>\0" + bytes), lowercase hex.
std::string GitBlobHash(const std::string& bytes);

}  // namespace htl

#endif  // HTL_SAMPLE_IO_H_
