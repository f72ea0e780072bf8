#pragma once

// Text input: one decimal number per line for scalar sequences, comma
// separated coordinates per line for vector sequences. Blank lines and
// everything after '#' are ignored.

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "blockpart/sequence.hpp"
#include "blockpart/streaming.hpp"

namespace blockpart {

struct InputFormat {
  bool vector = false;
  BoundKind bound = BoundKind::unit_interval;  // scalar mode
  double p = 1.0;                              // vector mode
};

// Throws ParseError for malformed lines, BoundError for values outside the
// format's bound, ValidationError for an empty input.
Sequence parse_input(std::istream& in, const InputFormat& format);

// Raw parse without bound validation.
std::vector<double> parse_scalars(std::istream& in);
std::vector<std::vector<double>> parse_vectors(std::istream& in);

// Lazily parses scalars from a stream, one line at a time.
class IstreamSource final : public ElementSource {
 public:
  explicit IstreamSource(std::istream& in) : in_(in) {}
  std::optional<double> next() override;
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace blockpart
