#include "blockpart/io.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

#include "blockpart/error.hpp"

namespace blockpart {

namespace {

std::string_view strip(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

double parse_number(std::string_view text, std::size_t line) {
  const std::string_view trimmed = strip(text);
  if (trimmed.empty()) throw ParseError(line, "empty number");
  std::string_view body = trimmed;
  if (body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(value)) {
    throw ParseError(line, "not a finite number: '" + std::string(trimmed) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> parse_scalars(std::istream& in) {
  IstreamSource source(in);
  std::vector<double> out;
  while (auto v = source.next()) out.push_back(*v);
  return out;
}

std::vector<std::vector<double>> parse_vectors(std::istream& in) {
  std::vector<std::vector<double>> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view body = strip(raw);
    if (body.empty()) continue;
    std::vector<double> v;
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      v.push_back(parse_number(body.substr(start, comma - start), line));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!out.empty() && v.size() != out.front().size()) {
      throw ParseError(line, "expected " + std::to_string(out.front().size()) +
                                 " coordinates, got " + std::to_string(v.size()));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<double> IstreamSource::next() {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_;
    const std::string_view body = strip(raw);
    if (body.empty()) continue;
    return parse_number(body, line_);
  }
  return std::nullopt;
}

Sequence parse_input(std::istream& in, const InputFormat& format) {
  if (format.vector) {
    auto values = parse_vectors(in);
    if (values.empty()) throw ValidationError("input contains no elements");
    return Sequence::vectors(std::move(values), format.p);
  }
  auto values = parse_scalars(in);
  if (values.empty()) throw ValidationError("input contains no elements");
  return Sequence::scalars(std::move(values), format.bound);
}

}  // namespace blockpart
