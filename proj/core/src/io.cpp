#include "pdbscan/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "pdbscan/errors.hpp"

namespace pdbscan {
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

// Splits on runs of whitespace or on a single comma (optionally padded by
// whitespace). Two commas with nothing between them yield an empty field.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  bool expect_field = true;
  while (pos < line.size()) {
    while (pos < line.size() && is_blank(line[pos])) ++pos;
    if (pos == line.size()) break;
    if (line[pos] == ',') {
      if (expect_field) fields.emplace_back();
      expect_field = true;
      ++pos;
      continue;
    }
    const std::size_t begin = pos;
    while (pos < line.size() && !is_blank(line[pos]) && line[pos] != ',') ++pos;
    fields.push_back(line.substr(begin, pos - begin));
    expect_field = false;
  }
  if (expect_field && !fields.empty()) fields.emplace_back();  // trailing comma
  return fields;
}

double parse_coord(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(line_no, std::string(token), "invalid coordinate");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_no, std::string(token), "non-finite coordinate");
  }
  return value;
}

template <typename T>
void append_shortest(std::string& out, T value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), ptr);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

PointSet parse_points(std::istream& in) {
  std::vector<Point3> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto fields = split_fields(content);
    if (fields.size() != 3) {
      throw ParseError(line_no, std::string(content),
                       "expected 3 coordinates, found " + std::to_string(fields.size()) + " in");
    }
    points.push_back({parse_coord(fields[0], line_no), parse_coord(fields[1], line_no),
                      parse_coord(fields[2], line_no)});
  }
  if (in.bad()) throw IoError("read failure");
  if (points.empty()) throw EmptyDataset("no points found");
  return PointSet(std::move(points));
}

PointSet load_points(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_points(in);
}

void write_points(const PointSet& points, const std::filesystem::path& path) {
  std::string text;
  text.reserve(points.size() * 48);
  for (const Point3& p : points.aos()) {
    append_shortest(text, p.x);
    text.push_back(' ');
    append_shortest(text, p.y);
    text.push_back(' ');
    append_shortest(text, p.z);
    text.push_back('\n');
  }
  auto out = open_for_write(path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

void write_labels(const Labeling& labeling, const std::filesystem::path& path) {
  std::string text;
  text.reserve(labeling.size() * 4);
  for (std::int32_t label : labeling.labels) {
    append_shortest(text, label);
    text.push_back('\n');
  }
  auto out = open_for_write(path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

Labeling load_labels(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  Labeling labeling;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    std::int32_t value = 0;
    auto [ptr, ec] = std::from_chars(content.data(), content.data() + content.size(), value);
    if (ec != std::errc() || ptr != content.data() + content.size()) {
      throw ParseError(line_no, std::string(content), "invalid label");
    }
    labeling.labels.push_back(value);
  }
  return labeling;
}

}  // namespace pdbscan
