#include "heterogen/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "heterogen/errors.hpp"

namespace heterogen {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Splits on '\n', dropping a trailing '\r' (tolerates CRLF input).
std::vector<std::string> split_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    std::string line = content.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

double parse_double(const std::string& tok, const char* what) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE)
    throw IoError(std::string("bad ") + what + " value '" + tok + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& tok, const char* what) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE)
    throw IoError(std::string("bad ") + what + " value '" + tok + "'");
  return v;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> toks;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      toks.push_back(line.substr(pos));
      break;
    }
    toks.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return toks;
}

}  // namespace

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename into '" + path + "': " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return content;
}

std::string edges_to_csv(const GraphSample& s) {
  std::string out = "u,v\n";
  for (std::uint32_t i = 0; i < s.n; ++i)
    for (std::uint32_t j : s.neighbors_of(i)) {
      if (j <= i) continue;
      out += std::to_string(i) + "," + std::to_string(j) + "\n";
    }
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_from_csv(
    const std::string& content) {
  const auto lines = split_lines(content);
  if (lines.empty() || lines[0] != "u,v")
    throw IoError("edge csv: expected header 'u,v'");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty()) continue;
    const auto toks = split_csv_row(lines[r]);
    if (toks.size() != 2)
      throw IoError("edge csv: row " + std::to_string(r) + " needs two columns");
    edges.emplace_back(
        static_cast<std::uint32_t>(parse_u64(toks[0], "node id")),
        static_cast<std::uint32_t>(parse_u64(toks[1], "node id")));
  }
  return edges;
}

std::string features_to_csv(const FeatureMatrix& x) {
  std::string out = "node";
  for (std::uint32_t c = 0; c < x.d; ++c) out += ",f" + std::to_string(c);
  out += "\n";
  out.reserve(out.size() + static_cast<std::size_t>(x.n) * (x.d * 20 + 8));
  for (std::uint32_t i = 0; i < x.n; ++i) {
    out += std::to_string(i);
    const double* row = x.row(i);
    for (std::uint32_t c = 0; c < x.d; ++c) {
      out += ',';
      out += fmt_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

FeatureMatrix features_from_csv(const std::string& content) {
  const auto lines = split_lines(content);
  if (lines.empty() || lines[0].rfind("node", 0) != 0)
    throw IoError("feature csv: expected header starting with 'node'");
  const auto header = split_csv_row(lines[0]);
  if (header.size() < 2) throw IoError("feature csv: no feature columns");
  const std::uint32_t d = static_cast<std::uint32_t>(header.size() - 1);

  std::vector<double> values;
  std::uint32_t n = 0;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (lines[r].empty()) continue;
    const auto toks = split_csv_row(lines[r]);
    if (toks.size() != header.size())
      throw IoError("feature csv: row " + std::to_string(r) +
                    " has wrong column count");
    if (parse_u64(toks[0], "node id") != n)
      throw IoError("feature csv: rows must be consecutive node ids from 0");
    for (std::size_t c = 1; c < toks.size(); ++c)
      values.push_back(parse_double(toks[c], "feature"));
    ++n;
  }
  if (n == 0) throw IoError("feature csv: no rows");
  FeatureMatrix x;
  x.n = n;
  x.d = d;
  x.values = std::move(values);
  return x;
}

std::string features_to_bin(const FeatureMatrix& x) {
  std::string out;
  const std::uint64_t n = x.n, d = x.d;
  out.resize(16 + x.values.size() * sizeof(double));
  std::memcpy(out.data(), &n, 8);
  std::memcpy(out.data() + 8, &d, 8);
  std::memcpy(out.data() + 16, x.values.data(),
              x.values.size() * sizeof(double));
  return out;
}

FeatureMatrix features_from_bin(const std::string& content) {
  if (content.size() < 16) throw IoError("feature bin: truncated header");
  std::uint64_t n = 0, d = 0;
  std::memcpy(&n, content.data(), 8);
  std::memcpy(&d, content.data() + 8, 8);
  const std::uint64_t count = n * d;
  if (content.size() != 16 + count * sizeof(double))
    throw IoError("feature bin: size does not match header");
  FeatureMatrix x;
  x.n = static_cast<std::uint32_t>(n);
  x.d = static_cast<std::uint32_t>(d);
  x.values.resize(count);
  std::memcpy(x.values.data(), content.data() + 16, count * sizeof(double));
  return x;
}

std::string latents_to_csv(const GraphSample& s) {
  std::string out = "node,u\n";
  for (std::uint32_t i = 0; i < s.n; ++i)
    out += std::to_string(i) + "," + fmt_double(s.latents[i]) + "\n";
  return out;
}

}  // namespace heterogen
