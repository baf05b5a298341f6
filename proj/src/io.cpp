// Copyright 2026 The CSGCL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csgcl/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "csgcl/error.hpp"

namespace csgcl::io {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write failed for " + path.string());
}

void put_u64(std::string& out, std::uint64_t value) {
  char bytes[8];
  std::memcpy(bytes, &value, 8);
  out.append(bytes, 8);
}

void put_f64(std::string& out, double value) { put_u64(out, std::bit_cast<std::uint64_t>(value)); }

std::uint64_t get_u64(std::string_view in, std::size_t& pos) {
  if (pos + 8 > in.size()) throw Error("truncated binary file");
  std::uint64_t value;
  std::memcpy(&value, in.data() + pos, 8);
  pos += 8;
  return value;
}

double get_f64(std::string_view in, std::size_t& pos) { return std::bit_cast<double>(get_u64(in, pos)); }

void put_matrix_data(std::string& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) put_f64(out, m(i, j));
}

Eigen::MatrixXd get_matrix_data(std::string_view in, std::size_t& pos, std::size_t rows,
                                std::size_t cols) {
  if (cols != 0 && rows > (in.size() - std::min(pos, in.size())) / 8 / cols)
    throw Error("truncated binary matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = get_f64(in, pos);
  return m;
}

void write_matrix(const std::filesystem::path& path, const Magic& magic, const Eigen::MatrixXd& m) {
  std::string out(magic.data(), magic.size());
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  put_matrix_data(out, m);
  write_file(path, out);
}

Eigen::MatrixXd read_matrix(const std::filesystem::path& path, const Magic& magic) {
  const std::string data = read_file(path);
  if (data.size() < 4 || std::memcmp(data.data(), magic.data(), 4) != 0)
    throw Error(path.string() + ": bad magic, expected " + std::string(magic.data(), 4));
  std::size_t pos = 4;
  const auto rows = get_u64(data, pos);
  const auto cols = get_u64(data, pos);
  auto m = get_matrix_data(data, pos, rows, cols);
  if (pos != data.size()) throw Error(path.string() + ": trailing bytes after matrix data");
  return m;
}

bool has_magic(const std::filesystem::path& path, const Magic& magic) {
  std::ifstream in(path, std::ios::binary);
  char head[4] = {};
  in.read(head, 4);
  return in.gcount() == 4 && std::memcmp(head, magic.data(), 4) == 0;
}

std::vector<long long> read_int_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<long long> values;
  std::string line;
  std::size_t line_no = 0;
  std::size_t blank_run = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0) throw Error(path.string() + ": blank line before line " + std::to_string(line_no));
    auto last = line.find_last_not_of(" \t\r");
    std::string_view token(line.data() + first, last - first + 1);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw Error(path.string() + ":" + std::to_string(line_no) + ": not an integer: '" +
                  std::string(token) + "'");
    values.push_back(value);
  }
  return values;
}

void write_int_lines(const std::filesystem::path& path, const std::vector<int>& values) {
  std::string out;
  for (int v : values) {
    out += std::to_string(v);
    out += '\n';
  }
  write_file(path, out);
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("cannot format double");
  return std::string(buf, ptr);
}

}  // namespace csgcl::io
