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

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace csgcl::io {

using Magic = std::array<char, 4>;

inline constexpr Magic kAttributeMagic{'C', 'S', 'G', 'M'};
inline constexpr Magic kEmbeddingMagic{'C', 'S', 'G', 'E'};
inline constexpr Magic kCheckpointMagic{'C', 'S', 'G', 'P'};

// Binary matrix layout: 4 magic bytes, u64 rows, u64 cols, then rows*cols
// little-endian f64 values in row-major order.
void write_matrix(const std::filesystem::path& path, const Magic& magic, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(const std::filesystem::path& path, const Magic& magic);
bool has_magic(const std::filesystem::path& path, const Magic& magic);

// Little-endian primitives used by the binary formats above.
void put_u64(std::string& out, std::uint64_t value);
void put_f64(std::string& out, double value);
std::uint64_t get_u64(std::string_view in, std::size_t& pos);
double get_f64(std::string_view in, std::size_t& pos);
void put_matrix_data(std::string& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd get_matrix_data(std::string_view in, std::size_t& pos, std::size_t rows,
                                std::size_t cols);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// One integer per line; line index is the node id. Blank trailing lines are
// tolerated, anything else non-integer throws.
std::vector<long long> read_int_lines(const std::filesystem::path& path);
void write_int_lines(const std::filesystem::path& path, const std::vector<int>& values);

// Shortest decimal text that round-trips the double exactly.
std::string format_double(double value);

}  // namespace csgcl::io
