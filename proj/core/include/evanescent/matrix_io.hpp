#pragma once

// Matrix export formats.
//
// CSV: one line per row, each entry written as "re,im" (interleaved), full
// round-trip precision.
//
// Binary: little-endian. 16-byte header = 8-byte magic "EVCMAT01", uint32
// rows, uint32 cols; followed by rows*cols (re, im) float64 pairs in
// row-major order.

#include <array>
#include <iosfwd>
#include <string>

#include <Eigen/Core>

namespace evanescent::io {

inline constexpr std::array<char, 8> kBinaryMagic{'E', 'V', 'C', 'M', 'A', 'T', '0', '1'};

void write_csv(std::ostream& out, const Eigen::MatrixXcd& matrix);
void write_binary(std::ostream& out, const Eigen::MatrixXcd& matrix);

/// Throws std::runtime_error on a bad magic, truncated payload or I/O failure.
Eigen::MatrixXcd read_binary(std::istream& in);
Eigen::MatrixXcd read_csv(std::istream& in);

/// Picks CSV for a ".csv" extension, binary otherwise.
void save_matrix(const std::string& path, const Eigen::MatrixXcd& matrix);

}  // namespace evanescent::io
