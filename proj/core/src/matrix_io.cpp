#include "evanescent/matrix_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace evanescent::io {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(bytes, 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  out.write(bytes, 8);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) throw std::runtime_error("truncated matrix header");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw std::runtime_error("truncated matrix payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_csv(std::ostream& out, const Eigen::MatrixXcd& matrix) {
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(matrix(r, c).real()) << ',' << format_double(matrix(r, c).imag());
    }
    out << '\n';
  }
}

void write_binary(std::ostream& out, const Eigen::MatrixXcd& matrix) {
  out.write(kBinaryMagic.data(), kBinaryMagic.size());
  put_u32(out, static_cast<std::uint32_t>(matrix.rows()));
  put_u32(out, static_cast<std::uint32_t>(matrix.cols()));
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      put_f64(out, matrix(r, c).real());
      put_f64(out, matrix(r, c).imag());
    }
  }
  if (!out) throw std::runtime_error("failed to write matrix");
}

Eigen::MatrixXcd read_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size())) throw std::runtime_error("truncated matrix header");
  if (magic != kBinaryMagic) throw std::runtime_error("bad matrix magic");
  const auto rows = get_u32(in);
  const auto cols = get_u32(in);
  Eigen::MatrixXcd m(rows, cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      const double re = get_f64(in);
      const double im = get_f64(in);
      m(r, c) = {re, im};
    }
  }
  return m;
}

Eigen::MatrixXcd read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() % 2 != 0) throw std::runtime_error("CSV row has an odd number of fields");
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw std::runtime_error("CSV rows have different lengths");
    }
    rows.push_back(std::move(values));
  }
  const Eigen::Index n_rows = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index n_cols = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size() / 2);
  Eigen::MatrixXcd m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      m(r, c) = {rows[r][2 * c], rows[r][2 * c + 1]};
    }
  }
  return m;
}

void save_matrix(const std::string& path, const Eigen::MatrixXcd& matrix) {
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  std::ofstream out(path, csv ? std::ios::out : std::ios::out | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (csv) {
    write_csv(out, matrix);
  } else {
    write_binary(out, matrix);
  }
}

}  // namespace evanescent::io
