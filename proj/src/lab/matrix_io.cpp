#include "toeplitz/lab/matrix_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace toeplitz::lab {

namespace {

constexpr char kMagic[4] = {'T', 'C', 'G', 'M'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& out, T v) {
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get(std::ifstream& in, const std::string& path) {
    std::array<unsigned char, sizeof(T)> bytes;
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
        throw InputError("truncated matrix file: " + path);
    }
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T v;
    std::memcpy(&v, bytes.data(), sizeof(T));
    return v;
}

}  // namespace

void export_matrix(const std::string& path, const GalerkinMatrix& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kVersion);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(g.data.rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(g.data.cols()));
    put<std::int64_t>(out, g.col_modes);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.provenance.size()));
    out.write(g.provenance.data(), static_cast<std::streamsize>(g.provenance.size()));
    for (Eigen::Index i = 0; i < g.data.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.data.cols(); ++j) {
            put<double>(out, g.data(i, j).real());
            put<double>(out, g.data(i, j).imag());
        }
    }
    if (!out) throw InputError("failed writing " + path);
}

GalerkinMatrix import_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw InputError("not a TCGM file: " + path);
    if (get<std::uint32_t>(in, path) != kVersion) throw InputError("unsupported TCGM version in " + path);
    const auto rows = get<std::uint64_t>(in, path);
    const auto cols = get<std::uint64_t>(in, path);
    const auto M = get<std::int64_t>(in, path);
    const auto len = get<std::uint32_t>(in, path);
    GalerkinMatrix g;
    g.provenance.resize(len);
    if (len > 0 && !in.read(g.provenance.data(), len)) throw InputError("truncated matrix file: " + path);
    g.data.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::uint64_t i = 0; i < rows; ++i) {
        for (std::uint64_t j = 0; j < cols; ++j) {
            const double re = get<double>(in, path);
            const double im = get<double>(in, path);
            g.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {re, im};
        }
    }
    g.col_modes = static_cast<int>(M);
    const auto width = static_cast<std::uint64_t>(2 * M + 1);
    g.block_cols = (width > 0 && cols % width == 0) ? static_cast<int>(cols / width) : 1;
    g.block_rows = g.block_cols;
    g.row_modes = static_cast<int>((rows / std::uint64_t(g.block_rows) - 1) / 2);
    return g;
}

}  // namespace toeplitz::lab
