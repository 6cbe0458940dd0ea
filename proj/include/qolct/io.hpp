#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qolct/corpus.hpp"
#include "qolct/field.hpp"

namespace qolct::io {

/// "QSIG1\0", u32 n1, u32 n2, f64 center1, center2, spacing1, spacing2, then
/// 4 n1 n2 f64 samples, component-major. Everything little-endian.
std::vector<std::uint8_t> encode_signal(const QField& f);
/// Throws IoError on a bad magic, a size mismatch or an invalid grid.
QField decode_signal(const std::vector<std::uint8_t>& bytes);

std::size_t signal_file_size(std::size_t n1, std::size_t n2);

void write_signal(const std::filesystem::path& path, const QField& f);
QField read_signal(const std::filesystem::path& path);

/// Rows t1,t2,q0,q1,q2,q3 (an optional header line is skipped). The rows must
/// cover a complete, uniformly spaced grid; otherwise InvalidArgument.
QField parse_csv_signal(const std::string& text);
QField read_csv_signal(const std::filesystem::path& path);

/// {"A1": {"a","b","c","d","tau","eta"}, "A2": {...}, "lambda": [x,y,z], "mu": [x,y,z]}.
/// Axes are normalized; determinants must be 1 within 1e-9. InvalidArgument otherwise.
ParamSet parse_params(const std::string& text);
ParamSet read_params(const std::filesystem::path& path);
std::string format_params(const ParamSet& ps);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace qolct::io
