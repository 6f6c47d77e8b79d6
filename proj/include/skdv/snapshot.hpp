#pragma once

#include <cstdint>
#include <string>

#include "skdv/spectral_core.hpp"

namespace skdv {

/// Binary field snapshot, little-endian:
///   "SKDV" | u8 format = 0x01 | u64 n_points | f64 length | f64 time | u8 kind | payload
/// kind 0 is a real field (n f64), kind 1 a complex field (2n f64, re/im interleaved).
inline constexpr std::uint8_t kSnapshotFormat = 0x01;
inline constexpr std::size_t kSnapshotHeaderBytes = 30;

struct Snapshot {
    Field field;
    double time = 0.0;
};

/// Serialized bytes of a snapshot.
std::string encode_snapshot(const Field& f, double time);
/// Throws CorruptFile on a bad magic, format or kind byte and TruncatedFile on a size mismatch.
Snapshot decode_snapshot(const std::string& bytes);

void write_snapshot(const std::string& path, const Field& f, double time);
Snapshot read_snapshot(const std::string& path);

}  // namespace skdv
