#include "skdv/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace skdv {
namespace {

template <typename T>
void put(std::string& out, T value) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        for (size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    out.append(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get(const std::string& in, size_t& pos) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, in.data() + pos, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        for (size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    pos += sizeof(T);
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

}  // namespace

std::string encode_snapshot(const Field& f, double time) {
    if (!f.grid) throw ParameterError("snapshot of a field without a grid");
    std::string out = "SKDV";
    put<std::uint8_t>(out, kSnapshotFormat);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(f.grid->n_points()));
    put<double>(out, f.grid->length());
    put<double>(out, time);
    put<std::uint8_t>(out, f.is_real() ? 0 : 1);
    for (const auto& z : f.values) {
        put<double>(out, z.real());
        if (!f.is_real()) put<double>(out, z.imag());
    }
    return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
    if (bytes.size() < 5) throw TruncatedFile("snapshot shorter than its magic and format bytes");
    if (bytes.compare(0, 4, "SKDV") != 0) throw CorruptFile("snapshot magic is not SKDV");
    if (static_cast<std::uint8_t>(bytes[4]) != kSnapshotFormat)
        throw CorruptFile("unsupported snapshot format byte");
    if (bytes.size() < kSnapshotHeaderBytes) throw TruncatedFile("snapshot header is truncated");
    size_t pos = 5;
    const auto n = get<std::uint64_t>(bytes, pos);
    const auto length = get<double>(bytes, pos);
    const auto time = get<double>(bytes, pos);
    const auto kind = get<std::uint8_t>(bytes, pos);
    if (kind > 1) throw CorruptFile("snapshot kind byte must be 0 or 1");
    if (n == 0 || n > (1ULL << 40)) throw CorruptFile("snapshot n_points out of range");
    const std::uint64_t payload = n * (kind == 1 ? 16 : 8);
    if (bytes.size() != kSnapshotHeaderBytes + payload)
        throw TruncatedFile("snapshot size " + std::to_string(bytes.size()) + " does not match " +
                            std::to_string(kSnapshotHeaderBytes + payload));
    GridPtr g = make_grid(static_cast<int>(n), length);
    CVec v(static_cast<size_t>(n));
    for (auto& z : v) {
        const double re = get<double>(bytes, pos);
        const double im = kind == 1 ? get<double>(bytes, pos) : 0.0;
        z = cplx(re, im);
    }
    return {Field(g, std::move(v), kind == 0 ? FieldTag::real : FieldTag::complex), time};
}

void write_snapshot(const std::string& path, const Field& f, double time) {
    const std::string bytes = encode_snapshot(f, time);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write snapshot " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for snapshot " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open snapshot " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return decode_snapshot(ss.str());
}

}  // namespace skdv
