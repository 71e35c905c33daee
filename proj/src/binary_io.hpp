// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

// Little-endian byte encoding shared by the on-disk index formats.

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "fastforward/error.hpp"

namespace ff::detail {

inline constexpr char kMagic[4] = {'F', 'F', 'W', 'D'};
inline constexpr std::uint32_t kFormatVersion = 1;

enum class SectionTag : std::uint8_t {
    forward = 1,
    sparse = 2,
};

class ByteWriter {
public:
    template <typename T>
    void put(T value) {
        static_assert(std::is_integral_v<T>);
        using U = std::make_unsigned_t<T>;
        auto u = static_cast<U>(value);
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            bytes_.push_back(static_cast<char>(u & 0xFF));
            u = static_cast<U>(u >> 8);
        }
    }

    void put_f32(float v) { put(std::bit_cast<std::uint32_t>(v)); }
    void put_f64(double v) { put(std::bit_cast<std::uint64_t>(v)); }

    void put_bytes(std::string_view s) { bytes_.append(s); }

    /// u16 length prefix followed by the raw bytes.
    void put_short_string(std::string_view s) {
        if (s.size() > 0xFFFF) throw InvalidArgument("identifier longer than 65535 bytes");
        put(static_cast<std::uint16_t>(s.size()));
        put_bytes(s);
    }

    void put_header(SectionTag tag) {
        put_bytes(std::string_view(kMagic, 4));
        put(kFormatVersion);
        put(static_cast<std::uint8_t>(tag));
    }

    std::size_t size() const noexcept { return bytes_.size(); }
    const std::string& bytes() const noexcept { return bytes_; }
    std::string release() { return std::move(bytes_); }

private:
    std::string bytes_;
};

class ByteReader {
public:
    explicit ByteReader(std::string_view data) : data_(data) {}

    template <typename T>
    T get() {
        static_assert(std::is_integral_v<T>);
        require(sizeof(T));
        using U = std::make_unsigned_t<T>;
        U u = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            u |= static_cast<U>(static_cast<U>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i));
        }
        pos_ += sizeof(T);
        return static_cast<T>(u);
    }

    float get_f32() { return std::bit_cast<float>(get<std::uint32_t>()); }
    double get_f64() { return std::bit_cast<double>(get<std::uint64_t>()); }

    std::string_view get_bytes(std::size_t n) {
        require(n);
        auto s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }

    std::string get_short_string() { return std::string(get_bytes(get<std::uint16_t>())); }

    void expect_header(SectionTag tag) {
        if (get_bytes(4) != std::string_view(kMagic, 4)) throw FormatError("bad magic, not an index file");
        if (const auto v = get<std::uint32_t>(); v != kFormatVersion) {
            throw FormatError("unsupported format version " + std::to_string(v));
        }
        if (const auto t = get<std::uint8_t>(); t != static_cast<std::uint8_t>(tag)) {
            throw FormatError("unexpected section tag " + std::to_string(t));
        }
    }

    std::size_t position() const noexcept { return pos_; }
    void seek(std::size_t pos) {
        if (pos > data_.size()) throw FormatError("offset past end of file");
        pos_ = pos;
    }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }

private:
    void require(std::size_t n) const {
        if (data_.size() - pos_ < n) throw FormatError("truncated file");
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace ff::detail
