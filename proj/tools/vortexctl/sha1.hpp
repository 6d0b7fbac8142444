#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace vortexctl {

// RFC 3174 SHA-1; used only to content-hash run metadata for the sidecars.
class Sha1 {
  public:
    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        total_ += len;
        while (len > 0) {
            const std::size_t take = std::min(len, sizeof(buf_) - fill_);
            std::memcpy(buf_ + fill_, p, take);
            fill_ += take;
            p += take;
            len -= take;
            if (fill_ == sizeof(buf_)) {
                process(buf_);
                fill_ = 0;
            }
        }
    }

    std::string hex_digest() {
        const std::uint64_t bits = total_ * 8;
        const unsigned char one = 0x80;
        update(&one, 1);
        const unsigned char zero = 0x00;
        while (fill_ != 56) update(&zero, 1);
        unsigned char len_be[8];
        for (int i = 0; i < 8; ++i) len_be[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
        update(len_be, 8);

        std::string out(40, '0');
        static const char* hex = "0123456789abcdef";
        for (int i = 0; i < 5; ++i) {
            for (int b = 0; b < 4; ++b) {
                const unsigned byte = (h_[i] >> (24 - 8 * b)) & 0xffu;
                out[8 * i + 2 * b] = hex[byte >> 4];
                out[8 * i + 2 * b + 1] = hex[byte & 0xf];
            }
        }
        return out;
    }

  private:
    static std::uint32_t rotl(std::uint32_t x, int n) { return (x << n) | (x >> (32 - n)); }

    void process(const unsigned char* block) {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(block[4 * i]) << 24) | (std::uint32_t(block[4 * i + 1]) << 16) |
                   (std::uint32_t(block[4 * i + 2]) << 8) | std::uint32_t(block[4 * i + 3]);
        for (int i = 16; i < 80; ++i)
            w[i] = rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);

        std::uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3], e = h_[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) {
                f = (b & c) | (~b & d);
                k = 0x5a827999u;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ed9eba1u;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8f1bbcdcu;
            } else {
                f = b ^ c ^ d;
                k = 0xca62c1d6u;
            }
            const std::uint32_t tmp = rotl(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rotl(b, 30);
            b = a;
            a = tmp;
        }
        h_[0] += a;
        h_[1] += b;
        h_[2] += c;
        h_[3] += d;
        h_[4] += e;
    }

    std::array<std::uint32_t, 5> h_{0x67452301u, 0xefcdab89u, 0x98badcfeu, 0x10325476u,
                                    0xc3d2e1f0u};
    unsigned char buf_[64];
    std::size_t fill_ = 0;
    std::uint64_t total_ = 0;
};

inline std::string sha1_hex(std::string_view data) {
    Sha1 h;
    h.update(data.data(), data.size());
    return h.hex_digest();
}

}  // namespace vortexctl
