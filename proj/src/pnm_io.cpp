#include "gfa/pnm_io.hpp"

#include <algorithm>
#include <cmath>

#include "gfa/errors.hpp"
#include "gfa/io_util.hpp"

namespace gfa {

namespace {

// Header token scanner. PNM allows '#' comments and arbitrary whitespace
// between header fields; the payload starts after exactly one whitespace
// byte following maxval.
struct scanner {
    const std::string& buf;
    std::size_t pos = 0;
    std::size_t token_at = 0;  // start of the most recent token

    void skip_space_and_comments() {
        while (pos < buf.size()) {
            const char ch = buf[pos];
            if (ch == '#') {
                while (pos < buf.size() && buf[pos] != '\n') ++pos;
            } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    }

    int next_int(const char* what) {
        skip_space_and_comments();
        token_at = pos;
        if (pos >= buf.size() || buf[pos] < '0' || buf[pos] > '9') {
            throw parse_error(std::string("expected ") + what, pos);
        }
        long value = 0;
        while (pos < buf.size() && buf[pos] >= '0' && buf[pos] <= '9') {
            value = value * 10 + (buf[pos] - '0');
            if (value > 1 << 28) throw parse_error(std::string(what) + " too large", pos);
            ++pos;
        }
        return static_cast<int>(value);
    }
};

}  // namespace

feature_map decode_image(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
        throw parse_error("not a binary PGM/PPM (magic must be P5 or P6)", 0);
    }
    const int channels = bytes[1] == '6' ? 3 : 1;
    scanner sc{bytes, 2};
    const int width = sc.next_int("width");
    const int height = sc.next_int("height");
    const int maxval = sc.next_int("maxval");
    const std::size_t maxval_at = sc.token_at;
    if (width < 1 || height < 1) {
        throw parse_error("image dimensions must be positive", 2);
    }
    if (maxval != 255) {
        throw parse_error("maxval must be 255, got " + std::to_string(maxval), maxval_at);
    }
    if (sc.pos >= bytes.size() || (bytes[sc.pos] != '\n' && bytes[sc.pos] != ' ' &&
                                   bytes[sc.pos] != '\t' && bytes[sc.pos] != '\r')) {
        throw parse_error("expected single whitespace after maxval", sc.pos);
    }
    ++sc.pos;

    const std::size_t expected = static_cast<std::size_t>(height) * width * channels;
    if (bytes.size() - sc.pos < expected) {
        throw parse_error("payload truncated: need " + std::to_string(expected) + " bytes, have " +
                              std::to_string(bytes.size() - sc.pos),
                          bytes.size());
    }
    if (bytes.size() - sc.pos > expected) {
        throw parse_error("trailing bytes after payload", sc.pos + expected);
    }

    std::vector<float> data(expected);
    for (std::size_t k = 0; k < expected; ++k) {
        data[k] = static_cast<unsigned char>(bytes[sc.pos + k]) / 255.0f;
    }
    return {height, width, channels, std::move(data)};
}

feature_map read_image(const std::string& path) { return decode_image(read_file(path)); }

std::string encode_image(const feature_map& f) {
    if (f.channels() != 1 && f.channels() != 3) {
        throw config_error("image export needs 1 or 3 channels, got " +
                           std::to_string(f.channels()));
    }
    std::string out = f.channels() == 3 ? "P6\n" : "P5\n";
    out += std::to_string(f.width()) + " " + std::to_string(f.height()) + "\n255\n";
    out.reserve(out.size() + f.data().size());
    for (const float v : f.data()) {
        const long b = std::lround(static_cast<double>(v) * 255.0);
        out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(b, 0L, 255L))));
    }
    return out;
}

void write_image(const std::string& path, const feature_map& f) {
    atomic_write_file(path, encode_image(f));
}

void write_pgm16(const std::string& path, const std::vector<std::uint16_t>& samples, int height,
                 int width) {
    if (samples.size() != static_cast<std::size_t>(height) * width) {
        throw config_error("sample count does not match PGM dimensions");
    }
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
    out.reserve(out.size() + samples.size() * 2);
    for (const std::uint16_t s : samples) {
        out.push_back(static_cast<char>(s >> 8));  // most significant byte first
        out.push_back(static_cast<char>(s & 0xff));
    }
    atomic_write_file(path, out);
}

}  // namespace gfa
