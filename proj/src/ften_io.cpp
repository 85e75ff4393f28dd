#include "gfa/ften_io.hpp"

#include <bit>
#include <cstdint>

#include "gfa/errors.hpp"
#include "gfa/io_util.hpp"

namespace gfa {

namespace {

constexpr char kMagic[] = "FTEN ";

int parse_dim(const std::string& bytes, std::size_t& pos, char terminator, const char* what) {
    const std::size_t start = pos;
    long value = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1 << 28) throw parse_error(std::string(what) + " too large", start);
        ++pos;
    }
    if (pos == start) throw parse_error(std::string("expected ") + what, pos);
    if (pos >= bytes.size() || bytes[pos] != terminator) {
        throw parse_error(std::string("expected '") + terminator + "' after " + what, pos);
    }
    ++pos;
    if (value < 1) throw parse_error(std::string(what) + " must be >= 1", start);
    return static_cast<int>(value);
}

}  // namespace

feature_map decode_tensor(const std::string& bytes) {
    if (bytes.rfind(kMagic, 0) != 0) {
        throw parse_error("missing FTEN magic", 0);
    }
    std::size_t pos = sizeof(kMagic) - 1;
    const int h = parse_dim(bytes, pos, ' ', "height");
    const int w = parse_dim(bytes, pos, ' ', "width");
    const int c = parse_dim(bytes, pos, '\n', "channels");

    const std::size_t count = static_cast<std::size_t>(h) * w * c;
    const std::size_t payload = bytes.size() - pos;
    if (payload != count * 4) {
        throw parse_error("payload length mismatch: header implies " + std::to_string(count * 4) +
                              " bytes, file holds " + std::to_string(payload),
                          pos);
    }

    std::vector<float> data(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t at = pos + k * 4;
        const std::uint32_t u = static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at])) |
                                static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + 1]))
                                    << 8 |
                                static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + 2]))
                                    << 16 |
                                static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + 3]))
                                    << 24;
        data[k] = std::bit_cast<float>(u);
    }
    try {
        return {h, w, c, std::move(data)};
    } catch (const domain_error& e) {
        throw parse_error(std::string("invalid tensor payload: ") + e.what(), pos);
    }
}

feature_map read_tensor(const std::string& path) { return decode_tensor(read_file(path)); }

std::string encode_tensor(const feature_map& f) {
    std::string out = kMagic + std::to_string(f.height()) + " " + std::to_string(f.width()) + " " +
                      std::to_string(f.channels()) + "\n";
    out.reserve(out.size() + f.data().size() * 4);
    for (const float v : f.data()) {
        const auto u = std::bit_cast<std::uint32_t>(v);
        out.push_back(static_cast<char>(u & 0xff));
        out.push_back(static_cast<char>((u >> 8) & 0xff));
        out.push_back(static_cast<char>((u >> 16) & 0xff));
        out.push_back(static_cast<char>((u >> 24) & 0xff));
    }
    return out;
}

void write_tensor(const std::string& path, const feature_map& f) {
    atomic_write_file(path, encode_tensor(f));
}

}  // namespace gfa
