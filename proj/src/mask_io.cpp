#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "maskbox/errors.hpp"
#include "maskbox/mask.hpp"

namespace maskbox {

namespace {

BinaryMask from_gray(int width, int height, const std::vector<std::uint8_t>& gray,
                     int threshold) {
    if (width <= 0 || height <= 0) throw io_error("zero-dimension image");
    std::vector<std::uint8_t> cells(gray.size());
    for (std::size_t i = 0; i < gray.size(); ++i) {
        cells[i] = gray[i] > threshold ? 1 : 0;
    }
    return BinaryMask(width, height, std::move(cells));
}

// PGM token reader; '#' starts a comment running to end of line.
std::string next_pgm_token(std::istream& in) {
    std::string token;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!token.empty()) return token;
            continue;
        }
        token.push_back(static_cast<char>(ch));
    }
    return token;
}

int parse_positive_int(const std::string& token, const char* what) {
    try {
        std::size_t pos = 0;
        const int value = std::stoi(token, &pos);
        if (pos != token.size() || value < 0) throw io_error("");
        return value;
    } catch (const std::exception&) {
        throw io_error(std::string("invalid ") + what + " in PGM header: '" + token + "'");
    }
}

BinaryMask load_pgm(const std::filesystem::path& path, int threshold) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path.string() + "'");

    const std::string magic = next_pgm_token(in);
    if (magic != "P2" && magic != "P5") throw io_error("unsupported PGM magic '" + magic + "'");
    const int width = parse_positive_int(next_pgm_token(in), "width");
    const int height = parse_positive_int(next_pgm_token(in), "height");
    const int maxval = parse_positive_int(next_pgm_token(in), "maxval");
    if (width <= 0 || height <= 0) throw io_error("zero-dimension image");
    if (maxval <= 0 || maxval > 255) {
        throw io_error("unsupported PGM maxval " + std::to_string(maxval));
    }

    const std::size_t total = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> gray(total);
    if (magic == "P5") {
        // Header ends with exactly one whitespace byte, already consumed.
        in.read(reinterpret_cast<char*>(gray.data()), static_cast<std::streamsize>(total));
        if (static_cast<std::size_t>(in.gcount()) != total) {
            throw io_error("truncated PGM pixel data in '" + path.string() + "'");
        }
    } else {
        for (std::size_t i = 0; i < total; ++i) {
            const std::string token = next_pgm_token(in);
            if (token.empty()) throw io_error("truncated PGM pixel data in '" + path.string() + "'");
            const int v = parse_positive_int(token, "pixel");
            if (v > maxval) throw io_error("PGM pixel exceeds maxval");
            gray[i] = static_cast<std::uint8_t>(v);
        }
    }
    return from_gray(width, height, gray, threshold);
}

struct PngReadState {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* file = nullptr;

    ~PngReadState() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (file) std::fclose(file);
    }
};

BinaryMask load_png(const std::filesystem::path& path, int threshold) {
    PngReadState state;
    state.file = std::fopen(path.string().c_str(), "rb");
    if (!state.file) throw io_error("cannot open '" + path.string() + "'");

    state.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!state.png) throw io_error("libpng initialization failed");
    state.info = png_create_info_struct(state.png);
    if (!state.info) throw io_error("libpng initialization failed");

    if (setjmp(png_jmpbuf(state.png))) {
        throw io_error("failed to decode PNG '" + path.string() + "'");
    }

    png_init_io(state.png, state.file);
    png_read_info(state.png, state.info);

    const png_uint_32 width = png_get_image_width(state.png, state.info);
    const png_uint_32 height = png_get_image_height(state.png, state.info);
    const int color_type = png_get_color_type(state.png, state.info);
    const int bit_depth = png_get_bit_depth(state.png, state.info);
    if (width == 0 || height == 0) throw io_error("zero-dimension image");

    // Normalize everything to 8-bit grayscale.
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(state.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(state.png);
    }
    if (png_get_valid(state.png, state.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(state.png);
    if (bit_depth == 16) png_set_strip_16(state.png);
    if (color_type == PNG_COLOR_TYPE_PALETTE || (color_type & PNG_COLOR_MASK_COLOR) != 0) {
        png_set_rgb_to_gray_fixed(state.png, 1, -1, -1);
    }
    png_set_strip_alpha(state.png);
    png_read_update_info(state.png, state.info);

    if (png_get_rowbytes(state.png, state.info) != width) {
        throw io_error("unsupported PNG layout in '" + path.string() + "'");
    }

    std::vector<std::uint8_t> gray(static_cast<std::size_t>(width) * height);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y] = gray.data() + static_cast<std::size_t>(y) * width;
    }
    png_read_image(state.png, rows.data());
    png_read_end(state.png, nullptr);

    return from_gray(static_cast<int>(width), static_cast<int>(height), gray, threshold);
}

}  // namespace

BinaryMask parse_grid(std::istream& in) {
    int width = 0, height = 0;
    if (!(in >> width >> height)) throw io_error("grid header must be 'width height'");
    if (width <= 0 || height <= 0) throw io_error("zero-dimension image");
    const std::size_t total = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> cells(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::string token;
        if (!(in >> token)) throw io_error("grid has fewer cells than the header declares");
        if (token == "0") {
            cells[i] = 0;
        } else if (token == "1") {
            cells[i] = 1;
        } else {
            throw io_error("grid token must be 0 or 1, got '" + token + "'");
        }
    }
    return BinaryMask(width, height, std::move(cells));
}

BinaryMask load_mask(const std::filesystem::path& path, int threshold) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw io_error("cannot open '" + path.string() + "'");
    char magic[8] = {};
    probe.read(magic, sizeof(magic));
    const std::streamsize got = probe.gcount();
    probe.close();

    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (got >= 8 && std::memcmp(magic, png_sig, 8) == 0) return load_png(path, threshold);
    if (got >= 2 && magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
        return load_pgm(path, threshold);
    }
    if (path.extension() == ".grid") {
        std::ifstream in(path);
        try {
            return parse_grid(in);
        } catch (const io_error& err) {
            throw io_error(std::string(err.what()) + " in '" + path.string() + "'");
        }
    }
    throw io_error("unsupported mask format: '" + path.string() + "'");
}

}  // namespace maskbox
