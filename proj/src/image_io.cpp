#include "ltc/image_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

namespace ltc {
namespace {

// Reads the next unsigned header field, skipping whitespace and # comments.
std::uint32_t next_header_value(std::istream& in) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
      continue;
    }
    if (std::isspace(c)) {
      c = in.get();
      continue;
    }
    break;
  }
  if (c == EOF) fail(Errc::truncated, "PGM header ends early");
  if (!std::isdigit(c)) fail(Errc::bad_magic, "malformed PGM header field");
  std::uint64_t value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
    if (value > 0xffffffffull) fail(Errc::bad_magic, "PGM header value too large");
    c = in.get();
  }
  if (c != EOF) in.unget();
  return static_cast<std::uint32_t>(value);
}

}  // namespace

ImageBuffer read_pgm(std::istream& in) {
  const int m0 = in.get();
  const int m1 = in.get();
  if (m0 == EOF || m1 == EOF) fail(Errc::truncated, "stream ends before PGM magic");
  if (m0 != 'P' || m1 != '5') fail(Errc::bad_magic, "expected binary PGM magic P5");

  const std::uint32_t width = next_header_value(in);
  const std::uint32_t height = next_header_value(in);
  const std::uint32_t maxval = next_header_value(in);
  const int sep = in.get();
  if (sep == EOF) fail(Errc::truncated, "PGM header ends before pixel data");
  if (!std::isspace(sep)) fail(Errc::bad_magic, "missing whitespace after maxval");

  if (width != height)
    fail(Errc::non_square, std::to_string(width) + "x" + std::to_string(height));
  if (maxval != 255) fail(Errc::bad_maxval, "maxval must be 255, got " + std::to_string(maxval));
  if (!is_supported_order(width))
    fail(Errc::unsupported_size, "side length " + std::to_string(width) +
                                     " unsupported (supported: 4 8 9 16 25 256)");

  ImageBuffer img;
  img.n = width;
  img.pixels.resize(static_cast<std::size_t>(width) * width);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
    fail(Errc::truncated, "pixel data ends early");
  return img;
}

void write_pgm(const ImageBuffer& img, std::ostream& out) {
  validate_image(img);
  out << "P5\n" << img.n << ' ' << img.n << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
  if (!out) fail(Errc::io_failure, "PGM write failed");
}

ImageBuffer read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path);
  return read_pgm(in);
}

void write_pgm_file(const ImageBuffer& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_failure, "cannot open " + path + " for writing");
  write_pgm(img, out);
  out.flush();
  if (!out) fail(Errc::io_failure, "write to " + path + " failed");
}

CipherEnvelope read_envelope(std::istream& in) {
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  return decode_envelope(bytes);
}

void write_envelope(const CipherEnvelope& env, std::ostream& out) {
  const std::vector<std::uint8_t> bytes = encode_envelope(env);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::io_failure, "envelope write failed");
}

CipherEnvelope read_envelope_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path);
  return read_envelope(in);
}

void write_envelope_file(const CipherEnvelope& env, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_failure, "cannot open " + path + " for writing");
  write_envelope(env, out);
  out.flush();
  if (!out) fail(Errc::io_failure, "write to " + path + " failed");
}

}  // namespace ltc
