#pragma once

#include <iosfwd>
#include <string>

#include "ltc/cipher_core.hpp"

namespace ltc {

// Binary PGM ("P5"), maxval 255, square, side a supported order. Comments
// (#) in the header are accepted on read; the writer emits the fixed header
// "P5\n<n> <n>\n255\n".
ImageBuffer read_pgm(std::istream& in);
void write_pgm(const ImageBuffer& img, std::ostream& out);

ImageBuffer read_pgm_file(const std::string& path);
void write_pgm_file(const ImageBuffer& img, const std::string& path);

// Envelope stream/file forms of cipher_core's encode/decode.
CipherEnvelope read_envelope(std::istream& in);
void write_envelope(const CipherEnvelope& env, std::ostream& out);

CipherEnvelope read_envelope_file(const std::string& path);
void write_envelope_file(const CipherEnvelope& env, const std::string& path);

}  // namespace ltc
