#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ltc/analysis_metrics.hpp"
#include "ltc/image_io.hpp"
#include "ltc/selftest.hpp"

// Exit codes, one family per failure class:
//   0 success                 5 bad cipher envelope
//   2 usage                   6 bad key file
//   3 file I/O                7 cipher domain error
//   4 bad image file          8 sum mismatch on decrypt (without --force)
//                             9 verify/selftest failure
namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitImage = 4;
constexpr int kExitEnvelope = 5;
constexpr int kExitKeyFile = 6;
constexpr int kExitCipher = 7;
constexpr int kExitSumMismatch = 8;
constexpr int kExitVerify = 9;

[[noreturn]] void die(const ltc::Error& e, int context_code) {
  std::cerr << "error: " << e.what() << '\n';
  std::exit(e.code() == ltc::Errc::io_failure ? kExitIo : context_code);
}

ltc::KeyMaterial load_key(const std::string& path) {
  try {
    std::ifstream in(path);
    if (!in) ltc::fail(ltc::Errc::io_failure, "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return ltc::parse_key_material(text);
  } catch (const ltc::Error& e) {
    die(e, kExitKeyFile);
  }
}

ltc::ImageBuffer load_image(const std::string& path) {
  try {
    return ltc::read_pgm_file(path);
  } catch (const ltc::Error& e) {
    die(e, kExitImage);
  }
}

ltc::CipherEnvelope load_envelope(const std::string& path) {
  try {
    return ltc::read_envelope_file(path);
  } catch (const ltc::Error& e) {
    die(e, kExitEnvelope);
  }
}

struct PublicOverrides {
  std::uint32_t a_code = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  bool have_a = false;
  bool have_c1 = false;
  bool have_c2 = false;

  void apply(ltc::KeyMaterial& key) const {
    if (have_a) key.a_code = a_code;
    if (have_c1) key.c1 = c1;
    if (have_c2) key.c2 = c2;
  }
};

void add_override_options(CLI::App* cmd, PublicOverrides& ovr) {
  cmd->add_option("--a", ovr.a_code, "public element a as a field code (0 = field generator)")
      ->each([&ovr](const std::string&) { ovr.have_a = true; });
  cmd->add_option("--c1", ovr.c1, "diffusion weight c1")
      ->each([&ovr](const std::string&) { ovr.have_c1 = true; });
  cmd->add_option("--c2", ovr.c2, "diffusion weight c2")
      ->each([&ovr](const std::string&) { ovr.have_c2 = true; });
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::string format_correlation(const std::optional<double>& r) {
  return r ? format_real(*r) : "degenerate";
}

void print_report(std::ostream& out, const std::string& label, const ltc::MetricsReport& report) {
  out << "image=" << label << '\n';
  out << "variance=" << format_real(report.variance) << '\n';
  out << "r_h=" << format_correlation(report.correlation.horizontal) << '\n';
  out << "r_v=" << format_correlation(report.correlation.vertical) << '\n';
  out << "r_d=" << format_correlation(report.correlation.diagonal) << '\n';
  out << "entropy=" << format_real(report.entropy) << '\n';
  if (report.npcr) out << "npcr=" << format_real(*report.npcr) << '\n';
  if (report.uaci) out << "uaci=" << format_real(*report.uaci) << '\n';
  if (report.psnr)
    out << "psnr=" << (std::isinf(*report.psnr) ? "inf" : format_real(*report.psnr)) << '\n';
}

nlohmann::json correlation_json(const std::optional<double>& r) {
  if (!r) return nullptr;
  return *r;
}

nlohmann::json report_json(const std::string& label, const ltc::MetricsReport& report) {
  nlohmann::json j;
  j["image"] = label;
  j["variance"] = report.variance;
  j["r_h"] = correlation_json(report.correlation.horizontal);
  j["r_v"] = correlation_json(report.correlation.vertical);
  j["r_d"] = correlation_json(report.correlation.diagonal);
  j["entropy"] = report.entropy;
  if (report.npcr) j["npcr"] = *report.npcr;
  if (report.uaci) j["uaci"] = *report.uaci;
  if (report.psnr) {
    if (std::isinf(*report.psnr))
      j["psnr"] = "inf";
    else
      j["psnr"] = *report.psnr;
  }
  return j;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("LTC_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 0);
  if (end == env || *end != '\0') {
    std::cerr << "error: LTC_SEED is not a valid integer\n";
    std::exit(kExitUsage);
  }
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grayscale image cipher built on orthogonal Latin squares and their transversals"};
  app.require_subcommand(1);

  struct {
    std::string key_path, input, output;
    PublicOverrides ovr;
    bool verify = false;
  } enc;
  CLI::App* enc_cmd = app.add_subcommand("encrypt", "Encrypt a PGM image into a cipher envelope");
  enc_cmd->add_option("-k,--key", enc.key_path, "key file")->required();
  enc_cmd->add_option("-i,--input", enc.input, "plaintext PGM")->required();
  enc_cmd->add_option("-o,--output", enc.output, "output envelope (.ltc)")->required();
  add_override_options(enc_cmd, enc.ovr);
  enc_cmd->add_flag("--debug-verify", enc.verify, "re-verify all combinatorial invariants");

  struct {
    std::string key_path, input, output;
    PublicOverrides ovr;
    bool verify = false;
    bool force = false;
  } dec;
  CLI::App* dec_cmd = app.add_subcommand("decrypt", "Decrypt a cipher envelope into a PGM image");
  dec_cmd->add_option("-k,--key", dec.key_path, "key file")->required();
  dec_cmd->add_option("-i,--input", dec.input, "cipher envelope (.ltc)")->required();
  dec_cmd->add_option("-o,--output", dec.output, "output PGM")->required();
  add_override_options(dec_cmd, dec.ovr);
  dec_cmd->add_flag("--debug-verify", dec.verify, "re-verify all combinatorial invariants");
  dec_cmd->add_flag("--force", dec.force, "exit 0 even when the recovered pixel sum mismatches");

  struct {
    std::string plain, cipher, json_path;
    std::uint32_t pairs = 4000;
    std::uint64_t seed = 0;
    bool have_seed = false;
    bool dump_histogram = false;
  } ana;
  CLI::App* ana_cmd = app.add_subcommand("analyze", "Statistical battery for an image");
  ana_cmd->add_option("-c,--cipher", ana.cipher, "image to analyze (PGM)")->required();
  ana_cmd->add_option("-p,--plain", ana.plain, "reference plaintext PGM for npcr/uaci/psnr");
  ana_cmd->add_option("--pairs", ana.pairs, "correlation sample pairs per direction");
  ana_cmd->add_option("--seed", ana.seed, "sampler seed (default: LTC_SEED or 0)")
      ->each([&ana](const std::string&) { ana.have_seed = true; });
  ana_cmd->add_option("--json", ana.json_path, "also write the reports as JSON to this path");
  ana_cmd->add_flag("--histogram", ana.dump_histogram, "dump the 256 histogram bins");

  struct {
    std::string key_path;
    std::uint32_t n = 0;
    std::uint64_t sumq = 0;
    PublicOverrides ovr;
  } ver;
  CLI::App* ver_cmd =
      app.add_subcommand("verify", "Derive material for (key, n, sumQ) and re-check every invariant");
  ver_cmd->add_option("-k,--key", ver.key_path, "key file")->required();
  ver_cmd->add_option("--n", ver.n, "side length")->required();
  ver_cmd->add_option("--sumq", ver.sumq, "plaintext pixel sum")->required();
  add_override_options(ver_cmd, ver.ovr);

  CLI::App* self_cmd = app.add_subcommand("selftest", "Run the built-in golden checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*enc_cmd) {
    ltc::KeyMaterial key = load_key(enc.key_path);
    enc.ovr.apply(key);
    const ltc::ImageBuffer img = load_image(enc.input);
    ltc::CipherEnvelope env;
    try {
      env = ltc::encrypt(img, key, enc.verify);
    } catch (const ltc::Error& e) {
      die(e, kExitCipher);
    }
    try {
      ltc::write_envelope_file(env, enc.output);
    } catch (const ltc::Error& e) {
      die(e, kExitIo);
    }
    return 0;
  }

  if (*dec_cmd) {
    ltc::KeyMaterial key = load_key(dec.key_path);
    dec.ovr.apply(key);
    const ltc::CipherEnvelope env = load_envelope(dec.input);
    ltc::DecryptResult result;
    try {
      result = ltc::decrypt(env, key, dec.verify);
    } catch (const ltc::Error& e) {
      die(e, kExitCipher);
    }
    try {
      ltc::write_pgm_file(result.image, dec.output);
    } catch (const ltc::Error& e) {
      die(e, kExitIo);
    }
    if (!result.sum_matches) {
      if (!dec.force) {
        std::cerr << "error: SumMismatch: recovered pixel sum does not match the envelope "
                     "(wrong key or damaged payload); output written anyway\n";
        return kExitSumMismatch;
      }
      std::cout << "sum_mismatch=1\n";
    }
    return 0;
  }

  if (*ana_cmd) {
    const std::uint64_t seed = ana.have_seed ? ana.seed : default_seed();
    const ltc::ImageBuffer cipher = load_image(ana.cipher);
    std::optional<ltc::ImageBuffer> plain;
    if (!ana.plain.empty()) plain = load_image(ana.plain);

    nlohmann::json all = nlohmann::json::array();
    try {
      if (plain) {
        const ltc::MetricsReport plain_report = ltc::analyze_image(*plain, ana.pairs, seed);
        print_report(std::cout, ana.plain, plain_report);
        all.push_back(report_json(ana.plain, plain_report));
      }
      const ltc::MetricsReport cipher_report =
          ltc::analyze_image(cipher, ana.pairs, seed, plain ? &*plain : nullptr);
      print_report(std::cout, ana.cipher, cipher_report);
      all.push_back(report_json(ana.cipher, cipher_report));
      if (ana.dump_histogram) {
        const auto bins = ltc::histogram(cipher);
        std::cout << "histogram=";
        for (std::size_t k = 0; k < bins.size(); ++k)
          std::cout << (k == 0 ? "" : " ") << bins[k];
        std::cout << '\n';
      }
    } catch (const ltc::Error& e) {
      die(e, kExitCipher);
    }

    if (!ana.json_path.empty()) {
      std::ofstream out(ana.json_path);
      if (!out) {
        std::cerr << "error: cannot open " << ana.json_path << " for writing\n";
        return kExitIo;
      }
      out << all.dump(2) << '\n';
    }
    return 0;
  }

  if (*ver_cmd) {
    ltc::KeyMaterial key = load_key(ver.key_path);
    ver.ovr.apply(key);
    try {
      const ltc::CipherMaterial mat = ltc::derive_material(ver.sumq, ver.n, key);
      ltc::verify_material(mat);
    } catch (const ltc::Error& e) {
      die(e, kExitVerify);
    }
    std::cout << "verify: ok (n=" << ver.n << ", sumQ=" << ver.sumq << ")\n";
    return 0;
  }

  if (*self_cmd) {
    const int failures = ltc::run_selftest(std::cout);
    if (failures != 0) {
      std::cerr << "error: selftest reported " << failures << " failure(s)\n";
      return kExitVerify;
    }
    std::cout << "selftest: ok\n";
    return 0;
  }

  return kExitUsage;
}
