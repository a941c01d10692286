#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lfam/lfam.hpp"
#include "lfam/report_json.hpp"

namespace lfam::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;
inline constexpr int kVerificationFailed = 2;

struct RunConfig {
  std::uint64_t p = 0;
  unsigned n = 1;
  int a = 0;
  std::string poly;
  std::string convention = "reciprocal";
  std::string out;
  std::vector<std::string> inputs;
  std::string image;
  int strength = 3;
  std::string shifts;
  std::optional<std::uint32_t> m;
  bool fast = false;
  bool naive = false;
  bool skip_m0 = false;
  double threshold = 4.0;
  std::size_t scale = 1;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot write '" + path + "'");
  os << data;
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

inline void emit(const RunConfig& cfg, const std::string& data, std::ostream& out) {
  if (cfg.out.empty() || cfg.out == "-")
    out << data;
  else
    write_file(cfg.out, data);
}

inline LegendreParams params_from(const RunConfig& cfg) {
  const PrimeModulus p(cfg.p);
  std::optional<Poly> poly;
  if (!cfg.poly.empty()) poly = parse_poly(cfg.poly, p);
  return LegendreParams::make(cfg.p, cfg.n, cfg.a, poly, parse_basis_convention(cfg.convention));
}

inline Shift parse_shifts(const std::string& text) {
  Shift out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw std::invalid_argument("bad shift '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

inline void add_field_options(CLI::App* sub, RunConfig& cfg, bool with_a = true) {
  sub->add_option("--p", cfg.p, "odd prime")->required();
  sub->add_option("--n", cfg.n, "dimension of the Legendre array (field degree)")->capture_default_str();
  if (with_a) sub->add_option("--a", cfg.a, "origin value: -1, 0 or 1")->capture_default_str();
  sub->add_option("--poly", cfg.poly, "primitive polynomial, coefficients constant term first (e.g. 2,4,1)");
  sub->add_option("--convention", cfg.convention, "basis convention: reciprocal | direct")->capture_default_str();
}

}  // namespace detail

/// Runs the command line; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Legendre array families: generation, correlation verification and image watermarking"};
  app.require_subcommand(1);
  RunConfig cfg;
  using detail::add_field_options;

  auto* gen_leg = app.add_subcommand("gen-legendre", "write an n-dimensional Legendre array (NDA1)");
  add_field_options(gen_leg, cfg);
  gen_leg->add_option("--out", cfg.out, "output file (default stdout)");

  auto* gen_fam = app.add_subcommand("gen-family", "write the 2n-dimensional family members as S_<m>.nda");
  add_field_options(gen_fam, cfg);
  gen_fam->add_option("--m", cfg.m, "write only member m");
  gen_fam->add_option("--out", cfg.out, "output directory")->required();

  auto* corr = app.add_subcommand("corr", "periodic cross-correlation table of two NDA1 arrays");
  corr->add_option("inputs", cfg.inputs, "A.nda B.nda")->required()->expected(2);
  corr->add_flag("--fast", cfg.fast, "use the transform path");
  corr->add_option("--out", cfg.out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check the auto/cross-correlation bounds of a family (JSON report)");
  add_field_options(verify, cfg, false);
  verify->add_flag("--fast", cfg.fast, "use the transform path");
  verify->add_flag("--skip-m0", cfg.skip_m0, "leave out member m = 0");
  verify->add_option("--out", cfg.out, "output file (default stdout)");

  auto* welch = app.add_subcommand("welch", "exact bound-to-peak ratio against the Welch figure (JSON)");
  welch->add_option("--p", cfg.p, "odd prime")->required();
  welch->add_option("--n", cfg.n, "dimension")->capture_default_str();

  auto* flat = app.add_subcommand("flatten", "partially flatten an NDA1 array to rank 2");
  flat->add_option("input", cfg.inputs, "input .nda")->required()->expected(1);
  flat->add_option("--out", cfg.out, "output file (default stdout)");

  auto* render_cmd = app.add_subcommand("render", "render an array as PGM (-1 white, 0 gray, +1 black)");
  render_cmd->add_option("input", cfg.inputs, "input .nda")->required()->expected(1);
  render_cmd->add_option("--scale", cfg.scale, "pixels per cell")->capture_default_str()->check(CLI::PositiveNumber);
  render_cmd->add_option("--out", cfg.out, "output .pgm")->required();

  auto* embed_cmd = app.add_subcommand("embed", "embed a shifted family member into a PGM image");
  embed_cmd->add_option("--image", cfg.image, "carrier P5/P2 PGM")->required();
  add_field_options(embed_cmd, cfg, false);
  embed_cmd->add_option("--m", cfg.m, "family member")->required();
  embed_cmd->add_option("--shifts", cfg.shifts, "2n comma-separated shifts")->required();
  embed_cmd->add_option("--strength", cfg.strength, "amplitude per chip")->capture_default_str();
  embed_cmd->add_option("--out", cfg.out, "output .pgm")->required();

  auto* extract_cmd = app.add_subcommand("extract", "recover the payload from a marked PGM (JSON)");
  extract_cmd->add_option("--image", cfg.image, "marked PGM")->required();
  add_field_options(extract_cmd, cfg, false);
  extract_cmd->add_option("--threshold", cfg.threshold, "SNR below which the result is flagged")->capture_default_str();
  extract_cmd->add_flag("--naive", cfg.naive, "use direct summation instead of the transform path");
  extract_cmd->add_flag("--skip-m0", cfg.skip_m0, "leave out member m = 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    if (*gen_leg) {
      detail::emit(cfg, serialize(legendre_array(detail::params_from(cfg))), out);
    } else if (*gen_fam) {
      const auto params = detail::params_from(cfg);
      const TernaryArray a = legendre_array(params);
      std::filesystem::create_directories(cfg.out);
      std::vector<std::uint32_t> which;
      if (cfg.m) {
        which.push_back(*cfg.m);
      } else {
        for (std::uint32_t m = 0; m < params.p.value(); ++m) which.push_back(m);
      }
      for (auto m : which) {
        const auto member = build_member(a, m);
        detail::write_file((std::filesystem::path(cfg.out) / ("S_" + std::to_string(m) + ".nda")).string(),
                           serialize(member.arr));
      }
    } else if (*corr) {
      const IntArray a = deserialize_int(detail::read_file(cfg.inputs[0]));
      const IntArray b = deserialize_int(detail::read_file(cfg.inputs[1]));
      const IntArray theta = cfg.fast ? full_correlation_fast(a, b) : full_correlation(a, b);
      detail::emit(cfg, serialize(theta), out);
    } else if (*verify) {
      const auto params = detail::params_from(cfg);
      const auto fam = build_family(params);
      const auto result =
          verify_family(fam, cfg.fast ? CorrelationMethod::fast : CorrelationMethod::naive, cfg.skip_m0);
      detail::emit(cfg, to_json(result, params).dump(2) + "\n", out);
      return result.passed ? kOk : kVerificationFailed;
    } else if (*welch) {
      out << to_json(welch_metrics(cfg.p, cfg.n)).dump(2) << "\n";
    } else if (*flat) {
      const auto doc = deserialize_document(detail::read_file(cfg.inputs[0]));
      detail::emit(cfg, serialize(flatten(doc.values), doc.kind), out);
    } else if (*render_cmd) {
      const IntArray a = deserialize_int(detail::read_file(cfg.inputs[0]));
      const IntArray f = a.rank() == 2 ? a : flatten(a);
      detail::write_file(cfg.out, write_pgm(render(f, cfg.scale)));
    } else if (*embed_cmd) {
      const auto params = detail::params_from(cfg);
      if (*cfg.m >= params.p.value())
        throw std::invalid_argument("--m " + std::to_string(*cfg.m) + " outside [0, " +
                                    std::to_string(params.p.value()) + ")");
      const auto member = build_member(params, *cfg.m);
      const GrayImage img = read_pgm(detail::read_file(cfg.image));
      const Payload payload{*cfg.m, detail::parse_shifts(cfg.shifts)};
      detail::write_file(cfg.out, write_pgm(embed(img, member, payload, EmbedConfig{cfg.strength})));
    } else if (*extract_cmd) {
      const auto params = detail::params_from(cfg);
      const GrayImage img = read_pgm(detail::read_file(cfg.image));
      ExtractConfig ec;
      ec.snr_threshold = cfg.threshold;
      ec.method = cfg.naive ? CorrelationMethod::naive : CorrelationMethod::fast;
      ec.skip_m0 = cfg.skip_m0;
      out << to_json(extract(img, build_family(params), ec)).dump() << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kOk;
}

}  // namespace lfam::cli
