#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ajpeg/ajpeg.hpp"

namespace fs = std::filesystem;
using namespace ajpeg;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCorrupt = 4;

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::string fmt_psnr(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", p);
  return buf;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(',', pos);
    const std::string item = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!item.empty()) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw InvalidArgument("not a number: '" + item + "'");
      }
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

void print_channels(const EncodeResult& r) {
  for (std::size_t ch = 0; ch < kChannels; ++ch) {
    const ChannelEncoding& e = r.channels[ch];
    std::printf("%-2s %4zux%-4zu elements=%zu iterations=%zu E=%.6g E_final=%.6g stop=%s\n",
                kChannelNames[ch], e.rows, e.cols, e.leaves.size(), e.iterations, e.error, e.final_error,
                std::string(to_string(e.termination)).c_str());
  }
}

std::vector<fs::path> corpus_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".ppm" || ext == ".pgm")) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct BenchRow {
  std::string name;
  double tau;
  std::size_t adaptive_elements, uniform_elements, adaptive_bytes, uniform_bytes;
  double adaptive_psnr, uniform_psnr;
};

int run_bench(const std::string& dir, const std::string& taus, NormKind norm) {
  const auto files = corpus_files(dir);
  const auto tau_list = parse_list(taus);
  std::vector<RasterImage> images;
  for (const auto& f : files) images.push_back(read_ppm(f.string()));
  std::vector<BenchRow> rows(files.size() * tau_list.size());
  parallel_for(rows.size(), [&](std::size_t k) {
    const std::size_t i = k / tau_list.size();
    const double tau = tau_list[k % tau_list.size()];
    EncodeConfig cfg;
    cfg.tau = tau;
    cfg.norm = norm;
    const EncodeResult a = encode(images[i], cfg);
    const EncodeResult u = encode_uniform(images[i], norm);
    const auto ab = serialize(a.image);
    const auto ub = serialize(u.image);
    BenchRow& row = rows[k];
    row.name = files[i].filename().string();
    row.tau = tau;
    row.adaptive_elements = row.uniform_elements = 0;
    for (std::size_t ch = 0; ch < kChannels; ++ch) {
      row.adaptive_elements += a.image.channels[ch].size();
      row.uniform_elements += u.image.channels[ch].size();
    }
    row.adaptive_bytes = ab.size();
    row.uniform_bytes = ub.size();
    row.adaptive_psnr = compare(images[i], decode(ab)).psnr;
    row.uniform_psnr = compare(images[i], decode(ub)).psnr;
  });
  std::printf("image,tau,adaptive_elements,uniform_elements,adaptive_bytes,uniform_bytes,adaptive_psnr,uniform_psnr\n");
  for (const BenchRow& r : rows)
    std::printf("%s,%g,%zu,%zu,%zu,%zu,%s,%s\n", r.name.c_str(), r.tau, r.adaptive_elements, r.uniform_elements,
                r.adaptive_bytes, r.uniform_bytes, fmt_psnr(r.adaptive_psnr).c_str(),
                fmt_psnr(r.uniform_psnr).c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive-mesh JPEG-style image codec"};
  app.require_subcommand(1);

  // encode
  auto* enc = app.add_subcommand("encode", "Compress a PPM image");
  double tau = 0.0;
  double chroma_tau = 0.0;
  std::string norm_name = "l2";
  std::string enc_out, enc_in;
  enc->add_option("-t,--tau", tau, "Luma tolerance")->required();
  enc->add_option("--chroma-tau", chroma_tau, "Chroma tolerance (default 2 tau)");
  enc->add_option("--norm", norm_name, "Error norm: l2 or bv")->check(CLI::IsMember({"l2", "bv"}));
  enc->add_option("-o,--output", enc_out, "Output .ajpg")->required();
  enc->add_option("input", enc_in, "Input PPM")->required();

  // decode
  auto* dec = app.add_subcommand("decode", "Decompress to PPM");
  std::string dec_out, dec_in;
  dec->add_option("-o,--output", dec_out, "Output PPM")->required();
  dec->add_option("input", dec_in, "Input .ajpg")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "Error metrics between two images");
  std::string cmp_a, cmp_b;
  cmp->add_option("a", cmp_a)->required();
  cmp->add_option("b", cmp_b)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Adaptive vs uniform grid over a directory of PPMs (CSV)");
  std::string bench_dir, bench_taus = "0.01";
  std::string bench_norm = "l2";
  bench->add_option("--corpus", bench_dir, "Directory of PPM images")->required();
  bench->add_option("--tau", bench_taus, "Comma-separated tolerances");
  bench->add_option("--norm", bench_norm)->check(CLI::IsMember({"l2", "bv"}));

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Numerical checks of the refinement analysis");
  analyze->require_subcommand(1);
  auto* a_norms = analyze->add_subcommand("norms", "Operator norm per element size (CSV)");
  std::string norm_sizes = "16,32,64,128";
  a_norms->add_option("--size", norm_sizes, "Comma-separated square sizes");
  auto* a_bound = analyze->add_subcommand("bound", "Refinement probability bound (CSV)");
  std::string bound_eps = "0.0075,0.008,0.0085";
  double bound_delta = 0.13, bound_c = 1.0;
  a_bound->add_option("--eps", bound_eps, "Comma-separated noise amplitudes");
  a_bound->add_option("--delta", bound_delta);
  a_bound->add_option("--C", bound_c);
  auto* a_mc = analyze->add_subcommand("mc", "Monte-Carlo refinement-property check on the counterexample element");
  double mc_eps = 0.0075, mc_c0 = 4.0;
  std::size_t mc_trials = 10000;
  std::uint64_t mc_seed = 1;
  a_mc->add_option("--eps", mc_eps);
  a_mc->add_option("--c0", mc_c0);
  a_mc->add_option("--trials", mc_trials);
  a_mc->add_option("--seed", mc_seed);
  auto* a_noise = analyze->add_subcommand("noise", "Write a noised copy of an image");
  double noise_eps = 0.015;
  std::uint64_t noise_seed = 1;
  std::string noise_in, noise_out;
  a_noise->add_option("--eps", noise_eps);
  a_noise->add_option("--seed", noise_seed);
  a_noise->add_option("-o,--output", noise_out)->required();
  a_noise->add_option("input", noise_in)->required();

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "Write the synthetic test images as PPM");
  std::string gen_dir;
  std::size_t gen_size = 256;
  gen->add_option("dir", gen_dir)->required();
  gen->add_option("--size", gen_size);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*enc) {
      EncodeConfig cfg;
      cfg.tau = tau;
      cfg.norm = parse_norm(norm_name);
      if (enc->count("--chroma-tau")) cfg.chroma_tau = chroma_tau;
      const RasterImage img = read_ppm(enc_in);
      const EncodeResult r = encode(img, cfg);
      const auto bytes = serialize(r.image);
      write_bytes(enc_out, bytes);
      std::printf("%zux%zu -> %ux%u padded, %zu bytes\n", img.rows(), img.cols(), r.image.rows, r.image.cols,
                  bytes.size());
      print_channels(r);
    } else if (*dec) {
      const CompressedImage c = deserialize(read_bytes(dec_in));
      const RasterImage img = decode(c);
      write_ppm(dec_out, img);
      std::printf("%zux%zu elements Y=%zu Cb=%zu Cr=%zu\n", img.rows(), img.cols(), c.channels[0].size(),
                  c.channels[1].size(), c.channels[2].size());
    } else if (*cmp) {
      const Metrics m = compare(read_ppm(cmp_a), read_ppm(cmp_b));
      std::printf("weighted_l2=%.8g bv=%.8g psnr=%s\n", m.weighted_l2, m.bv, fmt_psnr(m.psnr).c_str());
    } else if (*bench) {
      return run_bench(bench_dir, bench_taus, parse_norm(bench_norm));
    } else if (*a_norms) {
      std::printf("size,norm\n");
      for (double s : parse_list(norm_sizes)) {
        const auto n = static_cast<std::size_t>(s);
        std::printf("%zu,%.10f\n", n, analysis::operator_norm(n, n));
      }
    } else if (*a_bound) {
      std::printf("epsilon,z,failure,probability\n");
      for (double eps : parse_list(bound_eps)) {
        analysis::ProbBoundParams p;
        p.epsilon = eps;
        p.delta = bound_delta;
        p.C = bound_c;
        const auto opt = analysis::maximize_p_ref(p);
        std::printf("%g,%.6f,%.6e,%.15f\n", eps, opt.z, opt.failure, opt.probability);
      }
    } else if (*a_mc) {
      const auto rep = analysis::monte_carlo_refprop(analysis::single_coefficient_element(), mc_eps, mc_c0,
                                                     mc_trials, mc_seed);
      std::printf("trials,violations,rate,max_ratio\n%zu,%zu,%.6g,%.6g\n", rep.trials, rep.violations,
                  rep.rate(), rep.max_ratio);
    } else if (*a_noise) {
      write_ppm(noise_out, analysis::add_noise(read_ppm(noise_in), {noise_eps, noise_seed}));
    } else if (*gen) {
      fs::create_directories(gen_dir);
      for (const auto& item : make_corpus(gen_size))
        write_ppm((fs::path(gen_dir) / (item.name + ".ppm")).string(), item.image);
    }
  } catch (const CorruptStream& e) {
    std::fprintf(stderr, "corrupt stream: %s\n", e.what());
    return kExitCorrupt;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kExitUsage;
  }
  return 0;
}
