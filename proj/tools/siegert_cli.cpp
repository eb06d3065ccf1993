// SPDX-License-Identifier: Apache-2.0
//
// Batch front end: `run` executes a configuration (seed scan + dimension
// continuation per partial wave, optional verification) and writes
// machine-readable results; `table` renders results.json as the classic
// four-column resonance table. Links only the public C API.
#include "siegert/siegert.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr size_t kNumBuf = 4096;

struct CliConfig {
  std::string V0 = "7.5";
  std::string Z = "-1";
  std::vector<int> waves = {0, 1, 2};
  int d = 0;
  int D_min = 6;
  int D_max = 40;
  int scan_dimension = 12;
  double re_min = 0.0, re_max = 8.0, im_min = -4.0, im_max = 0.0;
  int grid_re = 60, grid_im = 30;
  double tol = 1e-12;
  int digits = 40;
  int digits_per_dimension = 8;
  int max_digits = 2000;
  bool verify = true;
  std::string out_dir = "siegert_out";
};

// Flat key = value file; values use JSON scalar/array syntax; '#' comments.
void load_config_file(const std::string& path, CliConfig& cfg) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = line;
    auto hash = s.find('#');
    if (hash != std::string::npos)
      s.erase(hash);
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    if (s.empty())
      continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    std::string key = s.substr(0, eq);
    std::string val = s.substr(eq + 1);
    key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
    val.erase(val.begin(), std::find_if(val.begin(), val.end(), notspace));

    ordered_json v;
    try {
      v = ordered_json::parse(val);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": value is not a JSON scalar: " + val);
    }
    auto num_str = [&]() -> std::string {
      return v.is_string() ? v.get<std::string>() : val;
    };
    if (key == "V0")
      cfg.V0 = num_str();
    else if (key == "Z")
      cfg.Z = num_str();
    else if (key == "waves")
      cfg.waves = v.get<std::vector<int>>();
    else if (key == "d")
      cfg.d = v.get<int>();
    else if (key == "D_min")
      cfg.D_min = v.get<int>();
    else if (key == "D_max")
      cfg.D_max = v.get<int>();
    else if (key == "scan_D")
      cfg.scan_dimension = v.get<int>();
    else if (key == "re_min")
      cfg.re_min = v.get<double>();
    else if (key == "re_max")
      cfg.re_max = v.get<double>();
    else if (key == "im_min")
      cfg.im_min = v.get<double>();
    else if (key == "im_max")
      cfg.im_max = v.get<double>();
    else if (key == "grid_re")
      cfg.grid_re = v.get<int>();
    else if (key == "grid_im")
      cfg.grid_im = v.get<int>();
    else if (key == "tol")
      cfg.tol = v.get<double>();
    else if (key == "digits")
      cfg.digits = v.get<int>();
    else if (key == "digits_per_dimension")
      cfg.digits_per_dimension = v.get<int>();
    else if (key == "max_digits")
      cfg.max_digits = v.get<int>();
    else if (key == "verify")
      cfg.verify = v.get<bool>();
    else if (key == "out")
      cfg.out_dir = v.get<std::string>();
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key: " + key);
  }
}

std::string fetch(const sgt_run* run, sgt_status (*fn)(const sgt_run*, int, char*,
                                                       char*, size_t),
                  int i, bool imaginary) {
  char re[kNumBuf], im[kNumBuf];
  if (fn(run, i, re, im, sizeof(re)) != SGT_OK)
    throw std::runtime_error(sgt_last_error());
  return imaginary ? im : re;
}

// Truncation (not rounding) of a canonical "d.dddde[+-]XX" decimal string
// to `sig` significant figures, rendered in plain fixed-point notation.
std::string truncate_fixed(const std::string& sci, int sig) {
  if (sci == "0" || sci == "-0")
    return "0";
  std::string s = sci;
  bool neg = !s.empty() && s[0] == '-';
  if (neg)
    s.erase(0, 1);
  auto epos = s.find('e');
  long expo = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
  std::string digits = s.substr(0, epos);
  digits.erase(std::remove(digits.begin(), digits.end(), '.'), digits.end());
  if ((int)digits.size() > sig)
    digits.resize((size_t)sig);
  // value = 0.digits * 10^(expo+1)
  long point = expo + 1;
  std::string out;
  if (point <= 0) {
    out = "0." + std::string((size_t)(-point), '0') + digits;
  } else if ((size_t)point >= digits.size()) {
    out = digits + std::string((size_t)point - digits.size(), '0');
  } else {
    out = digits.substr(0, (size_t)point) + "." + digits.substr((size_t)point);
  }
  return neg ? "-" + out : out;
}

// gamma = 2 |im| computed on the decimal string: doubling a decimal is
// exact, so no precision is lost re-serializing.
std::string double_decimal(const std::string& sci) {
  if (sci == "0" || sci == "-0")
    return "0";
  std::string s = sci;
  if (!s.empty() && s[0] == '-')
    s.erase(0, 1);
  auto epos = s.find('e');
  std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
  long expo = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
  std::string digits = mant;
  digits.erase(std::remove(digits.begin(), digits.end(), '.'), digits.end());
  // multiply the digit string by two
  std::string doubled;
  int carry = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    int v = (*it - '0') * 2 + carry;
    doubled.insert(doubled.begin(), char('0' + v % 10));
    carry = v / 10;
  }
  if (carry) {
    doubled.insert(doubled.begin(), char('0' + carry));
    ++expo;
  }
  std::string out = doubled.substr(0, 1);
  if (doubled.size() > 1)
    out += "." + doubled.substr(1);
  out += "e" + std::string(expo < 0 ? "-" : "+");
  std::string xs = std::to_string(expo < 0 ? -expo : expo);
  if (xs.size() < 2)
    xs = "0" + xs;
  return out + xs;
}

int cmd_run(const CliConfig& cfg) {
  sgt_run_config rc;
  sgt_run_config_defaults(&rc);
  rc.v0 = cfg.V0.c_str();
  rc.z = cfg.Z.c_str();
  rc.waves = cfg.waves.data();
  rc.n_waves = (int)cfg.waves.size();
  rc.d = cfg.d;
  rc.D_min = cfg.D_min;
  rc.D_max = cfg.D_max;
  rc.scan_dimension = cfg.scan_dimension;
  rc.re_min = cfg.re_min;
  rc.re_max = cfg.re_max;
  rc.im_min = cfg.im_min;
  rc.im_max = cfg.im_max;
  rc.grid_re = cfg.grid_re;
  rc.grid_im = cfg.grid_im;
  rc.tol = cfg.tol;
  rc.base_digits = cfg.digits;
  rc.digits_per_dimension = cfg.digits_per_dimension;
  rc.max_digits = cfg.max_digits;
  rc.verify = cfg.verify ? 1 : 0;

  sgt_run* run = nullptr;
  sgt_status st = sgt_run_execute(&rc, &run);
  if (st == SGT_ERR_USAGE) {
    std::cerr << "error: " << sgt_last_error() << "\n";
    return 1;
  }
  if (st == SGT_ERR_PRECISION_EXHAUSTED) {
    std::cerr << "error: " << sgt_last_error() << "\n";
    return 3;
  }
  if (st != SGT_OK) {
    std::cerr << "error: " << sgt_last_error() << "\n";
    return 2;
  }

  fs::create_directories(cfg.out_dir);

  const int n = sgt_run_trace_count(run);

  // results.json
  ordered_json doc;
  {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    doc["generated_at"] = stamp;
  }
  doc["config"] = ordered_json{{"V0", cfg.V0},
                               {"Z", cfg.Z},
                               {"waves", cfg.waves},
                               {"d", cfg.d},
                               {"D_min", cfg.D_min},
                               {"D_max", cfg.D_max},
                               {"scan_D", cfg.scan_dimension},
                               {"region", {cfg.re_min, cfg.re_max, cfg.im_min, cfg.im_max}},
                               {"grid", {cfg.grid_re, cfg.grid_im}},
                               {"tol", cfg.tol},
                               {"digits", cfg.digits},
                               {"digits_per_dimension", cfg.digits_per_dimension},
                               {"max_digits", cfg.max_digits},
                               {"verify", cfg.verify}};
  doc["traces"] = ordered_json::array();
  for (int i = 0; i < n; ++i) {
    ordered_json t;
    t["l"] = sgt_run_trace_l(run, i);
    t["d"] = sgt_run_trace_d(run, i);
    int nu = sgt_run_trace_nu(run, i);
    if (nu >= 0)
      t["nu"] = nu;
    else
      t["nu"] = nullptr;
    t["status"] = sgt_run_trace_status(run, i);
    std::string im = fetch(run, sgt_run_trace_best, i, true);
    t["re_best"] = fetch(run, sgt_run_trace_best, i, false);
    t["im_best"] = im;
    t["gamma"] = double_decimal(im);
    t["uncertainty"] = sgt_run_trace_uncertainty(run, i);
    t["digits_used"] = sgt_run_trace_digits(run, i);
    int vs = sgt_run_trace_verify_state(run, i);
    if (vs < 0)
      t["verify_pass"] = nullptr;
    else
      t["verify_pass"] = vs == 1;
    doc["traces"].push_back(std::move(t));
  }
  {
    std::ofstream out(fs::path(cfg.out_dir) / "results.json");
    out << doc.dump(2) << "\n";
  }

  // roots.jsonl: one record per (trace, D), full precision
  {
    std::ofstream out(fs::path(cfg.out_dir) / "roots.jsonl");
    for (int i = 0; i < n; ++i) {
      int lo = sgt_run_trace_first_dimension(run, i);
      int hi = sgt_run_trace_last_dimension(run, i);
      for (int D = lo; D <= hi; ++D) {
        char re[kNumBuf], im[kNumBuf];
        if (sgt_run_trace_root(run, i, D, re, im, sizeof(re)) != SGT_OK)
          continue;
        ordered_json rec;
        rec["l"] = sgt_run_trace_l(run, i);
        rec["d"] = sgt_run_trace_d(run, i);
        int nu = sgt_run_trace_nu(run, i);
        if (nu >= 0)
          rec["nu"] = nu;
        else
          rec["nu"] = nullptr;
        rec["D"] = D;
        rec["re"] = re;
        rec["im"] = im;
        out << rec.dump() << "\n";
      }
    }
  }

  // convergence_<l>_<nu>.csv per labeled trace
  for (int i = 0; i < n; ++i) {
    int nu = sgt_run_trace_nu(run, i);
    if (nu < 0)
      continue;
    std::vector<int> D(1024);
    std::vector<double> lre(1024), lim(1024);
    int rows = sgt_run_trace_convergence(run, i, D.data(), lre.data(), lim.data(),
                                         (int)D.size());
    if (rows <= 0)
      continue;
    std::string name = "convergence_" + std::to_string(sgt_run_trace_l(run, i)) +
                       "_" + std::to_string(nu) + ".csv";
    std::ofstream out(fs::path(cfg.out_dir) / name);
    out << "D,L_re,L_im\n";
    for (int k = 0; k < rows; ++k) {
      auto cell = [](double v) {
        if (std::isinf(v))
          return std::string("-inf");
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        return std::string(buf);
      };
      out << D[k] << "," << cell(lre[k]) << "," << cell(lim[k]) << "\n";
    }
  }

  int converged = sgt_run_converged_count(run);
  int exhausted = sgt_run_precision_exhausted(run);
  std::cout << "traces: " << n << ", converged: " << converged << "\n";
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "results.json").string() << "\n";
  sgt_run_free(run);
  if (converged == 0)
    return exhausted ? 3 : 2;
  return 0;
}

int cmd_table(const std::string& results_path) {
  std::ifstream in(results_path);
  if (!in) {
    std::cerr << "error: cannot open " << results_path << "\n";
    return 1;
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  struct Row {
    int l, nu;
    std::string re, gamma_half;
  };
  std::vector<Row> rows;
  for (const auto& t : doc["traces"]) {
    if (t["nu"].is_null())
      continue;
    std::string im = t["im_best"].get<std::string>();
    if (!im.empty() && im[0] == '-')
      im.erase(0, 1); // Gamma/2 = |Im E|
    rows.push_back({t["l"].get<int>(), t["nu"].get<int>(),
                    t["re_best"].get<std::string>(), im});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.l != b.l ? a.l < b.l : a.nu < b.nu;
  });
  std::printf("%-3s %-3s %-22s %-22s\n", "l", "nu", "Re E", "Gamma/2");
  for (const auto& r : rows)
    std::printf("%-3d %-3d %-22s %-22s\n", r.l, r.nu,
                truncate_fixed(r.re, 16).c_str(),
                truncate_fixed(r.gamma_half, 16).c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-precision bound-state and resonance energies for "
               "V(r) = V0 r^2 exp(-r) + Z/r"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string config_path;
  auto* run = app.add_subcommand("run", "execute a configuration and write results");
  run->add_option("config", config_path, "flat key = value configuration file");
  run->add_option("--V0", cfg.V0, "well depth (decimal string)");
  run->add_option("--Z", cfg.Z, "Coulomb strength (decimal string)");
  run->add_option("--l", cfg.waves, "partial waves (repeatable)");
  run->add_option("--d", cfg.d, "Hankel displacement");
  run->add_option("--dmin", cfg.D_min, "first determinant dimension");
  run->add_option("--dmax", cfg.D_max, "last determinant dimension");
  run->add_option("--scan-dim", cfg.scan_dimension, "seed-scan dimension");
  run->add_option("--tol", cfg.tol, "continuation convergence target");
  run->add_option("--digits", cfg.digits, "base working precision (decimal digits)");
  run->add_option("--max-digits", cfg.max_digits, "precision cap");
  run->add_option("--re-min", cfg.re_min, "search region");
  run->add_option("--re-max", cfg.re_max, "search region");
  run->add_option("--im-min", cfg.im_min, "search region");
  run->add_option("--im-max", cfg.im_max, "search region");
  run->add_option("--grid-re", cfg.grid_re, "scan grid columns");
  run->add_option("--grid-im", cfg.grid_im, "scan grid rows");
  run->add_flag("--verify,!--no-verify", cfg.verify, "run the Siegert verifier");
  run->add_option("--out", cfg.out_dir, "output directory");

  std::string results_path = "siegert_out/results.json";
  auto* table = app.add_subcommand("table", "print the resonance table");
  table->add_option("results", results_path, "path to results.json");

  // Config file first, then flags override: parse flags twice around the
  // file load so the file never clobbers an explicit flag.
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      if (!config_path.empty()) {
        CliConfig file_cfg;
        load_config_file(config_path, file_cfg);
        // flags override file values; copy file values only for options
        // the user did not pass explicitly
        auto passed = [&](const std::string& name) {
          return run->count(name) > 0;
        };
        if (!passed("--V0")) cfg.V0 = file_cfg.V0;
        if (!passed("--Z")) cfg.Z = file_cfg.Z;
        if (!passed("--l")) cfg.waves = file_cfg.waves;
        if (!passed("--d")) cfg.d = file_cfg.d;
        if (!passed("--dmin")) cfg.D_min = file_cfg.D_min;
        if (!passed("--dmax")) cfg.D_max = file_cfg.D_max;
        if (!passed("--scan-dim")) cfg.scan_dimension = file_cfg.scan_dimension;
        if (!passed("--tol")) cfg.tol = file_cfg.tol;
        if (!passed("--digits")) cfg.digits = file_cfg.digits;
        if (!passed("--max-digits")) cfg.max_digits = file_cfg.max_digits;
        if (!passed("--re-min")) cfg.re_min = file_cfg.re_min;
        if (!passed("--re-max")) cfg.re_max = file_cfg.re_max;
        if (!passed("--im-min")) cfg.im_min = file_cfg.im_min;
        if (!passed("--im-max")) cfg.im_max = file_cfg.im_max;
        if (!passed("--grid-re")) cfg.grid_re = file_cfg.grid_re;
        if (!passed("--grid-im")) cfg.grid_im = file_cfg.grid_im;
        if (!passed("--verify")) cfg.verify = file_cfg.verify;
        if (!passed("--out")) cfg.out_dir = file_cfg.out_dir;
      }
      return cmd_run(cfg);
    }
    if (table->parsed())
      return cmd_table(results_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
