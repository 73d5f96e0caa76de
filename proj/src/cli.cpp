#include "dephasing/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dephasing/dfs.hpp"
#include "dephasing/evolution.hpp"
#include "dephasing/model.hpp"
#include "dephasing/verify.hpp"

namespace dephasing::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text << '\n';
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + *path + "'");
  file << text << '\n';
}

std::uint64_t parse_label(std::string_view token, int register_size) {
  if (token.empty()) throw ParseError("empty register label in --pairs");
  if (token.front() == 'b') {
    BasisIndex idx = BasisIndex::from_bits(token.substr(1));
    if (idx.width() != register_size) {
      throw PairRangeError("binary label '" + std::string(token) + "' must have K=" + std::to_string(register_size) +
                           " digits");
    }
    return idx.value();
  }
  if (!std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }) || token.size() > 19) {
    throw ParseError("invalid register label '" + std::string(token) + "'");
  }
  std::uint64_t value = std::stoull(std::string(token));
  if (value >> register_size != 0) {
    throw PairRangeError("register label " + std::string(token) + " outside 0.." +
                         std::to_string((std::uint64_t{1} << register_size) - 1));
  }
  return value;
}

// Runs `body`, mapping library errors onto the exit-code contract.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const PairRangeError& e) {
    err << "error: " << e.what() << '\n';
    return kPairOutOfRange;
  } catch (const LimitError& e) {
    err << "error: " << e.what() << '\n';
    return kLimitExceeded;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const IndexError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const StateError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

json pair_json(std::uint64_t k, std::uint64_t k2, int width) {
  return {{"k", k}, {"k2", k2}, {"bits", {BasisIndex(k, width).bits(), BasisIndex(k2, width).bits()}}};
}

}  // namespace

std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pairs(std::string_view text, int register_size) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!item.empty()) {
      auto colon = item.find(':');
      if (colon == std::string_view::npos) throw ParseError("pair '" + std::string(item) + "' must be k:k2");
      pairs.emplace_back(parse_label(item.substr(0, colon), register_size),
                         parse_label(item.substr(colon + 1), register_size));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return pairs;
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    InteractionMatrix g = parse_interaction_matrix(read_file(config.matrix_path));
    write_text(config.out_path, serialize_report(dfs_report(g)), out);
    return kOk;
  });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    InteractionMatrix g = parse_interaction_matrix(read_file(config.matrix_path));
    if (!config.env_path) throw ParseError("simulate requires --env");
    EnvState env0 = parse_env_state(read_file(*config.env_path));
    if (env0.width() != g.env_size()) {
      throw DimensionError("environment has N=" + std::to_string(env0.width()) + " but the matrix has N=" +
                           std::to_string(g.env_size()));
    }
    const int width = g.register_size();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    if (config.pairs && !config.pairs->empty()) {
      pairs = parse_pairs(*config.pairs, width);
    } else {
      const DfsPartition partition = dfs_partition(g);
      const auto& largest = partition.classes.front().members;
      for (std::size_t a = 0; a < largest.size() && pairs.size() < kMaxDefaultPairs; ++a) {
        for (std::size_t b = a + 1; b < largest.size() && pairs.size() < kMaxDefaultPairs; ++b) {
          pairs.emplace_back(largest[a], largest[b]);
        }
      }
    }
    const auto grid = time_grid(config.t_max, config.t_steps);

    std::filesystem::path dir = config.out_path.value_or(".");
    std::filesystem::create_directories(dir);

    json entries = json::array();
    for (const auto& [k, k2] : pairs) {
      BasisIndex a(k, width);
      BasisIndex b(k2, width);
      RateSeries series = rate_series(g, a, b, env0, grid);
      std::string name = "rate_" + std::to_string(k) + "_" + std::to_string(k2) + ".csv";
      std::ofstream csv(dir / name, std::ios::binary);
      if (!csv) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
      write_rate_csv(csv, series);
      double min_abs = 1.0;
      for (const auto& s : series.samples) min_abs = std::min(min_abs, std::abs(s.r));
      json entry = pair_json(k, k2, width);
      entry["dfs"] = preserves_coherence(g, a, b);
      entry["min_abs_r"] = min_abs;
      entry["csv"] = name;
      entries.push_back(std::move(entry));
    }

    json summary;
    summary["K"] = width;
    summary["N"] = g.env_size();
    summary["t_max"] = config.t_max;
    summary["t_steps"] = config.t_steps;
    summary["pairs"] = std::move(entries);
    if (width <= kMaxDensitySpins && !pairs.empty()) {
      // Equal superposition over every state named in a pair, evolved to t_max.
      std::vector<std::complex<double>> amps(std::size_t{1} << width, {0.0, 0.0});
      for (const auto& [k, k2] : pairs) amps[k] = amps[k2] = {1.0, 0.0};
      RegisterDensity rho = evolve_density(g, RegisterDensity::pure(width, amps), env0, config.t_max);
      summary["purity_t_max"] = (rho.matrix() * rho.matrix()).trace().real();
    }
    std::ofstream file(dir / "summary.json", std::ios::binary);
    if (!file) throw std::runtime_error("cannot write summary.json");
    file << summary.dump(2) << '\n';
    out << summary.dump(2) << '\n';
    return kOk;
  });
}

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    InteractionMatrix g = parse_interaction_matrix(read_file(config.matrix_path));
    if (!config.pairs || config.pairs->empty()) throw ParseError("classify requires --pairs");
    const int width = g.register_size();
    json entries = json::array();
    for (const auto& [k, k2] : parse_pairs(*config.pairs, width)) {
      BasisIndex a(k, width);
      BasisIndex b(k2, width);
      PairCase pc = pair_case(a, b);
      json entry = pair_json(k, k2, width);
      entry["case"] = to_string(pc.tag);
      entry["l1"] = pc.l1 == 0 ? json(nullptr) : json(pc.l1);
      entry["l2"] = pc.l2 ? json(*pc.l2) : json(nullptr);
      if (pc.tag == PairTag::Identical || pc.tag == PairTag::TooFar) {
        entry["required_symmetry"] = nullptr;
        entry["satisfied"] = nullptr;
      } else {
        GSymmetry sym = required_symmetry(pc);
        entry["required_symmetry"] = to_string(sym);
        entry["satisfied"] = check_symmetry(g, sym);
      }
      entry["preserved"] = preserves_coherence(g, a, b);
      entries.push_back(std::move(entry));
    }
    json doc;
    doc["K"] = width;
    doc["N"] = g.env_size();
    doc["pairs"] = std::move(entries);
    write_text(config.out_path, doc.dump(2), out);
    return kOk;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    InteractionMatrix g = parse_interaction_matrix(read_file(config.matrix_path));
    bool all = true;
    std::ostringstream report;
    for (const auto& r : verify_small_instance(g)) {
      all = all && r.passed;
      report << (r.passed ? "PASS " : "FAIL ") << r.name;
      if (!r.detail.empty()) report << ": " << r.detail;
      report << '\n';
    }
    out << report.str();
    if (config.out_path) write_text(config.out_path, report.str(), out);
    return all ? kOk : kFailed;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact pure-dephasing simulator and decoherence-free subspace analyzer", "dfsim"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--matrix", config.matrix_path, "interaction-matrix JSON file")->required();
    sub->add_option("--out", config.out_path, "output file (directory for simulate)");
  };
  auto* analyze = app.add_subcommand("analyze", "partition the register basis into DFSs");
  add_common(analyze);
  auto* simulate = app.add_subcommand("simulate", "decoherence rates on a time grid");
  add_common(simulate);
  simulate->add_option("--env", config.env_path, "environment-state JSON file")->required();
  simulate->add_option("--pairs", config.pairs, "register pairs k:k2,...");
  simulate->add_option("--t-max", config.t_max, "final time")->check(CLI::PositiveNumber);
  simulate->add_option("--t-steps", config.t_steps, "number of grid intervals")->check(CLI::PositiveNumber);
  auto* classify = app.add_subcommand("classify", "two-digit case analysis for register pairs");
  add_common(classify);
  classify->add_option("--pairs", config.pairs, "register pairs k:k2,...")->required();
  auto* verify = app.add_subcommand("verify", "exhaustive oracle checks on a small matrix");
  add_common(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  if (*analyze) return cmd_analyze(config, out, err);
  if (*simulate) {
    config.command = Command::Simulate;
    return cmd_simulate(config, out, err);
  }
  if (*classify) {
    config.command = Command::Classify;
    return cmd_classify(config, out, err);
  }
  config.command = Command::Verify;
  return cmd_verify(config, out, err);
}

}  // namespace dephasing::cli
