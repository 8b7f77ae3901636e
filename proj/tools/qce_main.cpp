// Command-line surface: classify channel files, run parameter sweeps, emit
// figure data, locate family thresholds, and print leak audits.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qce/channel_io.hpp"
#include "qce/classify.hpp"
#include "qce/sweep.hpp"
#include "qce/version.hpp"

namespace {

using nlohmann::json;
using namespace qce;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvalidChannel = 3;
constexpr int kExitNonMonotone = 4;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot open output path '" + out_path + "'");
  out << text;
}

json tool_json() { return json{{"name", kToolName}, {"version", kToolVersion}}; }

json tolerances_json() {
  return json{{"closed_form_zero", kClosedFormTol},
              {"optimizer_zero", kOptimizerTol},
              {"bisection", kBisectionTol},
              {"choi_ppt_eigenvalue", 1e-9},
              {"product_choi_trace_distance", 1e-9}};
}

json config_json(const OptimizerConfig& config) {
  return json{{"seed", config.seed},
              {"restarts", config.restarts},
              {"max_iterations", config.max_iterations},
              {"tolerance", config.tolerance},
              {"covariant", config.covariant}};
}

std::string human_verdict_line(const std::string& name, const Verdict& v) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "  %-5s %-13s %s\n", name.c_str(),
                to_string(v.status).c_str(), v.method.c_str());
  return buf;
}

struct ClassifyArgs {
  std::string channel_path;
  std::string out_path;
  std::uint64_t seed = 7;
  int budget = 32;
  bool covariant = false;
  bool human = false;
};

int run_classify(const ClassifyArgs& args) {
  const LoadedChannel loaded = load_channel_file(args.channel_path);
  OptimizerConfig config;
  config.seed = args.seed;
  config.restarts = args.budget;
  config.covariant = args.covariant;

  json report;
  report["tool"] = tool_json();
  report["tolerances"] = tolerances_json();
  report["config"] = config_json(config);

  std::ostringstream human;
  human << "channel: " << loaded.description << "\n";

  if (!loaded.is_kraus()) {
    const auto& td = loaded.transpose_dep();
    report["channel"] = {{"description", loaded.description},
                         {"dim_in", td.dim},
                         {"dim_out", td.dim},
                         {"apply_only", true}};
    const DimSpec partition{td.sub_dim, td.sub_dim};
    const Verdict ncea = is_ncea(td, partition);
    report["verdicts"] = {{"ncea", verdict_to_json(ncea)}};
    report["note"] = "transpose depolarizing is carried by its action only; "
                     "Kraus/Choi-based classifiers do not apply";
    human << "  (apply-only map: Kraus/Choi classifiers not applicable)\n"
          << human_verdict_line("ncea", ncea);
    emit(args.human ? human.str() : report.dump(2) + "\n", args.out_path);
    return kExitOk;
  }

  const KrausChannel& channel = loaded.kraus();
  const auto validation = validate(channel);
  if (!validation.ok) {
    std::cerr << "invalid channel: Kraus completeness deviates by " << validation.violation
              << "\n";
    return kExitInvalidChannel;
  }

  report["channel"] = {{"description", loaded.description},
                       {"dim_in", channel.dim_in},
                       {"dim_out", channel.dim_out},
                       {"kraus_count", channel.kraus.size()},
                       {"completeness_violation", validation.violation}};

  json verdicts;
  const Verdict ppt = is_ppt_channel(channel);
  const Verdict eb = is_eb(channel);
  const Verdict mib = is_mib(channel);
  const Verdict nceb = is_nceb(channel, config);
  verdicts["ppt"] = verdict_to_json(ppt);
  verdicts["eb"] = verdict_to_json(eb);
  verdicts["mib"] = verdict_to_json(mib);
  verdicts["nceb"] = verdict_to_json(nceb);

  human << "verdicts:\n"
        << human_verdict_line("ppt", ppt) << human_verdict_line("eb", eb)
        << human_verdict_line("mib", mib) << human_verdict_line("nceb", nceb);

  const auto root =
      static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(channel.dim_out))));
  if (channel.dim_out == channel.dim_in && root >= 2 && root * root == channel.dim_out) {
    const Verdict ncea = is_ncea(channel, DimSpec{root, root}, config);
    verdicts["ncea"] = verdict_to_json(ncea);
    human << human_verdict_line("ncea", ncea);
  } else {
    verdicts["ncea"] = nullptr;
    human << "  ncea  n/a           output admits no square partition\n";
  }
  report["verdicts"] = std::move(verdicts);

  const CoherentInfoResult ci = channel_coherent_info(channel, config);
  report["coherent_info"] = {{"value", ci.value},
                             {"exact", ci.exact},
                             {"method", ci.method},
                             {"argmax_input", state_to_json(ci.argmax_input)}};
  human << "coherent info: " << format_csv_value(ci.value) << " ("
        << (ci.exact ? "exact" : "lower bound") << ", " << ci.method << ")\n";

  emit(args.human ? human.str() : report.dump(2) + "\n", args.out_path);
  return kExitOk;
}

struct SweepArgs {
  std::string family = "depolarizing";
  std::size_t d = 2;
  double p_from = 0.0;
  double p_to = 1.0;
  std::size_t p_steps = 101;
  std::size_t alpha_steps = 181;
  std::string out_path;
};

int run_sweep(const SweepArgs& args) {
  if (args.family != "depolarizing" || args.d != 2)
    throw ValidationError("sweep supports family=depolarizing with d=2");
  const SweepGrid grid = sweep_alpha_p(args.alpha_steps, args.p_steps, args.p_from, args.p_to);
  std::ostringstream os;
  write_sweep_csv(grid, os);
  emit(os.str(), args.out_path);
  return kExitOk;
}

struct TetraArgs {
  double p = 0.5;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::string out_path;
};

int run_belltetra(const TetraArgs& args) {
  const auto rows = bell_tetra_sweep(args.p, args.samples, args.seed);
  std::ostringstream os;
  write_tetra_csv(rows, os);
  emit(os.str(), args.out_path);
  return kExitOk;
}

struct ThresholdArgs {
  std::string family = "depolarizing";
  std::string predicate = "is_nceb";
  double lo = 0.0;
  double hi = 1.0;
  std::size_t d = 2;
  std::uint64_t seed = 7;
  int budget = 32;
};

int run_threshold(const ThresholdArgs& args) {
  OptimizerConfig config;
  config.seed = args.seed;
  config.restarts = args.budget;

  std::string convention;
  std::function<bool(double)> pred;

  if (args.family == "depolarizing" || args.family == "depolarizing_keep") {
    convention = args.family == "depolarizing" ? "noise" : "keep";
    auto make = [&](double p) {
      return args.family == "depolarizing" ? depolarizing(args.d, p)
                                           : depolarizing_keep(args.d, p);
    };
    if (args.predicate == "is_eb")
      pred = [=](double p) { return is_eb(make(p)).status == Status::Yes; };
    else if (args.predicate == "is_ppt")
      pred = [=](double p) { return is_ppt_channel(make(p)).status == Status::Yes; };
    else if (args.predicate == "is_nceb")
      pred = [=](double p) { return is_nceb(make(p), config).status == Status::Yes; };
    else
      throw ValidationError("unsupported predicate '" + args.predicate + "' for this family");
  } else if (args.family == "global_depolarizing") {
    convention = "keep";
    const DimSpec partition{args.d, args.d};
    if (args.predicate == "is_ncea")
      pred = [=](double p) {
        return is_ncea(global_depolarizing(args.d * args.d, p), partition, config).status ==
               Status::Yes;
      };
    else if (args.predicate == "separable")
      pred = [=](double p) {
        const DensityOperator out =
            apply(global_depolarizing(args.d * args.d, p), max_entangled(args.d).with_dims(DimSpec{args.d * args.d}))
                .with_dims(partition);
        return min_herm_eigenvalue(partial_transpose(out.matrix, partition, 1)) >= -1e-9;
      };
    else
      throw ValidationError("unsupported predicate '" + args.predicate + "' for this family");
  } else if (args.family == "two_local_depolarizing") {
    convention = "keep";
    if (args.predicate != "is_ncea")
      throw ValidationError("two_local_depolarizing supports predicate is_ncea only");
    const double value = two_local_ncea_threshold(config);
    std::printf("family=%s predicate=%s convention=%s threshold=%.6f\n", args.family.c_str(),
                args.predicate.c_str(), convention.c_str(), value);
    return kExitOk;
  } else {
    throw ValidationError("unknown family '" + args.family + "'");
  }

  const double value = threshold(pred, args.lo, args.hi);
  std::printf("family=%s predicate=%s convention=%s threshold=%.6f\n", args.family.c_str(),
              args.predicate.c_str(), convention.c_str(), value);
  return kExitOk;
}

struct LeakArgs {
  std::string channel_path;
  std::string state_path;
  bool purify = false;
  bool human = false;
  std::string out_path;
  std::uint64_t seed = 7;
  int budget = 32;
};

int run_leak(const LeakArgs& args) {
  const LoadedChannel loaded = load_channel_file(args.channel_path);
  if (!loaded.is_kraus())
    throw ValidationError("leak analysis needs a Stinespring dilation, which requires a Kraus "
                          "form; this map is carried by its action only");
  const KrausChannel& channel = loaded.kraus();
  require_valid(channel);
  const DensityOperator state = load_state_file(args.state_path);

  const LeakReport leak = leak_report(channel, state, args.purify);
  OptimizerConfig config;
  config.seed = args.seed;
  config.restarts = args.budget;
  const Verdict nceb = is_nceb(channel, config);
  const bool applicable = nceb.status == Status::Yes;
  const bool holds = leak.i_a_bout <= leak.i_a_env + 1e-9;

  json report;
  report["tool"] = tool_json();
  report["channel"] = {{"description", loaded.description},
                       {"dim_in", channel.dim_in},
                       {"dim_out", channel.dim_out}};
  report["purified"] = leak.purified;
  report["purification_dim"] = leak.purification_dim;
  report["s_cond_a_given_bout"] = leak.s_cond_a_given_bout;
  report["s_cond_a_given_env"] = leak.s_cond_a_given_env;
  report["i_a_bout"] = leak.i_a_bout;
  report["i_a_env"] = leak.i_a_env;
  report["duality_sum"] = leak.s_cond_a_given_bout + leak.s_cond_a_given_env;
  report["nceb"] = verdict_to_json(nceb);
  report["leak_inequality"] = {{"holds", holds}, {"applicable", applicable}};

  if (args.human) {
    std::ostringstream os;
    os << "channel: " << loaded.description << "\n"
       << "  S(A|Bout) = " << format_csv_value(leak.s_cond_a_given_bout) << "\n"
       << "  S(A|E)    = " << format_csv_value(leak.s_cond_a_given_env) << "\n"
       << "  I(A;Bout) = " << format_csv_value(leak.i_a_bout) << "\n"
       << "  I(A;E)    = " << format_csv_value(leak.i_a_env) << "\n"
       << "  leak inequality I(A;Bout) <= I(A;E): " << (holds ? "holds" : "violated")
       << (applicable ? " (channel certified breaking)" : " (channel not certified breaking)")
       << "\n";
    emit(os.str(), args.out_path);
  } else {
    emit(report.dump(2) + "\n", args.out_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropic classification of quantum channels"};
  app.set_version_flag("--version", std::string(qce::kToolName) + " " + qce::kToolVersion);
  app.require_subcommand(1);

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "classify a channel file");
  classify_cmd->add_option("--channel", classify_args.channel_path, "channel JSON file")
      ->required();
  classify_cmd->add_option("--seed", classify_args.seed, "optimizer seed");
  classify_cmd->add_option("--budget", classify_args.budget, "optimizer restarts");
  classify_cmd->add_flag("--covariant", classify_args.covariant,
                         "assert the channel is unitarily covariant");
  classify_cmd->add_flag("--human", classify_args.human, "tabular text instead of JSON");
  classify_cmd->add_option("--out", classify_args.out_path, "output path (default stdout)");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "conditional-entropy grid over (alpha, p)");
  sweep_cmd->add_option("--family", sweep_args.family, "channel family (depolarizing)");
  sweep_cmd->add_option("--d", sweep_args.d, "local dimension (2)");
  sweep_cmd->add_option("--p-from", sweep_args.p_from, "lower p bound");
  sweep_cmd->add_option("--p-to", sweep_args.p_to, "upper p bound");
  sweep_cmd->add_option("--p-steps", sweep_args.p_steps, "p grid points");
  sweep_cmd->add_option("--alpha-steps", sweep_args.alpha_steps, "alpha grid points over [0, pi]");
  sweep_cmd->add_option("--out", sweep_args.out_path, "CSV output path (default stdout)");

  TetraArgs tetra_args;
  auto* tetra_cmd =
      app.add_subcommand("belltetra", "Bell-diagonal conditional entropy before/after the channel");
  tetra_cmd->add_option("--p", tetra_args.p, "depolarizing mixing parameter")->required();
  tetra_cmd->add_option("--samples", tetra_args.samples, "tetrahedron samples");
  tetra_cmd->add_option("--seed", tetra_args.seed, "sampling seed");
  tetra_cmd->add_option("--out", tetra_args.out_path, "CSV output path (default stdout)");

  ThresholdArgs threshold_args;
  auto* threshold_cmd = app.add_subcommand("threshold", "locate a classification boundary");
  threshold_cmd->add_option("--family", threshold_args.family,
                            "depolarizing | depolarizing_keep | global_depolarizing | "
                            "two_local_depolarizing");
  threshold_cmd->add_option("--predicate", threshold_args.predicate,
                            "is_eb | is_ppt | is_nceb | is_ncea | separable");
  threshold_cmd->add_option("--lo", threshold_args.lo, "lower parameter bound");
  threshold_cmd->add_option("--hi", threshold_args.hi, "upper parameter bound");
  threshold_cmd->add_option("--d", threshold_args.d, "local dimension");
  threshold_cmd->add_option("--seed", threshold_args.seed, "optimizer seed");
  threshold_cmd->add_option("--budget", threshold_args.budget, "optimizer restarts");

  LeakArgs leak_args;
  auto* leak_cmd = app.add_subcommand("leak", "entropic leak audit of a channel on a state");
  leak_cmd->add_option("--channel", leak_args.channel_path, "channel JSON file")->required();
  leak_cmd->add_option("--state", leak_args.state_path, "state JSON file")->required();
  leak_cmd->add_flag("--purify", leak_args.purify, "purify mixed inputs into an enlarged A");
  leak_cmd->add_flag("--human", leak_args.human, "tabular text instead of JSON");
  leak_cmd->add_option("--out", leak_args.out_path, "output path (default stdout)");
  leak_cmd->add_option("--seed", leak_args.seed, "optimizer seed");
  leak_cmd->add_option("--budget", leak_args.budget, "optimizer restarts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return run_classify(classify_args);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args);
    if (tetra_cmd->parsed()) return run_belltetra(tetra_args);
    if (threshold_cmd->parsed()) return run_threshold(threshold_args);
    if (leak_cmd->parsed()) return run_leak(leak_args);
  } catch (const qce::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const qce::NonMonotoneError& e) {
    std::cerr << "threshold error: " << e.what() << "\nprobe table:\n";
    for (const auto& [x, v] : e.probes)
      std::cerr << "  " << format_csv_value(x) << " -> " << (v ? "yes" : "no") << "\n";
    return kExitNonMonotone;
  } catch (const qce::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidChannel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
