// svc: command-line front end for the condenser toolkit.
//
// Exit codes: 0 pass, 1 bound or check failure, 2 usage, format or I/O error.

#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "svc/attacks.hpp"
#include "svc/bounds.hpp"
#include "svc/condenser.hpp"
#include "svc/io.hpp"
#include "svc/sv_models.hpp"
#include "svc/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit_json(const svc::Json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    svc::write_json_file(out_path, j);
  }
}

bool is_integer(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

struct CondenseArgs {
  int d = 0;
  std::string in = "-";
  std::string out = "-";
};

int run_condense(const CondenseArgs& a) {
  std::ifstream in_file;
  std::ofstream out_file;
  std::istream* in = &std::cin;
  std::ostream* out = &std::cout;
  if (a.in != "-") {
    in_file.open(a.in, std::ios::binary);
    if (!in_file) throw std::runtime_error("cannot open " + a.in);
    in = &in_file;
  }
  if (a.out != "-") {
    out_file.open(a.out, std::ios::binary | std::ios::trunc);
    if (!out_file) throw std::runtime_error("cannot write " + a.out);
    out = &out_file;
  }
  svc::StreamStats s = svc::condense_stream(a.d, *in, *out);
  out->flush();
  if (!*out) throw std::runtime_error("write failed");
  std::cerr << "blocks: " << s.blocks << " bytes_in: " << s.bytes_in << " bytes_out: " << s.bytes_out
            << " input_tail_bits: " << s.input_tail_bits << " output_tail_bits: " << s.output_tail_bits
            << " dropped: " << s.dropped_bits() << '\n';
  return kExitPass;
}

struct AnalyzeArgs {
  std::string dist;
  double delta = 0;
  std::string condenser;
  std::optional<int> seeds;
};

int run_analyze(const AnalyzeArgs& a) {
  if (a.seeds && a.condenser.empty()) throw UsageError("--D requires --condenser");
  svc::check_delta(a.delta);
  svc::JointDistribution mu = svc::distribution_from_json(svc::read_json_file(a.dist));
  svc::ReportContext ctx;
  if (!a.condenser.empty()) {
    if (is_integer(a.condenser)) {
      int d = std::stoi(a.condenser);
      if (d < svc::kMinHammingParam || d > svc::kMaxHammingParam) {
        throw UsageError("--condenser d must lie in [2, 8]");
      }
      ctx.condenser = svc::CondenserMap::structured_for_width(d, mu.n());
    } else {
      ctx.condenser = svc::condenser_from_json(svc::read_json_file(a.condenser));
    }
  }
  ctx.seeds = a.seeds;
  svc::EntropyReport report = svc::build_report(mu, ctx, a.delta);
  emit_json(svc::to_json(report), "-");
  return report.passed() ? kExitPass : kExitCheckFailed;
}

struct AttackArgs {
  std::string function;
  double delta = 0;
};

int run_attack(const AttackArgs& a) {
  svc::check_delta(a.delta);
  svc::CondenserMap f = svc::condenser_from_json(svc::read_json_file(a.function));
  svc::AttackResult r = svc::attack_condenser(f, a.delta);
  emit_json(svc::to_json(r), "-");
  return r.holds() ? kExitPass : kExitCheckFailed;
}

struct VerifyArgs {
  std::string suite;
  int max_n = 8;
  std::uint64_t seed = 1;
  bool json = false;
};

int run_verify(const VerifyArgs& a) {
  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = svc::suite_names();
  } else if (std::find(svc::suite_names().begin(), svc::suite_names().end(), a.suite) !=
             svc::suite_names().end()) {
    suites.push_back(a.suite);
  } else {
    throw UsageError("unknown suite '" + a.suite + "'");
  }
  svc::VerifyOptions opt;
  opt.max_n = a.max_n;
  opt.seed = a.seed;
  bool all_passed = true;
  svc::Json results = svc::Json::array();
  for (const std::string& name : suites) {
    for (const svc::PropertyResult& r : svc::run_suite(name, opt)) {
      all_passed = all_passed && r.passed;
      if (a.json) {
        results.push_back({{"suite", r.suite}, {"property", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      } else {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name << " (" << r.detail << ")\n";
      }
    }
  }
  if (a.json) {
    emit_json(svc::Json{{"seed", a.seed}, {"max_n", a.max_n}, {"passed", all_passed}, {"results", results}}, "-");
  }
  return all_passed ? kExitPass : kExitCheckFailed;
}

struct GenArgs {
  std::string kind;
  int n = 0;
  double p1 = 0.5;
  double delta = 0;
  std::uint64_t seed = 1;
  std::string adversary;
  std::string out = "-";
};

int run_gen_source(const GenArgs& a, const CLI::App& cmd) {
  auto given = [&](const char* flag) { return cmd.count(flag) > 0; };
  std::optional<svc::JointDistribution> mu;
  if (a.kind == "iid") {
    if (!given("--n") || !given("--p1")) throw UsageError("--kind iid needs --n and --p1");
    mu = svc::iid_biased(a.n, a.p1);
  } else if (a.kind == "potential") {
    if (!given("--n") || !given("--delta")) throw UsageError("--kind potential needs --n and --delta");
    mu = svc::random_potential_strong_sv(a.n, a.delta, a.seed);
  } else {
    if (!given("--adversary")) throw UsageError("--kind adversary needs --adversary");
    svc::Json j = svc::read_json_file(a.adversary);
    // Attack results embed their adversary.
    if (j.is_object() && j.contains("adversary")) j = j["adversary"];
    mu = svc::materialize(svc::adversary_from_json(j));
  }
  emit_json(svc::to_json(*mu), a.out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic condensers for strong Santha-Vazirani sources"};
  app.require_subcommand(1);

  CondenseArgs condense_args;
  auto* condense = app.add_subcommand("condense", "Stream bytes through the Hamming-syndrome condenser f_d");
  condense->add_option("--d", condense_args.d, "Hamming parameter")->required()->check(CLI::Range(2, 8));
  condense->add_option("--in", condense_args.in, "Input file, - for stdin");
  condense->add_option("--out", condense_args.out, "Output file, - for stdout");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Print an entropy report for a distribution file");
  analyze->add_option("--dist", analyze_args.dist, "Distribution JSON")->required();
  analyze->add_option("--delta", analyze_args.delta, "SV bias")->required()->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--condenser", analyze_args.condenser, "Hamming parameter d or condenser table JSON");
  analyze->add_option("--D", analyze_args.seeds, "Seed count of the sliced extractor")
      ->check(CLI::PositiveNumber);

  AttackArgs attack_args;
  auto* attack = app.add_subcommand("attack", "Run the greedy SV adversary against a condenser table");
  attack->add_option("--function", attack_args.function, "Condenser table JSON")->required();
  attack->add_option("--delta", attack_args.delta, "SV bias")->required()->check(CLI::Range(0.0, 1.0));

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run a named verification suite, or all");
  verify->add_option("--suite", verify_args.suite, "Suite name or all")->required();
  verify->add_option("--max-n", verify_args.max_n, "Largest instance width")->check(CLI::Range(1, svc::kHardMaxBits));
  verify->add_option("--seed", verify_args.seed, "Random seed");
  verify->add_flag("--json", verify_args.json, "Emit JSON instead of text");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen-source", "Write a distribution file");
  gen->add_option("--kind", gen_args.kind, "iid, potential or adversary")
      ->required()
      ->check(CLI::IsMember({"iid", "potential", "adversary"}));
  gen->add_option("--n", gen_args.n, "Bit width")->check(CLI::Range(1, svc::kHardMaxBits));
  gen->add_option("--p1", gen_args.p1, "Pr[bit = 1] for iid")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--delta", gen_args.delta, "SV bias for potential")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_args.seed, "Random seed");
  gen->add_option("--adversary", gen_args.adversary, "Adversary or attack JSON");
  gen->add_option("--out", gen_args.out, "Output file, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (condense->parsed()) return run_condense(condense_args);
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (attack->parsed()) return run_attack(attack_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (gen->parsed()) return run_gen_source(gen_args, *gen);
  } catch (const std::exception& e) {
    std::cerr << "svc: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
