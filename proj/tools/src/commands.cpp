#include "chabauty/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chabauty/cli/suites.hpp"
#include "chabauty/error.hpp"
#include "chabauty/json_io.hpp"

namespace chabauty::cli {

namespace {

enum class Format { Json, Csv };

struct Options {
  std::string seed;
  std::string r_cut;
  std::string delta;
  std::string cap;
  std::string cd;
  std::string eps;
  std::string trials;
  std::string max_order;
  std::string out;
  std::string format;
};

nlohmann::json read_json(const std::string& source, std::istream& in) {
  std::string text;
  if (source == "-") {
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
    text = source;
  } else {
    std::ifstream file(source);
    if (!file) throw ParseError("cannot open '" + source + "'");
    std::stringstream ss;
    ss << file.rdbuf();
    text = ss.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::size_t pos = 0;
  try {
    if (!text.empty() && text.front() != '-') {
      std::uint64_t v = std::stoull(text, &pos, 10);
      if (pos == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ParseError(std::string(what) + " must be a non-negative integer, got '" + text + "'");
}

Format parse_format(const std::string& text) {
  if (text.empty() || text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw ParseError("format must be json or csv, got '" + text + "'");
}

RunConfig make_config(const Options& o) {
  RunConfig c;
  if (!o.seed.empty()) c.seed = parse_u64(o.seed, "seed");
  Rational r_cut = o.r_cut.empty() ? c.params.r_cut : parse_rational(o.r_cut);
  Rational delta = o.delta.empty() ? c.params.delta : parse_rational(o.delta);
  c.params = MetricParams(r_cut, delta);
  if (!o.eps.empty()) {
    c.eps = parse_rational(o.eps);
    if (c.eps <= 0) throw PreconditionError("eps must be positive");
  }
  if (!o.cap.empty()) {
    std::uint64_t cap = parse_u64(o.cap, "cap");
    if (cap == 0) throw PreconditionError("cap must be positive");
    c.net_cap = cap;
    c.order_cap = static_cast<std::int64_t>(cap);
  }
  if (!o.cd.empty()) {
    c.cd = parse_rational(o.cd);
    if (c.cd <= 0) throw PreconditionError("cd must be positive");
  }
  if (!o.trials.empty()) c.trials = parse_u64(o.trials, "trials");
  if (!o.max_order.empty()) c.max_order = static_cast<std::int64_t>(parse_u64(o.max_order, "max-order"));
  return c;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw PreconditionError("cannot write '" + path + "'");
  file << text;
}

std::string estimate_csv(const DistanceEstimate& e) {
  return "lower,upper,lower_approx,upper_approx\n" + to_string(e.lower) + "," + to_string(e.upper) + "," +
         nlohmann::json(e.lower.get_d()).dump() + "," + nlohmann::json(e.upper.get_d()).dump() + "\n";
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// One row per (case, series, n) where a case carries interval series, and
// one row per case otherwise.
std::string report_csv(const VerificationReport& r) {
  std::string out = "case,verdict,series,n,lower,upper\n";
  for (std::size_t i = 0; i < r.cases().size(); ++i) {
    const ReportCase& c = r.cases()[i];
    bool any = false;
    auto rows = [&](const std::string& series, const nlohmann::json& terms, const char* index_key) {
      for (const auto& t : terms) {
        out += std::to_string(i) + "," + to_string(c.verdict) + "," + series + "," + t.at(index_key).dump() + "," +
               t.at("lower").get<std::string>() + "," + t.at("upper").get<std::string>() + "\n";
        any = true;
      }
    };
    if (c.data.contains("terms")) rows("terms", c.data["terms"], "j");
    for (const char* key : {"primal", "dual"}) {
      if (c.data.contains(key) && c.data[key].contains("terms")) rows(key, c.data[key]["terms"], "n");
    }
    if (!any) out += std::to_string(i) + "," + to_string(c.verdict) + ",,,,\n";
  }
  return out;
}

nlohmann::json summary_json(const VerificationReport& r) {
  auto s = r.summary();
  return {{"suite", r.suite()},
          {"seed", r.seed()},
          {"overall", to_string(r.overall())},
          {"total", s.total},
          {"pass", s.passed},
          {"fail", s.failed},
          {"inconclusive", s.inconclusive}};
}

int error_exit(std::ostream& err, const std::string& code, const std::string& message, int status) {
  err << nlohmann::json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
  return status;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"Exact computations in the Chabauty space of elementary LCA groups", "chabauty"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  struct Flag {
    const char* name;
    const char* env;
    std::string* target;
    const char* help;
  };
  const std::vector<Flag> flags{
      {"--seed", "SEED", &o.seed, "64-bit seed for verification suites (default 42)"},
      {"--r-cut", "R_CUT", &o.r_cut, "truncation radius, rational >= 1 (default 12)"},
      {"--delta", "DELTA", &o.delta, "net resolution, rational in (0, 1] (default 1/40)"},
      {"--cap", "CAP", &o.cap, "net size cap for distances, group order cap for enumeration"},
      {"--cd", "CD", &o.cd, "transference constant (default d)"},
      {"--eps", "EPS", &o.eps, "convergence threshold (default 1/10)"},
      {"--trials", "TRIALS", &o.trials, "number of trials (default per suite)"},
      {"--max-order", "MAX_ORDER", &o.max_order, "largest group order in the finite suite (default 64)"},
      {"--out", "OUT", &o.out, "write the result here instead of standard output"},
      {"--format", "FORMAT", &o.format, "json or csv"},
  };
  std::vector<CLI::Option*> opts;
  for (const auto& f : flags) opts.push_back(app.add_option(f.name, *f.target, f.help));

  std::string dual_input;
  auto* dual = app.add_subcommand("dual", "orthogonal of a subgroup");
  dual->add_option("input", dual_input, "subgroup JSON: file path, inline object, or - for stdin")->required();

  std::string descriptor;
  auto* classify = app.add_subcommand("classify", "invariants and classifier verdicts of a descriptor");
  classify->add_option("descriptor", descriptor, "e.g. R*Z*T or Qp2*Zp3*Pruf5*Z/7; empty for the trivial group");

  std::string dist_h, dist_k;
  auto* distance = app.add_subcommand("distance", "certified Chabauty distance between two subgroups");
  distance->add_option("first", dist_h, "first subgroup JSON")->required();
  distance->add_option("second", dist_k, "second subgroup JSON")->required();

  std::string group_input;
  auto* enumerate = app.add_subcommand("enumerate", "all subgroups of a finite abelian group");
  enumerate->add_option("group", group_input, "{\"invariant_factors\": [...]}, file path, or -")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "duality, transference, paths, finite or components")
      ->required()
      ->check(CLI::IsMember(suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    return error_exit(err, "usage", e.what(), 2);
  }

  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (opts[i]->count() > 0) continue;
    if (auto v = env(std::string(kEnvPrefix) + flags[i].env)) *flags[i].target = *v;
  }

  try {
    const Format format = parse_format(o.format);
    const RunConfig config = make_config(o);
    std::string text;
    int status = 0;

    if (dual->parsed()) {
      ElementarySubgroup h = subgroup_from_json(read_json(dual_input, in));
      text = subgroup_to_json(orthogonal(h)).dump(2) + "\n";
    } else if (classify->parsed()) {
      text = classify_to_json(GroupDescriptor::parse(descriptor)).dump(2) + "\n";
    } else if (distance->parsed()) {
      ElementarySubgroup h = subgroup_from_json(read_json(dist_h, in));
      ElementarySubgroup k = subgroup_from_json(read_json(dist_k, in));
      DistanceEstimate e = chabauty_distance(h, k, config.params, config.net_cap);
      text = format == Format::Csv ? estimate_csv(e) : estimate_to_json(e).dump(2) + "\n";
    } else if (enumerate->parsed()) {
      FiniteAbelianGroup g = finite_group_from_json(read_json(group_input, in));
      auto subs = enumerate_subgroups(g, config.order_cap);
      nlohmann::json list = nlohmann::json::array();
      for (std::size_t i = 0; i < subs.size(); ++i) {
        nlohmann::json item = fin_subgroup_to_json(subs[i]);
        FinSubgroup o_fin = orthogonal_fin(subs[i]);
        auto it = std::lower_bound(subs.begin(), subs.end(), o_fin);
        item["index"] = i;
        item["orthogonal"] = static_cast<std::size_t>(it - subs.begin());
        list.push_back(std::move(item));
      }
      nlohmann::json result = {{"invariant_factors", g.invariant_factors()},
                               {"order", g.order()},
                               {"count", subs.size()},
                               {"subgroups", list}};
      text = result.dump(2) + "\n";
    } else if (verify->parsed()) {
      VerificationReport report = run_suite(suite, config);
      text = format == Format::Csv ? report_csv(report) : report.to_json().dump(2) + "\n";
      if (!o.out.empty()) out << summary_json(report).dump() << "\n";
      status = report.ok() ? 0 : 1;
    }
    emit(out, o.out, text);
    return status;
  } catch (const ResourceError& e) {
    return error_exit(err, error_code_name(e.code()), e.what(), 3);
  } catch (const Error& e) {
    return error_exit(err, error_code_name(e.code()), e.what(), 2);
  } catch (const std::exception& e) {
    return error_exit(err, "internal", e.what(), 2);
  }
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  return run(argc, argv, in, out, err, [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  });
}

}  // namespace chabauty::cli
