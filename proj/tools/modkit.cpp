// modkit: generate, verify, reduce and cross-check modular data.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "modkit/modkit.hpp"

using namespace modkit;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

long precision_bits() {
  const char* env = std::getenv("MODKIT_PRECISION_BITS");
  if (!env || !*env) return 256;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 16 || v > 1 << 20) throw UsageError(std::string("MODKIT_PRECISION_BITS must be an integer >= 16, got ") + env);
  return v;
}

/// A path to a datum file, or a family spec string.
AnyDatum load_input(const std::string& in) {
  if (std::filesystem::exists(in)) return datum_from_json(read_json_file(in));
  if (in.find(':') != std::string::npos) return family_from_spec(in);
  throw ParseError("cannot open " + in);
}

void write_json(const json& j, const std::string& path, bool pretty_dump = true) {
  const std::string text = pretty_dump ? j.dump(2) : j.dump();
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text << "\n";
}

std::string render_report(const VerificationReport& rep) {
  std::ostringstream os;
  std::size_t width = 0;
  for (const auto& c : rep.checks) width = std::max(width, c.name.size());
  int fails = 0, skips = 0;
  for (const auto& c : rep.checks) {
    os << (c.status == Status::Pass ? "  PASS  " : c.status == Status::Fail ? "  FAIL  " : "  SKIP  ") << c.name;
    if (c.status != Status::Pass || c.name == "classification") {
      os << std::string(width - c.name.size() + 2, ' ') << c.witness.dump();
    }
    os << "\n";
    fails += c.status == Status::Fail;
    skips += c.status == Status::Skipped;
  }
  os << rep.checks.size() << " checks, " << fails << " failed, " << skips << " skipped\n";
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_generate(const std::string& spec, const std::string& out) {
  RawDatum raw;
  try {
    raw = family_from_spec(spec);
  } catch (const HypothesisError& e) {
    throw ParseError(e.what());
  }
  write_json(to_json(raw), out);
  return kPass;
}

VerifyMode parse_mode(const std::string& m) {
  if (m == "auto") return VerifyMode::Auto;
  if (m == "nondeg") return VerifyMode::Nondeg;
  if (m == "sldeg") return VerifyMode::Sldeg;
  throw UsageError("--mode must be auto, nondeg or sldeg");
}

VerifyResult run_verify(const AnyDatum& d, VerifyMode mode, long bits) {
  if (const auto* m = std::get_if<ModularDatum>(&d)) return verify(*m);
  VerifyOptions opt;
  opt.mode = mode;
  opt.precision_bits = bits;
  return verify(std::get<RawDatum>(d), opt);
}

int cmd_verify(const std::string& in, const std::string& mode, const std::string& emit, bool pretty, const std::string& out) {
  const VerifyMode m = parse_mode(mode);
  const long bits = precision_bits();
  const AnyDatum d = load_input(in);
  const VerifyResult r = run_verify(d, m, bits);
  if (pretty) {
    const std::string text = render_report(r.report);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw UsageError("cannot write " + out);
      f << text;
    }
  } else {
    write_json(to_json(r.report), out);
  }
  if (!emit.empty()) {
    if (r.normalized) {
      write_json(to_json(*r.normalized), emit);
    } else {
      std::cerr << "no normalized datum to emit: verified up to scalar only\n";
    }
  }
  std::cerr << "class: " << r.classification << "\n";
  return r.passed() ? kPass : kFail;
}

int cmd_reduce(const std::string& in, const std::string& out) {
  const AnyDatum d = load_input(in);
  const auto* raw = std::get_if<RawDatum>(&d);
  if (!raw) throw UsageError("reduce needs a raw datum");
  SlightlyDegenerateData sl;
  try {
    sl = reduce_slightly_degenerate(*raw);
  } catch (const Error& e) {
    std::cerr << "reduce: " << e.what() << "\n";
    return kFail;
  }
  RawDatum bold = sl.bold();
  if (auto c = choose_normalizer(sl.frame, bold.normalizer); c.c) bold.normalizer = *c.c;
  write_json(to_json(bold), out);
  std::cerr << "epsilon " << raw->labels[sl.epsilon] << ", |J| = " << sl.J.size() << ", unit_bar "
            << bold.labels[sl.unit_bar()] << ", sdim " << sl.sdim().to_string() << "\n";
  return kPass;
}

// Fusion output: "{(1,1)}", "{2*(1,1), -(2,0)}".
using Combination = std::map<std::string, long>;

std::string render(const Combination& c, const std::vector<std::string>& order) {
  std::string s = "{";
  bool first = true;
  for (const auto& name : order) {
    auto it = c.find(name);
    if (it == c.end() || it->second == 0) continue;
    if (!first) s += ", ";
    first = false;
    const long k = it->second;
    if (k == -1) {
      s += "-";
    } else if (k != 1) {
      s += std::to_string(k) + "*";
    }
    s += name;
  }
  return s + "}";
}

struct VerlindePath {
  FusionTensor tensor;
  std::vector<std::string> all_labels;
  // label -> (index in the tensor, sign)
  std::map<std::string, std::pair<std::size_t, int>> lookup;
};

VerlindePath verlinde_path(const AnyDatum& d) {
  VerlindePath p;
  std::optional<VerlindeResult> v;
  if (const auto* m = std::get_if<ModularDatum>(&d)) {
    v = verlinde_fusion(*m);
    p.all_labels = m->labels;
    for (std::size_t i = 0; i < m->size(); ++i) p.lookup[m->labels[i]] = {i, 1};
  } else {
    const auto& raw = std::get<RawDatum>(d);
    VerifyOptions opt;
    opt.precision_bits = precision_bits();
    VerifyResult r = verify(raw, opt);
    v = r.verlinde;
    p.all_labels = raw.labels;
    if (r.sldeg) {
      const auto& sl = *r.sldeg;
      for (std::size_t a = 0; a < sl.J.size(); ++a) {
        p.lookup[raw.labels[sl.J[a]]] = {a, 1};
        p.lookup[raw.labels[sl.eps_map[sl.J[a]]]] = {a, -1};
      }
    } else {
      for (std::size_t i = 0; i < raw.size(); ++i) p.lookup[raw.labels[i]] = {i, 1};
    }
  }
  if (!v || !v->integral) throw Error("the Verlinde formula does not give integral constants for this datum");
  p.tensor = v->tensor;
  return p;
}

Combination verlinde_product(const VerlindePath& p, const std::string& x, const std::string& y) {
  auto find = [&](const std::string& s) {
    auto it = p.lookup.find(s);
    if (it == p.lookup.end()) throw UsageError("unknown label " + s);
    return it->second;
  };
  const auto [i, si] = find(x);
  const auto [j, sj] = find(y);
  Combination c;
  for (std::size_t k = 0; k < p.tensor.size(); ++k)
    if (const auto n = p.tensor.at(i, j, k); n != 0) c[p.tensor.labels[k]] += si * sj * n;
  return c;
}

TaftLabel parse_taft_label(int d, const std::string& s) {
  int l = 0, q = 0;
  char a = 0, b = 0, c = 0;
  std::istringstream in(s);
  if (!(in >> a >> l >> b >> q >> c) || a != '(' || b != ',' || c != ')' || l < 1 || l >= d || q < 0 || q >= d)
    throw UsageError("unknown label " + s);
  return {l, q};
}

int cmd_fusion(const std::string& in, const std::string& x, const std::string& y, const std::string& oracle,
               bool compare) {
  if (oracle != "verlinde" && oracle != "taft") throw UsageError("--oracle must be verlinde or taft");
  const bool want_taft = compare || oracle == "taft";
  const bool want_verlinde = compare || oracle == "verlinde";
  int d = 0;
  if (want_taft) {
    if (std::filesystem::exists(in) || in.find(':') == std::string::npos) throw UsageError("the taft oracle needs a taft:d=... spec");
    const FamilySpec f = parse_family_spec(in);
    if (f.family != "taft") throw UsageError("the taft oracle needs a taft:d=... spec");
    family_from_spec(in);
    d = static_cast<int>(detail::spec_int(f, "d"));
  }
  std::optional<Combination> taft, verl;
  std::vector<std::string> order;
  if (want_taft) {
    const auto prod = taft_fusion(d, parse_taft_label(d, x), parse_taft_label(d, y));
    taft.emplace();
    for (const auto& [z, m] : prod) (*taft)[to_string(z)] += m;
    for (const auto& t : taft_labels(d)) order.push_back(to_string(t));
  }
  std::optional<VerlindePath> vp;
  if (want_verlinde) {
    vp = verlinde_path(load_input(in));
    verl = verlinde_product(*vp, x, y);
    order = vp->all_labels;
  }
  if (!compare) {
    std::cout << render(taft ? *taft : *verl, order) << "\n";
    return kPass;
  }
  // push the taft product into the quotient ring on J: [eps X] = -[X]
  Combination projected;
  for (const auto& [name, m] : *taft) {
    const auto [k, sign] = vp->lookup.at(name);
    projected[vp->tensor.labels[k]] += sign * m;
  }
  std::erase_if(projected, [](const auto& kv) { return kv.second == 0; });
  std::cout << "verlinde: " << render(*verl, order) << "\n";
  std::cout << "taft:     " << render(*taft, order) << "\n";
  const bool same = projected == *verl;
  std::cout << (same ? "match" : "MISMATCH") << "\n";
  return same ? kPass : kFail;
}

int cmd_report(const std::string& in, bool as_json) {
  const json j = read_json_file(in);
  const VerificationReport rep = report_from_json(j);
  if (as_json) {
    write_json(to_json(rep), "");
  } else {
    std::cout << render_report(rep);
  }
  return rep.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modkit: exact verification of modular data"};
  app.require_subcommand(1, 1);

  std::string spec, in, out, mode = "auto", emit, oracle = "verlinde", x, y;
  bool pretty = false, compare = false, as_json = false;

  auto* gen = app.add_subcommand("generate", "write the raw datum of a family");
  gen->add_option("spec", spec, "taft:d=5, pointed:n=7,a=1,k0=2 or counterexample:sl2q16[,part=full]")->required();
  gen->add_option("out", out, "output file (stdout when absent)");

  auto* ver = app.add_subcommand("verify", "run every check on a datum file or family spec");
  ver->add_option("input", in, "datum JSON file or family spec")->required();
  ver->add_option("--mode", mode, "auto, nondeg or sldeg");
  ver->add_option("--emit-zmodular", emit, "write the normalized datum here when one exists");
  ver->add_flag("--pretty", pretty, "human-readable report");
  ver->add_option("--out", out, "report file (stdout when absent)");

  auto* fus = app.add_subcommand("fusion", "decompose x (x) y");
  fus->add_option("input", in, "datum JSON file or family spec")->required();
  fus->add_option("x", x)->required();
  fus->add_option("y", y)->required();
  fus->add_option("--oracle", oracle, "verlinde or taft");
  fus->add_flag("--compare", compare, "run both paths and compare");

  auto* red = app.add_subcommand("reduce", "restrict a slightly degenerate datum to J");
  red->add_option("input", in, "datum JSON file or family spec")->required();
  red->add_option("--out", out, "output file (stdout when absent)");

  auto* rep = app.add_subcommand("report", "render a report file");
  rep->add_option("input", in, "report JSON file")->required();
  rep->add_flag("--json", as_json, "re-emit as JSON instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return cmd_generate(spec, out);
    if (*ver) return cmd_verify(in, mode, emit, pretty, out);
    if (*fus) return cmd_fusion(in, x, y, oracle, compare);
    if (*red) return cmd_reduce(in, out);
    if (*rep) return cmd_report(in, as_json);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
