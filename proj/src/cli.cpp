#include "qtwist/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qtwist/diffcalc.hpp"
#include "qtwist/errors.hpp"
#include "qtwist/frobdiv.hpp"
#include "qtwist/serialize.hpp"
#include "qtwist/suites.hpp"

namespace qtwist {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

struct Options {
  VerifyConfig cfg;
  std::string format = "json";
  std::string out_file;
  std::string suite = "all";
  std::string input;
  int r_max = -1;
  bool n_max_set = false;
};

std::string render_checks(const Json& config, const CheckList& checks, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    Json arr = Json::array();
    for (const auto& c : checks)
      arr.push_back({{"id", c.id}, {"paper_ref", c.ref}, {"status", c.pass ? "pass" : "fail"},
                     {"detail", c.detail}});
    os << Json{{"config", config}, {"checks", arr}}.dump(2) << "\n";
  } else if (format == "csv") {
    os << "id,paper_ref,status,detail\n";
    for (const auto& c : checks)
      os << csv_field(c.id) << "," << csv_field(c.ref) << "," << (c.pass ? "pass" : "fail") << ","
         << csv_field(c.detail) << "\n";
  } else {
    for (const auto& c : checks)
      os << (c.pass ? "PASS " : "FAIL ") << c.id << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
    os << (all_pass(checks) ? "all checks passed" : "some checks failed") << "\n";
  }
  return os.str();
}

Json config_json(const Options& o) {
  return {{"p", o.cfg.p},           {"m", o.cfg.m},         {"n_max", o.cfg.n_max},
          {"degree", o.cfg.degree}, {"trunc_N", o.cfg.trunc_n}, {"deg_d", o.cfg.deg_d},
          {"seed", o.cfg.seed},     {"samples", o.cfg.samples}};
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open input file " + path);
  buf << in.rdbuf();
  return buf.str();
}

std::string cmd_coeffs(const Options& o) {
  const FrobCoeffTable table(o.cfg.p, o.cfg.n_max);
  std::ostringstream os;
  if (o.format == "json") {
    Json rows = Json::array();
    for (const auto& e : table.entries())
      rows.push_back({{"p", o.cfg.p}, {"n", e.n}, {"i", e.i}, {"a", to_json(e.a)}, {"b", to_json(e.b)},
                      {"unit", is_unit(e.b, o.cfg.p)}});
    os << rows.dump(2) << "\n";
  } else {
    const char* sep = o.format == "csv" ? "," : "\t";
    os << "p" << sep << "n" << sep << "i" << sep << "a" << sep << "b" << sep << "unit\n";
    for (const auto& e : table.entries()) {
      const std::string a = e.a.to_string(), b = e.b.to_string();
      os << o.cfg.p << sep << e.n << sep << e.i << sep << (o.format == "csv" ? csv_field(a) : a) << sep
         << (o.format == "csv" ? csv_field(b) : b) << sep << (is_unit(e.b, o.cfg.p) ? "true" : "false")
         << "\n";
    }
  }
  return os.str();
}

std::string render_elem(const DPElem& e, const std::string& format) {
  if (format == "json") return to_json(e).dump(2) + "\n";
  return e.to_string() + "\n";
}

std::string cmd_taylor(const Options& o) {
  const Json j = parse_json(read_input(o.input));
  const CoordPoly f = coordpoly_from_json(j, o.cfg.p);
  return render_elem(taylor(f, o.cfg.n_max, o.cfg.p, o.cfg.m), o.format);
}

std::string cmd_frobenius(const Options& o) {
  const Json j = parse_json(read_input(o.input));
  const DPElem e = dpelem_from_json(j);
  const int p = e.ctx().p;
  if (e.ctx().same_algebra(DPContext::level(p, 1, Side::APrime))) return render_elem(divided_frobenius(e), o.format);
  if (e.ctx().same_algebra(DPContext::level(p, 1, Side::A))) return render_elem(phi_dp(e), o.format);
  if (e.ctx().same_algebra(DPContext::divided(p, 0, Side::A))) return render_elem(phi_xi(e), o.format);
  throw DomainError("frobenius: input must live in A'<omega>_{q(-1)}, A<omega>_{q(-1)} or A<xi>_q");
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_file);
  if (!f) throw DomainError("cannot write " + o.out_file);
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Twisted divided powers, Frobenius and level -m connections"};
  app.require_subcommand(1, 1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", o.cfg.p, "prime (2, 3, 5 or 7)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", o.out_file, "write output to FILE");
  };

  auto* coeffs = app.add_subcommand("coeffs", "table of a_{n,i} and b_{n,i}");
  add_common(coeffs);
  coeffs->add_option("--n-max", o.cfg.n_max, "largest n");

  auto* verify = app.add_subcommand("verify", "run property suites");
  add_common(verify);
  verify->add_option("--suite", o.suite, "suite name")
      ->check(CLI::IsMember({"qarith", "divpow", "frobdiv", "diffcalc", "connect", "all"}));
  verify->add_option("--m", o.cfg.m, "level m");
  verify->add_option("--n-max", o.cfg.n_max, "divided-power index bound");
  verify->add_option("--degree", o.cfg.degree, "x-degree bound for random functions");
  verify->add_option("--trunc-N", o.cfg.trunc_n, "adic truncation order");
  verify->add_option("--deg-d", o.cfg.deg_d, "x-degree bound for truncated sections");
  verify->add_option("--seed", o.cfg.seed, "random seed");
  verify->add_option("--samples", o.cfg.samples, "random cases per property");

  auto* tay = app.add_subcommand("taylor", "truncated Taylor expansion of a CoordPoly");
  add_common(tay);
  tay->add_option("--m", o.cfg.m, "level m");
  tay->add_option("--n-max", o.cfg.n_max, "truncation order")->default_val(3);
  tay->add_option("--input", o.input, "CoordPoly JSON file, - for stdin")->required();

  auto* frob = app.add_subcommand("frobenius", "divided Frobenius or Frobenius of a DPElem");
  add_common(frob);
  frob->add_option("--input", o.input, "DPElem JSON file, - for stdin")->required();

  auto* env = app.add_subcommand("envelope-check", "delta^r(omega) against omega{p^r}");
  add_common(env);
  env->add_option("--r-max", o.r_max, "largest r (default 2 for p=2, else 1)");

  auto* uck = app.add_subcommand("u-check", "consistency of the descent map u");
  add_common(uck);
  uck->add_option("--n-max", o.cfg.n_max, "check u([F](omega{n})) = 0 for n <= N (default p)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (coeffs->parsed()) {
      validate_prime(o.cfg.p);
      if (o.cfg.n_max < 0 || o.cfg.n_max > 12) throw DomainError("n-max must be in 0..12");
      emit(o, cmd_coeffs(o), out);
      return kExitPass;
    }
    if (verify->parsed()) {
      o.cfg.validate();
      const CheckList checks = run_suite(o.suite, o.cfg);
      Json cfg = config_json(o);
      cfg["suite"] = o.suite;
      emit(o, render_checks(cfg, checks, o.format), out);
      return all_pass(checks) ? kExitPass : kExitCheckFailed;
    }
    if (tay->parsed()) {
      emit(o, cmd_taylor(o), out);
      return kExitPass;
    }
    if (frob->parsed()) {
      emit(o, cmd_frobenius(o), out);
      return kExitPass;
    }
    if (env->parsed()) {
      validate_prime(o.cfg.p);
      const int r_max = o.r_max >= 0 ? o.r_max : (o.cfg.p == 2 ? 2 : 1);
      if (r_max > 3) throw DomainError("r-max must be at most 3");
      const EnvelopeReport rep = envelope_basis_check(r_max, o.cfg.p);
      emit(o, render_checks({{"p", o.cfg.p}, {"r_max", r_max}}, rep.checks, o.format), out);
      return rep.pass() ? kExitPass : kExitCheckFailed;
    }
    if (uck->parsed()) {
      validate_prime(o.cfg.p);
      const int n_cap = uck->count("--n-max") ? o.cfg.n_max : o.cfg.p;
      if (n_cap < 0 || n_cap > 8) throw DomainError("n-max must be in 0..8");
      const UReport rep = u_consistency_check(o.cfg.p, n_cap);
      emit(o, render_checks({{"p", o.cfg.p}, {"n_max", n_cap}}, rep.checks, o.format), out);
      return rep.pass() ? kExitPass : kExitCheckFailed;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceCapError& e) {
    err << "resource cap: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace qtwist
