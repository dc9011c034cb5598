#include "dqa/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include "dqa/charp.hpp"
#include "dqa/checker.hpp"
#include "dqa/parser.hpp"
#include "dqa/poisson.hpp"

namespace dqa::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  const Args &args;
  Result result;
  std::string input_text;
  std::optional<EndoFile> file;

  Json &flags() { return result.report["flags"]; }
  Json &payload() { return result.report["payload"]; }
  void witness(const std::string &w) { result.report["witnesses"].push_back(w); }
  void say(const std::string &line) { result.text += line + "\n"; }

  const EndoFile &endo_file() {
    if (file)
      return *file;
    if (args.input_text) {
      input_text = *args.input_text;
    } else {
      if (!args.input)
        throw InputError("--input is required");
      std::ifstream in(*args.input, std::ios::binary);
      if (!in)
        throw InputError("cannot read " + *args.input);
      std::ostringstream buf;
      buf << in.rdbuf();
      input_text = buf.str();
    }
    result.report["input_digest"] = sha256_hex(input_text);
    file = parse_endo_file(input_text);
    result.report["params"]["ring"] = file->ring.to_string();
    result.report["params"]["kind"] = to_string(file->kind);
    result.report["params"]["n"] = file->n;
    return *file;
  }

  PolyEndo poly_endo() {
    const EndoFile &f = endo_file();
    if (f.kind == EndoKind::weyl)
      throw InputError("expected kind=poly or kind=poisson");
    return f.poly_endo();
  }

  WeylEndo weyl_endo() {
    const EndoFile &f = endo_file();
    if (f.kind != EndoKind::weyl)
      throw InputError("expected kind=weyl");
    return f.weyl_endo();
  }

  CheckOptions check_options() const {
    CheckOptions opts;
    opts.budget.max_unknowns = args.max_unknowns;
    opts.seed = args.seed;
    return opts;
  }
};

Json lines_json(const std::vector<std::string> &lines) { return Json(lines); }

std::string join(const std::vector<std::string> &lines, const std::string &sep) {
  std::string out;
  for (const auto &l : lines)
    out += (out.empty() ? "" : sep) + l;
  return out;
}

Json optional_bool(const std::optional<bool> &b) { return b ? Json(*b) : Json(nullptr); }

std::string violation_text(const BracketViolation &v) {
  return "{F" + std::to_string(v.i + 1) + ", F" + std::to_string(v.j + 1) + "} = " + v.actual.to_string() +
         ", expected " + v.expected.to_string();
}

void check_symplectic(Context &c) {
  PolyEndo phi = c.poly_endo();
  if (phi.nvars() % 2 != 0)
    throw InputError("symplectic check needs an even number of variables");
  PoissonContext ctx(phi.ring(), phi.nvars() / 2);
  Theorem1Check t = check_theorem1(ctx, phi);
  c.flags() = {{"symplectic", t.symplectic},
               {"n_factorial_unit", t.n_factorial_unit},
               {"det_is_one", t.det_is_one},
               {"consistent", t.consistent()}};
  c.payload()["det"] = t.det.to_string();
  if (auto v = find_bracket_violation(ctx, phi))
    c.witness(violation_text(*v));
  c.say(std::string("symplectic: ") + (t.symplectic ? "true" : "false"));
  c.say("det(J) = " + t.det.to_string());
  if (!t.consistent()) {
    c.result.report["verdict"] = "falsified";
    c.witness("symplectic with n! a unit but det(J) = " + t.det.to_string());
    c.result.exit_code = falsified;
  } else {
    c.result.report["verdict"] = t.symplectic ? "symplectic" : "not-symplectic";
  }
}

void check_weyl_endo(Context &c) {
  const EndoFile &f = c.endo_file();
  if (f.kind != EndoKind::weyl)
    throw InputError("expected kind=weyl");
  RelationCheck rc = verify_endo_relations(f.weyl_images);
  c.flags() = {{"relations_hold", rc.ok}};
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < f.nvars; ++i)
    lines.push_back("Y" + std::to_string(i + 1) + " -> " + f.weyl_images[i].to_string());
  c.payload()["normal_form"] = lines_json(lines);
  if (rc.ok) {
    WeylEndo phi = f.weyl_endo();
    c.payload()["degree"] = phi.degree();
    c.result.report["verdict"] = "endomorphism";
    c.say("relations hold; degree " + std::to_string(phi.degree()));
  } else {
    std::string w = "[G" + std::to_string(rc.i + 1) + ", G" + std::to_string(rc.j + 1) +
                    "] = " + (rc.found ? rc.found->to_string() : "?");
    c.witness(w);
    c.result.report["verdict"] = "not-endomorphism";
    c.say("relations fail: " + w);
  }
}

void reduce(Context &c) {
  WeylEndo phi = c.weyl_endo();
  Theorem3Check t = check_theorem3(phi);
  DegreeCheck d = check_degree_preservation(t.phi0);
  auto lines = t.phi0.phi0.to_lines();
  c.payload()["phi0"] = lines_json(lines);
  c.payload()["deg_phi"] = d.deg_phi;
  c.payload()["deg_phi0"] = d.deg_phi0;
  c.flags() = {{"symplectic", t.symplectic}, {"degree_preserved", d.equal}};
  for (const auto &l : lines)
    c.say(l);
  if (t.witness)
    c.witness("phi0 not symplectic: " + violation_text(*t.witness));
  if (d.witness)
    c.witness("degree differs on generator " + std::to_string(*d.witness + 1));
  bool ok = t.symplectic && d.equal;
  c.result.report["verdict"] = ok ? "consistent" : "falsified";
  if (!ok)
    c.result.exit_code = falsified;
}

unsigned resolve_cap(const Args &args, std::uint64_t bound) {
  if (args.degree_cap) {
    if (*args.degree_cap == 0)
      throw InputError("--degree-cap must be positive");
    return *args.degree_cap;
  }
  return static_cast<unsigned>(std::clamp<std::uint64_t>(bound, 1, 0xFFFF));
}

template <class Search>
void report_search(Context &c, const Search &s, std::uint64_t bound, unsigned cap,
                   const std::vector<std::string> &inverse_lines) {
  c.result.report["params"]["degree_cap"] = cap;
  c.payload()["certified_bound"] = bound;
  c.payload()["degree_reached"] = s.degree_reached;
  std::string flag = s.inverse ? "proven-yes" : (s.exhausted() && cap >= bound ? "proven-no" : "unknown");
  c.flags() = {{"automorphism", flag}, {"exhausted", s.exhausted()}, {"two_sided_failure", s.two_sided_failure}};
  if (s.inverse) {
    c.payload()["inverse"] = lines_json(inverse_lines);
    for (const auto &l : inverse_lines)
      c.say(l);
    c.result.report["verdict"] = "inverse-found";
  } else {
    c.payload()["inverse"] = nullptr;
    c.say("no inverse of degree <= " + std::to_string(s.degree_reached));
    c.result.report["verdict"] = "no-inverse-found";
    c.witness("no inverse of degree <= " + std::to_string(s.degree_reached));
  }
}

void invert(Context &c) {
  PolyEndo phi = c.poly_endo();
  std::uint64_t bound = gabber_bound(phi);
  unsigned cap = resolve_cap(c.args, bound);
  PolyInverseSearch s = inverse_search_poly(phi, cap, c.check_options().budget);
  report_search(c, s, bound, cap, s.inverse ? s.inverse->to_lines() : std::vector<std::string>{});
}

void invert_weyl(Context &c) {
  WeylEndo phi = c.weyl_endo();
  std::uint64_t bound = weyl_inverse_degree_bound(phi);
  unsigned cap = resolve_cap(c.args, bound);
  WeylInverseSearch s = inverse_search_weyl(phi, cap, c.check_options().budget);
  report_search(c, s, bound, cap, s.inverse ? s.inverse->to_lines() : std::vector<std::string>{});
}

void check_instance_cmd(Context &c) {
  if (!c.args.tag)
    throw InputError("--tag is required");
  ConjectureTag tag = parse_tag(*c.args.tag);
  c.result.report["tag"] = to_string(tag);
  const EndoFile &f = c.endo_file();
  if (f.kind == EndoKind::poly && is_poisson_tag(tag))
    throw InputError(to_string(tag) + " needs kind=poisson");
  InstanceVerdict v = is_weyl_tag(tag) ? check_instance(tag, c.weyl_endo(), c.check_options())
                                       : check_instance(tag, c.poly_endo(), c.check_options());
  auto &params = c.result.report["params"];
  params["n"] = v.n;
  params["p"] = v.p;
  params["d"] = v.d;
  c.flags() = {{"jacobian_nonzero_constant", optional_bool(v.jacobian_nonzero_constant)},
               {"jacobian_condition_applies", v.jacobian_condition_applies},
               {"extension_not_multiple_of_p", optional_bool(v.extension_not_multiple_of_p)},
               {"extension_degree", v.extension_degree ? Json(*v.extension_degree) : Json(nullptr)},
               {"extension_estimated", v.extension_estimated},
               {"symplectic", optional_bool(v.symplectic)},
               {"hypotheses_hold", v.hypotheses_hold},
               {"automorphism", to_string(v.automorphism)},
               {"statement_holds", to_string(v.statement_holds)}};
  c.payload()["certificate"] = v.certificate;
  c.payload()["certified_bound"] = v.certified_bound;
  c.payload()["degree_searched"] = v.degree_searched;
  for (const auto &w : v.witnesses)
    c.witness(w);
  c.result.report["verdict"] = v.verdict;
  c.say(to_string(tag) + ": " + v.verdict);
  c.say("automorphism: " + to_string(v.automorphism) + " (" + v.certificate + ")");
  if (v.verdict == "counterexample")
    c.result.exit_code = falsified;
}

void center_slice(Context &c) {
  if (!c.args.n || !c.args.p || !c.args.degree_cap)
    throw InputError("center-slice needs --n, --p and --degree-cap");
  WeylContext ctx(CoeffRing::prime_field(*c.args.p), *c.args.n);
  CenterSlice s = center_slice_check(ctx, *c.args.degree_cap);
  c.result.report["params"] = {{"n", *c.args.n}, {"p", *c.args.p}, {"degree_cap", *c.args.degree_cap}};
  c.flags() = {{"match", s.match}};
  c.payload() = {{"dimension_found", s.dimension_found}, {"dimension_expected", s.dimension_expected}};
  c.say("center slice dimension " + std::to_string(s.dimension_found) + ", expected " +
        std::to_string(s.dimension_expected));
  c.result.report["verdict"] = s.match ? "match" : "mismatch";
  if (!s.match) {
    c.witness("dimension " + std::to_string(s.dimension_found) + " != " + std::to_string(s.dimension_expected));
    c.result.exit_code = falsified;
  }
}

Json kraus_json(const KrausReport &k) {
  Json rows = Json::array();
  for (const auto &r : k.rows) {
    Json factors = Json::array();
    for (const auto &f : r.factors)
      factors.push_back(format_univariate(f));
    rows.push_back({{"p", r.p}, {"reducible", r.reducible}, {"factors", factors},
                    {"product_verified", r.product_verified}});
  }
  return {{"irreducible_over_z", k.irreducible_over_z},
          {"integer_candidates_checked", k.integer_candidates_checked},
          {"all_reducible", k.all_reducible()},
          {"rows", rows}};
}

void kraus(Context &c) {
  KrausReport k = kraus_check(c.args.p_max);
  c.result.report["params"] = {{"p_max", c.args.p_max}};
  c.payload() = kraus_json(k);
  bool ok = k.irreducible_over_z && k.all_reducible();
  c.flags() = {{"irreducible_over_z", k.irreducible_over_z}, {"all_reducible", k.all_reducible()}};
  c.say(std::string("X^4 + 1 irreducible over Z: ") + (k.irreducible_over_z ? "yes" : "no"));
  for (const auto &r : k.rows) {
    std::vector<std::string> fs;
    for (const auto &f : r.factors)
      fs.push_back("(" + format_univariate(f) + ")");
    c.say("p=" + std::to_string(r.p) + ": " + join(fs, "*"));
    if (!r.reducible || !r.product_verified)
      c.witness("X^4 + 1 not split over F" + std::to_string(r.p));
  }
  c.result.report["verdict"] = ok ? "confirmed" : "falsified";
  if (!ok)
    c.result.exit_code = falsified;
}

void suite(Context &c) {
  SuiteReport s = counterexample_suite(c.check_options());
  Json entries = Json::array();
  for (const auto &e : s.entries) {
    entries.push_back({{"family", e.family},
                       {"tag", to_string(e.tag)},
                       {"p", e.p},
                       {"automorphism", to_string(e.verdict.automorphism)},
                       {"certificate", e.verdict.certificate},
                       {"verdict", e.verdict.verdict},
                       {"expected", e.expected},
                       {"ok", e.ok}});
    c.say(to_string(e.tag) + " p=" + std::to_string(e.p) + " " + e.family + ": " + e.verdict.verdict + ", " +
          to_string(e.verdict.automorphism) + (e.ok ? "" : "  [UNEXPECTED]"));
    if (!e.ok)
      c.witness(to_string(e.tag) + " p=" + std::to_string(e.p) + ": got " + e.verdict.verdict);
  }
  c.payload()["entries"] = entries;
  c.payload()["kraus"] = kraus_json(s.kraus);
  c.flags() = {{"all_ok", s.all_ok}};
  c.say(std::string("kraus: ") + (s.kraus.irreducible_over_z && s.kraus.all_reducible() ? "ok" : "FAILED"));
  c.result.report["verdict"] = s.all_ok ? "golden-match" : "golden-mismatch";
  if (!s.all_ok)
    c.result.exit_code = falsified;
}

void probe_chain(Context &c) {
  WeylEndo phi = c.weyl_endo();
  ChainProbe pr = united_chain_probe(phi, c.check_options());
  c.payload() = {{"phi0", lines_json(pr.phi0.to_lines())},
                 {"deg_phi", pr.degrees.deg_phi},
                 {"deg_phi0", pr.degrees.deg_phi0},
                 {"weyl_certificate", pr.weyl_certificate},
                 {"center_certificate", pr.center_certificate},
                 {"unresolved", pr.unresolved}};
  c.flags() = {{"theorem3_symplectic", pr.theorem3_symplectic},
               {"degree_preserved", pr.degrees.equal},
               {"weyl_automorphism", to_string(pr.weyl_flag)},
               {"center_automorphism", to_string(pr.center_flag)},
               {"consistent", pr.consistent()}};
  for (const auto &f : pr.falsifications)
    c.witness(f);
  c.say("phi: " + to_string(pr.weyl_flag) + ", phi0: " + to_string(pr.center_flag));
  for (const auto &u : pr.unresolved)
    c.say("unresolved: " + u);
  c.result.report["verdict"] = pr.consistent() ? "consistent" : "falsified";
  if (!pr.consistent())
    c.result.exit_code = falsified;
}

const std::map<std::string, std::function<void(Context &)>> &dispatch() {
  static const std::map<std::string, std::function<void(Context &)>> table{
      {"check-symplectic", check_symplectic}, {"check-weyl-endo", check_weyl_endo},
      {"reduce", reduce},                     {"invert", invert},
      {"invert-weyl", invert_weyl},           {"check-instance", check_instance_cmd},
      {"center-slice", center_slice},         {"kraus", kraus},
      {"suite", suite},                       {"probe-chain", probe_chain}};
  return table;
}

} // namespace

const std::vector<std::string> &commands() {
  static const std::vector<std::string> names{"check-symplectic", "check-weyl-endo", "reduce",
                                              "invert",           "invert-weyl",     "check-instance",
                                              "center-slice",     "kraus",           "suite",
                                              "probe-chain"};
  return names;
}

std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

Result run(const std::string &command, const Args &args) {
  Context c{args, {}, {}, {}};
  Json &r = c.result.report;
  r["schema_version"] = kSchemaVersion;
  r["tool_version"] = kToolVersion;
  r["command"] = command;
  r["input_digest"] = nullptr;
  r["seed"] = args.seed;
  r["tag"] = nullptr;
  r["params"] = Json::object();
  r["flags"] = Json::object();
  r["verdict"] = "";
  r["witnesses"] = Json::array();
  r["payload"] = Json::object();
  r["error"] = nullptr;

  auto fail_input = [&](const std::string &what) {
    c.result.exit_code = input_error;
    r["verdict"] = "input-error";
    r["error"] = what;
    c.result.text += "error: " + what + "\n";
  };
  auto it = dispatch().find(command);
  if (it == dispatch().end()) {
    fail_input("unknown command '" + command + "'");
  } else {
    try {
      it->second(c);
    } catch (const ParseError &e) {
      fail_input(e.what());
    } catch (const RelationViolation &e) {
      fail_input(std::string("not a Weyl endomorphism: ") + e.what());
    } catch (const std::invalid_argument &e) {
      // TagMismatch, RingMismatch, bad ring literals.
      fail_input(e.what());
    } catch (const InputError &e) {
      fail_input(e.what());
    } catch (const std::domain_error &e) {
      fail_input(e.what());
    }
  }
  r["exit_code"] = c.result.exit_code;
  return std::move(c.result);
}

} // namespace dqa::cli
