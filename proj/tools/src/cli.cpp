#include "cymod_cli/cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cymod/cmforms.hpp"
#include "cymod/congruence.hpp"
#include "cymod/counting.hpp"
#include "cymod/error.hpp"
#include "cymod/kodaira.hpp"
#include "cymod/lfunctions.hpp"
#include "cymod/qseries.hpp"
#include "cymod/verify.hpp"
#include "json.hpp"

namespace cymod::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { json, pretty, csv };

struct Options {
  bool json_flag = false;
  bool pretty = false;
  bool csv = false;
  unsigned threads = 0;
  std::string form;
  std::string family;
  std::string group;
  std::optional<i64> p, pmin, pmax;
  i64 prec = 500;
  i64 n = 100;
  std::string curve = "0,0,0,-1,0";

  Format format() const { return csv ? Format::csv : pretty ? Format::pretty : Format::json; }
};

json number(i128 x) {
  if (x >= INT64_MIN && x <= INT64_MAX) return static_cast<i64>(x);
  return to_string(x);
}

json coeff_array(const std::vector<i128>& c) {
  json a = json::array();
  for (auto x : c) a.push_back(number(x));
  return a;
}

std::vector<i64> prime_range(const Options& o, i64 default_lo, i64 default_hi) {
  if (o.p) return {*o.p};
  return primes_between(o.pmin.value_or(default_lo), o.pmax.value_or(default_hi));
}

std::vector<i64> family_primes(const WeierstrassFamily& f, const Options& o, i64 lo, i64 hi) {
  if (o.p) {
    require_good_prime(f, *o.p);
    return {*o.p};
  }
  return good_primes(f, o.pmin.value_or(lo), o.pmax.value_or(hi));
}

// groups verify
std::vector<json> groups_verify(const Options& o) {
  std::vector<json> out;
  auto groups = index24_groups();
  auto lifts = chosen_lifts();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!o.group.empty() && groups[i].name != o.group) continue;
    auto a = analyze(groups[i]);
    auto l = analyze(lifts[i]);
    auto expected = groups[i].expected_widths;
    std::sort(expected.rbegin(), expected.rend());
    bool ok = a.index == 24 && a.genus == 0 && a.torsion_free && a.cusps.size() == 6 && a.widths() == expected &&
              !l.contains_minus_id && !l.trace_minus_two;
    out.push_back({{"suite", "groups"},
                   {"target", groups[i].name},
                   {"label", groups[i].label},
                   {"index", a.index},
                   {"genus", a.genus},
                   {"torsion_free", a.torsion_free},
                   {"cusps", a.cusps.size()},
                   {"widths", a.widths()},
                   {"expected", expected},
                   {"lift", lifts[i].name},
                   {"lift_minus_id", l.contains_minus_id},
                   {"lift_trace_minus_two", l.trace_minus_two},
                   {"ok", ok}});
  }
  if (out.empty()) fail(Errc::unknown_name, "no group named " + o.group);
  return out;
}

// forms qexp / ap / check
std::vector<json> forms_qexp(const Options& o) {
  auto s = form_series(o.form, o.prec);
  json j = json::parse(s.to_json());
  return {{{"form", o.form}, {"prec", o.prec}, {"series", s.to_sparse_text()}, {"expansion", j}, {"ok", true}}};
}

std::vector<json> forms_ap(const Options& o) {
  auto spec = hecke_spec(o.form);
  std::vector<json> out;
  auto primes = prime_range(o, 2, 100);
  // Bad primes take their coefficient from the eta product.
  auto coeffs = coefficient_sequence(spec, primes.empty() ? 1 : primes.back());
  for (i64 p : primes) {
    if (!is_prime(p)) fail(Errc::invalid_prime, std::to_string(p) + " is not prime");
    i64 a = coeffs[static_cast<std::size_t>(p)];
    int chi = kronecker_character(spec.discriminant(), p);
    bool ok = std::abs(a) <= 2 * p && (chi != -1 || a == 0);
    out.push_back({{"form", o.form},
                   {"p", p},
                   {"ap", a},
                   {"splitting", chi == 1 ? "split" : chi == -1 ? "inert" : "ramified"},
                   {"ok", ok}});
  }
  return out;
}

std::vector<json> forms_check(const Options& o) {
  auto bad = verify_against_eta(hecke_spec(o.form), o.prec);
  json first = bad.empty() ? json(nullptr) : json(bad.front());
  return {{{"suite", "forms"},
           {"target", o.form},
           {"prec", o.prec},
           {"mismatches", bad.size()},
           {"first_mismatch", first},
           {"ok", bad.empty()}}};
}

// surface scan / count / verify
json fiber_json(const FiberReport& fr, const std::string& family, i64 p) {
  return {{"family", family},
          {"p", p},
          {"place", fr.place.label()},
          {"degree", fr.place.degree()},
          {"type", fr.symbol()},
          {"split", fr.kind == FiberKind::I ? json(fr.split) : json(nullptr)},
          {"tau", fr.tau},
          {"euler", fr.euler}};
}

std::vector<json> surface_scan(const Options& o) {
  auto f = preset(o.family);
  auto primes = family_primes(f, o, 5, 40);
  std::vector<json> out;
  for (i64 p : primes) {
    auto s = scan(f, p, false);
    for (const auto& fr : s.fibers) out.push_back(fiber_json(fr, f.name, p));
    out.push_back({{"family", f.name},
                   {"p", p},
                   {"configuration", s.configuration()},
                   {"euler_sum", s.euler_sum},
                   {"euler_target", s.euler_target},
                   {"ns_trace", ns_trace(s)},
                   {"ok", s.audit_ok}});
  }
  if (primes.size() >= 3) {
    auto v = config_verdict(f, primes);
    out.push_back({{"family", v.family},
                   {"expected", v.expected},
                   {"measured", v.measured},
                   {"primes", v.primes},
                   {"ok", v.ok},
                   {"notes", v.notes}});
  }
  return out;
}

std::optional<TwistFit> try_fit(const WeierstrassFamily& f, const std::vector<CountReport>& counts) {
  if (family_form(f.name).empty() || counts.size() < 10) return std::nullopt;
  return twist_fit_from_counts(f, counts);
}

std::vector<json> surface_count(const Options& o) {
  auto f = preset(o.family);
  auto counts = count_sweep(f, family_primes(f, o, 5, 97), o.threads);
  auto fit = try_fit(f, counts);
  std::vector<json> out;
  for (auto& c : counts) {
    if (fit) {
      c.matched_form = fit->form_id;
      c.twist_disc = fit->D;
      c.ok = c.ok && c.B == predicted_B(*fit, c.p);
    }
    out.push_back({{"family", c.family},
                   {"p", c.p},
                   {"total", c.total},
                   {"ns_trace_used", c.ns_trace_used},
                   {"B", c.B},
                   {"matched_form", c.matched_form.empty() ? json(nullptr) : json(c.matched_form)},
                   {"twist_disc", c.matched_form.empty() ? json(nullptr) : json(c.twist_disc)},
                   {"ok", c.ok}});
  }
  return out;
}

std::vector<json> surface_verify(const Options& o) {
  auto f = preset(o.family);
  auto primes = family_primes(f, o, 5, 97);
  auto counts = count_sweep(f, primes, o.threads);
  auto fit = twist_fit_from_counts(f, counts);
  auto ns = ns_decomposition(f.name);
  json first = nullptr;
  for (const auto& c : counts) {
    bool ns_ok = !ns || c.ns_trace_used == ns->predicted_trace(c.p);
    if (c.B != predicted_B(fit, c.p) || !ns_ok) {
      first = c.p;
      break;
    }
  }
  return {{{"suite", "modularity"},
           {"family", f.name},
           {"form", fit.form_id},
           {"twist_disc", fit.D},
           {"twist_class", fit.equivalent},
           {"primes", primes.size()},
           {"first_failure", first},
           {"ok", first.is_null()}}};
}

// l3fold euler / series
TwistFit default_fit(const WeierstrassFamily& f, unsigned threads) {
  return twist_fit(f, good_primes(f, 5, 97), std::nullopt, threads);
}

std::vector<json> l3fold_euler(const Options& o) {
  auto f = preset(o.family);
  auto e = parse_curve(o.curve);
  auto fit = default_fit(f, o.threads);
  std::vector<json> out;
  for (i64 p : prime_range(o, 5, 97)) {
    auto h = h3_euler(f, e, p, fit);
    json j = {{"family", f.name}, {"curve", o.curve}, {"p", p}, {"good", h.good}};
    if (h.good) {
      const i64 A = ap_elliptic(e, p);
      json shifted = json::array();
      for (const auto& g : h.shifted_e) shifted.push_back(coeff_array(g.coeffs));
      j["A"] = A;
      j["B"] = predicted_B(fit, p);
      j["eps"] = h.tensor.nebentypus;
      j["tensor"] = coeff_array(h.tensor.coeffs);
      j["tensor_text"] = h.tensor.str();
      j["shifted_factors"] = shifted;
      j["h3_trace"] = h3_trace(f, e, p, fit);
      j["h2_trace"] = h2_trace(f, p);
      j["root_modulus_ok"] = root_modulus_ok(h.tensor);
      j["ok"] = root_modulus_ok(h.tensor);
    } else {
      j["ok"] = true;
    }
    out.push_back(j);
  }
  return out;
}

std::vector<json> l3fold_series(const Options& o) {
  auto f = preset(o.family);
  auto e = parse_curve(o.curve);
  auto fit = default_fit(f, o.threads);
  auto s = assemble_h3(f, e, o.n, fit);
  bool ok = true;
  for (i64 p : primes_between(2, o.n))
    if (std::find(s.missing.begin(), s.missing.end(), p) == s.missing.end())
      ok = ok && s.a[static_cast<std::size_t>(p)] == h3_trace(f, e, p, fit);
  std::vector<i128> coeffs(s.a.begin() + 1, s.a.end());
  return {{{"family", f.name},
           {"curve", o.curve},
           {"n", o.n},
           {"form", fit.form_id},
           {"twist_disc", fit.D},
           {"bad_primes", s.missing},
           {"coefficients", coeff_array(coeffs)},
           {"ok", ok}}};
}

// verify all
std::vector<json> verify_all_records(const Options& o) {
  VerifyOptions vo;
  vo.pmax = o.pmax.value_or(97);
  vo.form_prec = o.prec;
  vo.threads = o.threads;
  std::vector<json> out;
  for (const auto& s : verify_all(vo)) {
    for (const auto& r : s.records) {
      json params = json::object();
      for (const auto& [k, v] : r.params) params[k] = v;
      out.push_back({{"suite", r.suite}, {"target", r.target}, {"parameters", params}, {"ok", r.ok},
                     {"details", r.details}});
    }
    out.push_back({{"suite", s.suite},
                   {"criterion", s.criterion},
                   {"seconds", s.seconds},
                   {"budget_seconds", s.budget_seconds},
                   {"within_budget", s.within_budget()},
                   {"ok", s.ok()}});
  }
  return out;
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::vector<std::string> all_keys(const std::vector<json>& records) {
  std::vector<std::string> keys;
  for (const auto& r : records)
    for (const auto& [k, v] : r.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  return keys;
}

void emit(const std::vector<json>& records, Format fmt, std::ostream& out) {
  if (fmt == Format::json) {
    for (const auto& r : records) out << r.dump() << '\n';
    return;
  }
  if (fmt == Format::csv) {
    auto keys = all_keys(records);
    auto quote = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << quote(keys[i]);
    out << '\n';
    for (const auto& r : records) {
      for (std::size_t i = 0; i < keys.size(); ++i)
        out << (i ? "," : "") << (r.contains(keys[i]) ? quote(cell(r[keys[i]])) : "");
      out << '\n';
    }
    return;
  }
  // Pretty: one aligned table per run of records sharing the same keys.
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    auto keys = all_keys({records[i]});
    while (j < records.size() && all_keys({records[j]}) == keys) ++j;
    std::vector<std::size_t> width(keys.size());
    for (std::size_t k = 0; k < keys.size(); ++k) {
      width[k] = keys[k].size();
      for (std::size_t r = i; r < j; ++r) width[k] = std::max(width[k], cell(records[r][keys[k]]).size());
    }
    for (std::size_t k = 0; k < keys.size(); ++k) out << std::left << std::setw(static_cast<int>(width[k]) + 2) << keys[k];
    out << '\n';
    for (std::size_t r = i; r < j; ++r) {
      for (std::size_t k = 0; k < keys.size(); ++k)
        out << std::left << std::setw(static_cast<int>(width[k]) + 2) << cell(records[r][keys[k]]);
      out << '\n';
    }
    out << '\n';
    i = j;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modular forms, elliptic surfaces and Euler factors: verification tool", "cymod"};
  app.require_subcommand(1);
  Options o;
  std::function<std::vector<json>(const Options&)> action;

  const std::vector<std::string> forms = {"h1", "h2", "h3", "h4", "h5", "h6", "h7", "h8", "h9"};
  auto families = family_names();
  families.push_back("g4");

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                   std::function<std::vector<json>(const Options&)> fn) {
    auto* sub = parent->add_subcommand(name, help);
    sub->add_flag("--json", o.json_flag, "JSON lines output (default)");
    sub->add_flag("--pretty", o.pretty, "Human-readable tables");
    sub->add_flag("--csv", o.csv, "CSV output");
    sub->add_option("--threads", o.threads, "Parallel prime sweeps (0 = all cores)");
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  auto add_primes = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "Single prime");
    sub->add_option("--pmin", o.pmin, "Smallest prime");
    sub->add_option("--pmax", o.pmax, "Largest prime");
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "Family preset")->required()->check(CLI::IsMember(families));
  };

  auto* groups = app.add_subcommand("groups", "Congruence subgroups");
  groups->require_subcommand(1);
  leaf(groups, "verify", "Index, genus, widths and lifts of the index-24 groups", groups_verify)
      ->add_option("--group", o.group, "Restrict to one preset");

  auto* fm = app.add_subcommand("forms", "Eta quotients and CM forms");
  fm->require_subcommand(1);
  auto* qexp = leaf(fm, "qexp", "q-expansion of an eta quotient", forms_qexp);
  qexp->add_option("--form", o.form, "Form id")->required()->check(CLI::IsMember(forms));
  qexp->add_option("--prec", o.prec, "Number of integer q-powers");
  auto* apc = leaf(fm, "ap", "Hecke eigenvalues a_p", forms_ap);
  apc->add_option("--form", o.form, "Form id")->required()->check(CLI::IsMember(hecke_form_ids()));
  add_primes(apc);
  auto* chk = leaf(fm, "check", "Hecke character against the eta product", forms_check);
  chk->add_option("--form", o.form, "Form id")->required()->check(CLI::IsMember(hecke_form_ids()));
  chk->add_option("--prec", o.prec, "Coefficients to compare");

  auto* sf = app.add_subcommand("surface", "Elliptic surfaces");
  sf->require_subcommand(1);
  auto* sc = leaf(sf, "scan", "Singular fibers and Euler audit", surface_scan);
  add_family(sc);
  add_primes(sc);
  auto* cnt = leaf(sf, "count", "Point counts and transcendental traces", surface_count);
  add_family(cnt);
  add_primes(cnt);
  auto* ver = leaf(sf, "verify", "Modularity verdict", surface_verify);
  add_family(ver);
  add_primes(ver);

  auto* l3 = app.add_subcommand("l3fold", "Euler factors of the threefold");
  l3->require_subcommand(1);
  auto* eu = leaf(l3, "euler", "Local factors at p", l3fold_euler);
  add_family(eu);
  add_primes(eu);
  eu->add_option("--curve", o.curve, "a1,a2,a3,a4,a6");
  auto* se = leaf(l3, "series", "Dirichlet coefficients of L(H^3)", l3fold_series);
  add_family(se);
  se->add_option("--curve", o.curve, "a1,a2,a3,a4,a6");
  se->add_option("--n", o.n, "Number of coefficients")->check(CLI::Range(1, 100000));

  auto* va = app.add_subcommand("verify", "Acceptance suites");
  va->require_subcommand(1);
  auto* all = leaf(va, "all", "Run every suite", verify_all_records);
  all->add_option("--pmax", o.pmax, "Largest prime for sweeps");
  all->add_option("--prec", o.prec, "Coefficient bound for form checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (static_cast<int>(o.json_flag) + o.pretty + o.csv > 1) {
    err << "choose at most one of --json, --pretty, --csv\n";
    return 2;
  }
  if (!action) {
    err << app.help();
    return 2;
  }

  std::vector<json> records;
  try {
    records = action(o);
  } catch (const Error& e) {
    out << json{{"error", errc_name(e.code())}, {"message", e.what()}, {"ok", false}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    out << json{{"error", "exception"}, {"message", e.what()}, {"ok", false}}.dump() << '\n';
    return 1;
  }
  emit(records, o.format(), out);
  bool ok = std::all_of(records.begin(), records.end(), [](const json& r) { return r.value("ok", true); });
  return ok ? 0 : 1;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace cymod::cli
