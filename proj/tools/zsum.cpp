// Command-line surface for the zero-sum sequence toolkit: exact invariants,
// witness constructions, certificate verification and the reproduction suite.
//
// Exit codes: 0 ok, 1 computational failure, 2 theorem-check disagreement,
// 64 usage error.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zsum/c1search.hpp"
#include "zsum/constructions.hpp"
#include "zsum/factorize.hpp"
#include "zsum/io.hpp"
#include "zsum/rank2.hpp"
#include "zsum/reproduce.hpp"

using nlohmann::json;
using namespace zsum;

namespace {

constexpr const char* kVersion = "zsum 0.1.0";

struct GlobalOpts {
  std::string group_spec;
  std::string cache_dir;
  std::string format = "json";
  uint64_t budget = 100'000'000;
  int workers = 0;
};

std::string default_cache_dir() {
  if (const char* env = std::getenv("ZSUM_CACHE_DIR")) return env;
  return "";
}

AtomSet cached_atoms(const Group& g, const GlobalOpts& opts, json* cache_info) {
  EnumerateOptions eo;
  eo.budget = opts.budget;
  eo.workers = opts.workers;
  bool hit = false;
  AtomSet atoms = load_or_enumerate_atoms(g, opts.cache_dir, eo, &hit);
  if (cache_info) (*cache_info)["atom_cache_hit"] = hit;
  return atoms;
}

json seq_list(const std::vector<Sequence>& seqs) {
  json arr = json::array();
  for (const Sequence& s : seqs) arr.push_back(s.to_string());
  return arr;
}

json cert_to_json_obj(const Certificate& cert, int64_t claimed) {
  return json::parse(certificate_to_json(cert, claimed));
}

json report_to_json_obj(const WitnessReport& w) { return json::parse(witness_report_to_json(w)); }

void render_table(const json& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_structured() && !it.value().empty()) {
        os << pad << it.key() << ":\n";
        render_table(it.value(), os, indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured()) {
        os << pad << "-\n";
        render_table(v, os, indent + 2);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

int emit(const GlobalOpts& opts, json report, int exit_code = 0) {
  report["version"] = kVersion;
  if (opts.format == "table")
    render_table(report, std::cout);
  else
    std::cout << report.dump(2) << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact zero-sum sequence computations over finite abelian groups"};
  app.require_subcommand(1);

  GlobalOpts opts;
  opts.cache_dir = default_cache_dir();
  app.add_option("--cache-dir", opts.cache_dir, "atom cache directory (env ZSUM_CACHE_DIR)");
  app.add_option("--format", opts.format, "output format: json|table")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--budget", opts.budget, "search/enumeration budget");
  app.add_option("--workers", opts.workers, "worker threads (0 = default)");

  auto* cmd_info = app.add_subcommand("group-info", "normalized form and basic invariants");
  cmd_info->add_option("--group", opts.group_spec)->required();

  auto* cmd_dav = app.add_subcommand("davenport", "Davenport constant by full atom enumeration");
  cmd_dav->add_option("--group", opts.group_spec)->required();

  auto* cmd_atoms = app.add_subcommand("atoms", "enumerate (and cache) the atoms");
  cmd_atoms->add_option("--group", opts.group_spec)->required();
  int atoms_max_len = -1;
  cmd_atoms->add_option("--max-len", atoms_max_len, "length cap (omit for all atoms)");
  bool atoms_list = false;
  cmd_atoms->add_flag("--list", atoms_list, "include the atom list in the report");

  auto* cmd_rho = app.add_subcommand("rho", "rho_k: exact value or bounds");
  cmd_rho->add_option("--group", opts.group_spec)->required();
  int rho_k = 0;
  cmd_rho->add_option("--k", rho_k)->required();
  bool rho_exact = false, rho_bounds = false, rho_symmetry = false;
  cmd_rho->add_flag("--exact", rho_exact, "exact computation (even k formula, odd k search)");
  cmd_rho->add_flag("--bounds", rho_bounds, "bounds only for odd k");
  cmd_rho->add_flag("--symmetry", rho_symmetry,
                    "orbit reduction for homocyclic groups (k = 3 search)");

  auto* cmd_lambda = app.add_subcommand("lambda", "lambda_target via the cased formula");
  cmd_lambda->add_option("--group", opts.group_spec)->required();
  int64_t lambda_target = 0;
  cmd_lambda->add_option("--target", lambda_target)->required();

  auto* cmd_unions = app.add_subcommand("unions", "the exact set U_k");
  cmd_unions->add_option("--group", opts.group_spec)->required();
  int unions_k = 0;
  cmd_unions->add_option("--k", unions_k)->required();

  auto* cmd_classify = app.add_subcommand("classify", "structural type of a maximal-length sequence");
  cmd_classify->add_option("--group", opts.group_spec)->required();
  std::string classify_seq;
  cmd_classify->add_option("--sequence", classify_seq)->required();

  auto* cmd_census = app.add_subcommand("census", "exhaustive classifier cross-check");
  int64_t census_m = 0, census_n = 0;
  cmd_census->add_option("--m", census_m)->required();
  cmd_census->add_option("--n", census_n)->required();

  auto* cmd_c1 = app.add_subcommand("c1-search", "search for a split witness");
  cmd_c1->add_option("--group", opts.group_spec)->required();
  bool c1_exhaustive = false, c1_chain = false;
  cmd_c1->add_flag("--exhaustive", c1_exhaustive);
  cmd_c1->add_flag("--chain", c1_chain, "chain a found witness into a rho_3 certificate");

  auto* cmd_witness = app.add_subcommand("witness", "run a named construction");
  std::string witness_name;
  cmd_witness->add_option("--name", witness_name,
                          "prop32|prop35.1|prop35.2|prop35.3|lemma44|lemma46|theorem41|"
                          "cor52.1|cor52.2|cor53")
      ->required();
  cmd_witness->add_option("--group", opts.group_spec);
  int64_t witness_n = 0, witness_m = 0;
  int witness_split = 1;
  cmd_witness->add_option("--n", witness_n);
  cmd_witness->add_option("--m", witness_m);
  cmd_witness->add_option("--split", witness_split, "block split point for lemma44");

  auto* cmd_verify = app.add_subcommand("verify-cert", "verify a certificate document");
  std::string verify_path;
  cmd_verify->add_option("file", verify_path)->required();

  auto* cmd_repro = app.add_subcommand("reproduce", "run the acceptance table");

  // global flags are accepted after the subcommand too
  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  auto t0 = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    json report;
    json cache = json::object();

    if (cmd_info->parsed()) {
      Group g = parse_group_spec(opts.group_spec);
      report["command"] = "group-info";
      report["group"] = g.spec_string();
      report["results"] = {{"order", g.order()},
                           {"exponent", g.exponent()},
                           {"rank", g.rank()},
                           {"d_star", g.d_star()},
                           {"D_star", g.big_d_star()}};
      rc = emit(opts, report);
    } else if (cmd_dav->parsed()) {
      Group g = parse_group_spec(opts.group_spec);
      AtomSet atoms = cached_atoms(g, opts, &cache);
      report["command"] = "davenport";
      report["group"] = g.spec_string();
      report["results"] = {{"davenport", atoms.davenport},
                           {"d_small", atoms.davenport - 1},
                           {"kind", "exact"},
                           {"atom_count", atoms.atoms.size()}};
      report["cache"] = cache;
      rc = emit(opts, report);
    } else if (cmd_atoms->parsed()) {
      Group g = parse_group_spec(opts.group_spec);
      GlobalOpts o2 = opts;
      EnumerateOptions eo;
      eo.budget = opts.budget;
      eo.workers = opts.workers;
      if (atoms_max_len >= 0) eo.max_len = atoms_max_len;
      bool hit = false;
      AtomSet atoms = load_or_enumerate_atoms(g, o2.cache_dir, eo, &hit);
      report["command"] = "atoms";
      report["group"] = g.spec_string();
      report["parameters"] = {{"max_len", atoms_max_len >= 0 ? json(atoms_max_len) : json("full")}};
      report["results"] = {{"count", atoms.atoms.size()},
                           {"davenport", atoms.davenport},
                           {"complete", atoms.complete}};
      if (atoms_list) report["results"]["atoms"] = seq_list(atoms.atoms);
      report["cache"] = {{"atom_cache_hit", hit}};
      rc = emit(opts, report);
    } else if (cmd_rho->parsed()) {
      Group g = parse_group_spec(opts.group_spec);
      AtomSet atoms = cached_atoms(g, opts, &cache);
      report["command"] = "rho";
      report["group"] = g.spec_string();
      report["parameters"] = {{"k", rho_k}};
      json results;
      if (rho_k < 1) fail(Errc::invalid_input, "k must be >= 1");
      if (rho_k == 1) {
        results = {{"value", 1}, {"kind", "exact"}};
      } else if (rho_k % 2 == 0) {
        RhoResult r = rho_even(atoms, rho_k / 2);
        results = {{"value", r.value},
                   {"kind", bound_kind_name(r.kind)},
                   {"certificate", cert_to_json_obj(*r.certificate, r.value)}};
      } else if (rho_k == 3 && !rho_bounds) {
        Rho3Options ro;
        ro.workers = opts.workers;
        ro.triple_budget = opts.budget;
        ro.use_symmetry = rho_symmetry;
        RhoResult r = rho3_exact(atoms, ro);
        results = {{"value", r.value},
                   {"kind", bound_kind_name(r.kind)},
                   {"certificate", cert_to_json_obj(*r.certificate, r.value)}};
      } else {
        // odd k >= 5 (or --bounds): propagate the best certified odd bound
        std::vector<OddBound> known;
        if (rho_exact || !rho_bounds) {
          Rho3Options ro;
          ro.workers = opts.workers;
          ro.triple_budget = opts.budget;
          RhoResult r3 = rho3_exact(atoms, ro);
          known.push_back({1, r3.value});
        }
        auto [lo, hi] = rho_odd_bounds(g, (rho_k - 1) / 2, atoms.davenport, known);
        results = {{"lower", lo.value},
                   {"upper", hi.value},
                   {"kind", lo.value == hi.value ? "exact" : "bounds"}};
        if (lo.value == hi.value) results["value"] = lo.value;
      }
      report["results"] = std::move(results);
      report["cache"] = cache;
      rc = emit(opts, report);
    } else if (cmd_lambda->parsed()) {
      Group g = parse_group_spec(opts.group_spec);
      AtomSet atoms = cached_atoms(g, opts, &cache);
      Rho3Options ro;
      ro.workers = opts.workers;
      auto oracle = [&](int k) -> RhoResult {
        std::vector<OddBound> known{{1, rho3_exact(atoms, ro).value}};
        auto [lo, hi] = rho_odd_bounds(g, k, atoms.davenport, known);
        if (lo.value != hi.value)
          fail(Errc::lambda_needs_exact_rho,
               "rho_" + std::to_string(2 * k + 1) + " not pinned by bounds");
        return lo;
      };
      int64_t value = lambda_formula(g, lambda_target, atoms.davenport, oracle);
      report["command"] = "lambda";
      report["group"] = g.spec_string();
      report["parameters"] = {{"target", lambda_target}};
      report["results"] = {{"value", value}, {"kind", "formula"}};
      report["cache"] = cache;
      rc = emit(opts, report);
    } else if (cmd_unions->parsed()) {
      Group g = parse_group_spec(opts.group_spec);
      AtomSet atoms = cached_atoms(g, opts, &cache);
      auto u = u_k_exact(atoms, unions_k, opts.budget);
      report["command"] = "unions";
      report["group"] = g.spec_string();
      report["parameters"] = {{"k", unions_k}};
      report["results"] = {{"set", u},
                           {"min", u.front()},
                           {"max", u.back()},
                           {"interval", static_cast<int>(u.size()) == u.back() - u.front() + 1},
                           {"kind", "exact"}};
      report["cache"] = cache;
      rc = emit(opts, report);
    } else if (cmd_classify->parsed()) {
      Group g = parse_group_spec(opts.group_spec);
      const auto& f = g.factors();
      if (f.size() != 2 || f[1] % f[0] != 0)
        fail(Errc::not_applicable, "classify needs a rank-2 group in (m, mn) form");
      int64_t m = f[0], n = f[1] / f[0];
      Sequence s = Sequence::parse(g, classify_seq);
      ClassificationResult res = classify(s, m, n);
      report["command"] = "classify";
      report["group"] = g.spec_string();
      report["parameters"] = {{"sequence", s.to_string()}, {"m", m}, {"n", n}};
      json out = {{"verdict", seq_type_name(res.verdict)}};
      if (res.verdict != SeqType::not_minimal) {
        out["basis_a"] = s.group().element_at(res.basis_a).group().coords_of(res.basis_a);
        out["basis_b"] = g.coords_of(res.basis_b);
        out["exponents"] = res.exponents;
        if (res.verdict == SeqType::type_ii) {
          out["s"] = res.s;
          out["eps"] = res.eps;
        }
      }
      report["results"] = std::move(out);
      rc = emit(opts, report);
    } else if (cmd_census->parsed()) {
      CensusResult res = classifier_census(census_m, census_n, opts.budget, opts.workers);
      report["command"] = "census";
      report["group"] = make_group({census_m, census_m * census_n}).spec_string();
      report["parameters"] = {{"m", census_m}, {"n", census_n}};
      report["results"] = {{"total", res.total},
                           {"count_atoms", res.count_atoms},
                           {"count_Ia", res.count_ia},
                           {"count_Ib", res.count_ib},
                           {"count_II", res.count_ii},
                           {"disagreements", seq_list(res.disagreements)},
                           {"overlaps", res.overlaps.size()}};
      rc = emit(opts, report, res.disagreements.empty() ? 0 : 2);
    } else if (cmd_c1->parsed()) {
      Group g = parse_group_spec(opts.group_spec);
      AtomSet atoms = cached_atoms(g, opts, &cache);
      C1Options co;
      co.mode = c1_exhaustive ? C1Mode::exhaustive : C1Mode::first;
      co.budget = opts.budget;
      co.workers = opts.workers;
      C1Result res = c1_search(atoms, co);
      report["command"] = "c1-search";
      report["group"] = g.spec_string();
      report["parameters"] = {{"mode", c1_exhaustive ? "exhaustive" : "first"}};
      json out;
      out["in_conjecture_scope"] = res.in_conjecture_scope;
      if (!res.in_conjecture_scope) out["scope_note"] = "outside conjecture scope";
      if (res.witness) {
        out["status"] = "witness";
        out["U"] = res.witness->U.to_string();
        out["S1"] = res.witness->S1.to_string();
        out["S2"] = res.witness->S2.to_string();
        out["missing"] = g.coords_of(res.witness->missing.index());
        if (c1_chain)
          out["rho3_certificate"] = report_to_json_obj(c1_to_rho3(*res.witness, atoms.davenport));
      } else {
        out["status"] = res.exhausted ? "none (exhaustive)" : "none (budget)";
      }
      out["splits_examined"] = res.splits_examined;
      report["results"] = std::move(out);
      report["cache"] = cache;
      rc = emit(opts, report);
    } else if (cmd_witness->parsed()) {
      report["command"] = "witness";
      report["parameters"] = {{"name", witness_name}};
      json out;
      if (witness_name == "lemma44") {
        Group g = parse_group_spec(opts.group_spec);
        Block b1, b2;
        for (int i = 0; i < witness_split; ++i) b1.coords.push_back(i);
        for (int i = witness_split; i < g.rank(); ++i) b2.coords.push_back(i);
        out = report_to_json_obj(lemma44_witness(g, b1, b2));
        report["group"] = g.spec_string();
      } else if (witness_name == "lemma46") {
        out = report_to_json_obj(lemma46_witness(witness_n));
      } else if (witness_name == "theorem41") {
        Group g = parse_group_spec(opts.group_spec);
        out = report_to_json_obj(theorem41_witness(g));
        report["group"] = g.spec_string();
      } else if (witness_name == "prop35.1") {
        Group g = parse_group_spec(opts.group_spec);
        out = report_to_json_obj(prop35_part1(g));
        report["group"] = g.spec_string();
      } else if (witness_name == "prop35.2" || witness_name == "prop32") {
        Group g = parse_group_spec(opts.group_spec);
        C1Witness w = prop35_part2(g);
        out["U"] = w.U.to_string();
        out["S1"] = w.S1.to_string();
        out["S2"] = w.S2.to_string();
        out["missing"] = g.coords_of(w.missing.index());
        if (witness_name == "prop32") {
          AtomSet atoms = cached_atoms(g, opts, &cache);
          out["rho3_certificate"] =
              report_to_json_obj(prop32_construction(w.U, w.S1, w.S2, w.missing, atoms.davenport));
        }
        report["group"] = g.spec_string();
      } else if (witness_name == "prop35.3") {
        C1Witness w = prop35_part3(witness_n);
        out["group"] = w.U.group().spec_string();
        out["U_length"] = w.U.length();
        out["S1"] = w.S1.to_string();
        out["missing"] = w.U.group().coords_of(w.missing.index());
        out["verified"] = true;
      } else if (witness_name == "cor52.1" || witness_name == "cor52.2") {
        int64_t m = witness_m ? witness_m : (witness_name == "cor52.1" ? 2 : 3);
        if (witness_name == "cor52.1" && m != 2)
          fail(Errc::not_applicable, "cor52 part 1 is the m = 2 construction");
        if (witness_name == "cor52.2" && m < 3)
          fail(Errc::not_applicable, "cor52 part 2 needs m >= 3");
        out = report_to_json_obj(cor52_witnesses(m).front());
      } else if (witness_name == "cor53") {
        out = report_to_json_obj(cor53_witness(witness_n));
      } else {
        fail(Errc::invalid_input, "unknown witness name " + witness_name);
      }
      report["results"] = std::move(out);
      rc = emit(opts, report);
    } else if (cmd_verify->parsed()) {
      int64_t claimed = 0;
      report["command"] = "verify-cert";
      report["parameters"] = {{"file", verify_path}};
      try {
        Certificate cert = read_certificate(verify_path, &claimed);
        report["results"] = {{"verified", true},
                             {"group", cert.group.spec_string()},
                             {"left_count", cert.left.size()},
                             {"right_count", cert.right.size()},
                             {"claimed_rho", claimed}};
        rc = emit(opts, report);
      } catch (const Error& e) {
        report["results"] = {{"verified", false}, {"first_failing_check", e.what()}};
        rc = emit(opts, report, 1);
      }
    } else if (cmd_repro->parsed()) {
      ReproduceOptions ro;
      ro.cache_dir = opts.cache_dir;
      ro.budget = opts.budget;
      ro.workers = opts.workers;
      auto rows = reproduce_suite(ro);
      report["command"] = "reproduce";
      json table = json::array();
      bool ok = all_rows_pass(rows);
      for (const auto& row : rows)
        table.push_back({{"criterion", row.name},
                         {"status", row.skipped ? "skipped (budget)" : row.pass ? "pass" : "fail"},
                         {"detail", row.detail},
                         {"millis", row.millis}});
      report["results"] = {{"rows", table}, {"all_pass", ok}};
      rc = emit(opts, report, ok ? 0 : 2);
    }
  } catch (const Error& e) {
    json err = {{"error", e.what()}, {"version", kVersion}};
    std::cout << err.dump(2) << "\n";
    rc = 1;
  } catch (const std::exception& e) {
    json err = {{"error", e.what()}, {"version", kVersion}};
    std::cout << err.dump(2) << "\n";
    rc = 1;
  }
  auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cerr << "# elapsed_ms " << ms << "\n";
  return rc;
}
