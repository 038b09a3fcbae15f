/* Command-line front end: invariants | enumerate | genus | repcount |
 * corresponds | transform | verify. Exit codes: 0 success/verified,
 * 1 counterexample, 2 usage or validation failure, 3 inconclusive. */

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ternary/verify.hpp"

using nlohmann::json;
using namespace ternary;

namespace {

std::string resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("TERNARY_CACHE_DIR")) return env;
  return "./cache";
}

json symbols_to_json(const std::vector<GenusSymbol>& symbols) {
  json out = json::array();
  for (const GenusSymbol& s : symbols) out.push_back({{"place", s.place}, {"value", s.value}});
  return out;
}

json matrix_to_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m.m[i][0], m.m[i][1], m.m[i][2]});
  return rows;
}

int cmd_invariants(const std::string& form_text) {
  TernaryForm f = TernaryForm::parse(form_text);
  GenusInvariants inv = genus_symbols(f);
  json doc{{"form", f.str()},
           {"delta", inv.delta},
           {"divisor", inv.divisor_m},
           {"level", inv.level_N},
           {"reciprocal", inv.reciprocal.str()},
           {"reciprocal_divisor", inv.reciprocal_divisor_mu},
           {"symbols", {{"f", symbols_to_json(inv.symbols_f)}, {"phi", symbols_to_json(inv.symbols_phi)}}}};
  std::cout << doc.dump(1) << "\n";
  return 0;
}

int cmd_enumerate(Int delta, bool as_json, bool as_csv, const std::string& cache_dir) {
  ClassTable table = load_or_enumerate(delta, cache_dir);
  if (as_csv) {
    std::cout << "index,a,b,c,r,s,t,aut_count,genus\n";
    for (std::size_t i = 0; i < table.classes.size(); ++i) {
      int genus = -1;
      for (std::size_t g = 0; g < table.genera.size(); ++g)
        for (int ci : table.genera[g])
          if (ci == static_cast<int>(i)) genus = static_cast<int>(g);
      std::cout << i << "," << table.classes[i].str() << "," << table.aut_counts[i] << "," << genus
                << "\n";
    }
    return 0;
  }
  json doc{{"delta", table.delta}, {"tool_version", kToolVersion}};
  json classes = json::array();
  for (const TernaryForm& f : table.classes) classes.push_back(f.coefficients());
  doc["classes"] = classes;
  doc["aut_counts"] = table.aut_counts;
  doc["genera"] = table.genera;
  if (as_json) {
    std::cout << doc.dump(1) << "\n";
  } else {
    std::cout << "discriminant " << delta << ": " << table.classes.size() << " classes in "
              << table.genera.size() << " genera\n";
    for (std::size_t g = 0; g < table.genera.size(); ++g) {
      std::cout << "genus " << g << ":";
      for (int ci : table.genera[g])
        std::cout << "  <" << table.classes[ci].str() << "> aut=" << table.aut_counts[ci];
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_genus(const std::string& form_text, Int bound, bool as_json,
              const std::string& cache_dir) {
  TernaryForm f = TernaryForm::parse(form_text);
  ClassTable table = load_or_enumerate(discriminant(f), cache_dir);
  int gi = find_genus_index(table, f);
  if (gi < 0) throw std::invalid_argument("class not found in its own discriminant table");
  SpinorPartition part = spinor_partition(table, gi, bound);
  json doc{{"form", f.str()},
           {"delta", table.delta},
           {"method", "evidence-based partition"},
           {"inconclusive", part.inconclusive}};
  json classes = json::array();
  for (int ci : part.genus)
    classes.push_back({{"form", table.classes[ci].str()}, {"aut_count", table.aut_counts[ci]}});
  doc["genus_classes"] = classes;
  json blocks = json::array();
  for (const auto& block : part.blocks) {
    json b = json::array();
    for (int ci : block) b.push_back(table.classes[ci].str());
    blocks.push_back(b);
  }
  doc["spinor_blocks"] = blocks;
  json evidence = json::array();
  for (const auto& row : part.exceptional_evidence) {
    evidence.push_back({{"t", row.t}, {"probe", row.probe}, {"represents", row.represents}});
  }
  doc["exceptional_evidence"] = evidence;
  json splitting = json::array();
  for (const auto& row : part.splitting_evidence) {
    json ms = json::array();
    for (const Rational& m : row.measures) ms.push_back(m.str());
    splitting.push_back({{"j", row.j}, {"measures", ms}});
  }
  doc["splitting_evidence"] = splitting;
  if (as_json) {
    std::cout << doc.dump(1) << "\n";
  } else {
    std::cout << "genus of " << f.str() << " (delta " << table.delta << "): " << part.genus.size()
              << " classes, " << part.blocks.size() << " spinor block(s)"
              << (part.inconclusive ? " [inconclusive]" : "") << "\n";
    for (const auto& block : part.blocks) {
      std::cout << "  block:";
      for (int ci : block) std::cout << " <" << table.classes[ci].str() << ">";
      std::cout << "\n";
    }
    for (const auto& row : part.exceptional_evidence) {
      std::cout << "  evidence t=" << row.t << " (probe " << row.probe << ")\n";
    }
  }
  return 0;
}

int cmd_repcount(const std::string& form_text, const std::vector<Int>& values, bool as_json) {
  TernaryForm f = TernaryForm::parse(form_text);
  json rows = json::array();
  for (Int n : values) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    Int count = rep_count(f, n);
    Int prim = (n >= 1) ? static_cast<Int>(primitive_reps(f, n).vectors.size()) : 0;
    rows.push_back({{"n", n}, {"count", count}, {"primitive", prim}});
    if (!as_json) std::cout << n << " " << count << " " << prim << "\n";
  }
  if (as_json) std::cout << json{{"form", f.str()}, {"counts", rows}}.dump(1) << "\n";
  return 0;
}

int cmd_corresponds(const std::string& ftext, const std::string& gtext, Int k, bool all_witnesses,
                    bool as_json) {
  TernaryForm f = TernaryForm::parse(ftext);
  TernaryForm g = TernaryForm::parse(gtext);
  Int df = discriminant(f), dg = discriminant(g);
  if (df % dg != 0 && dg % df != 0) throw std::invalid_argument("discriminant ratio is not integral");
  // Distinct discriminants tie the multiplier to the ratio; equal ones
  // admit the involution multipliers.
  if (df != dg && df != k * dg && dg != k * df) {
    throw std::invalid_argument("discriminant ratio does not equal k");
  }
  json doc{{"f", f.str()}, {"g", g.str()}, {"k", k}};
  if (all_witnesses) {
    json fws = json::array(), bws = json::array();
    for (const RepMatrix& w : all_representation_witnesses(f, g, k)) fws.push_back(matrix_to_json(w.P));
    for (const RepMatrix& w : all_representation_witnesses(g, f, k)) bws.push_back(matrix_to_json(w.P));
    doc["forward_witnesses"] = fws;
    doc["backward_witnesses"] = bws;
    doc["present"] = !fws.empty() && !bws.empty();
  } else {
    auto pair = chan_pair(f, g, k);
    doc["present"] = bool(pair);
    if (pair) {
      doc["forward"] = matrix_to_json(pair->forward.P);
      doc["backward"] = matrix_to_json(pair->backward.P);
      doc["product_is_k_identity"] = pair->product_is_k_identity;
    }
  }
  if (as_json) {
    std::cout << doc.dump(1) << "\n";
  } else if (doc["present"].get<bool>()) {
    std::cout << "present\n" << doc.dump(1) << "\n";
  } else {
    std::cout << "absent\n";
  }
  return 0;
}

int cmd_transform(bool do_ascend, bool do_descend, const std::string& form_text, Int p,
                  bool all_witnesses) {
  if (do_ascend == do_descend) throw std::invalid_argument("choose exactly one of --ascend/--descend");
  TernaryForm f = TernaryForm::parse(form_text);
  json doc{{"input", f.str()}, {"p", p}, {"operation", do_ascend ? "ascend" : "descend"}};
  if (do_ascend) {
    auto [shape, u] = ascent_canonical_shape(f, p);
    TernaryForm out = ascend(f, p);
    doc["canonical_shape"] = shape.str();
    doc["basis_change"] = matrix_to_json(u);
    doc["result"] = out.str();
    doc["delta_in"] = discriminant(f);
    doc["delta_out"] = discriminant(out);
    doc["delta_law"] = discriminant(out) == p * discriminant(f);
  } else {
    auto [shape, u] = descent_canonical_shape(f, p);
    TernaryForm out = descend(f, p);
    doc["canonical_shape"] = shape.str();
    doc["basis_change"] = matrix_to_json(u);
    doc["result"] = out.str();
    doc["delta_in"] = discriminant(f);
    doc["delta_out"] = discriminant(out);
    doc["delta_law"] = discriminant(out) == discriminant(f) / p;
    if (all_witnesses) {
      json all = json::array();
      for (const TernaryForm& w : descend_all_witnesses(f, p)) all.push_back(w.str());
      doc["all_witness_classes"] = all;
    }
  }
  std::cout << doc.dump(1) << "\n";
  return 0;
}

int cmd_verify(const std::string& task, VerifyOptions options) {
  VerificationReport report = run_verification(task, options);
  std::cout << report.to_json().dump(1) << "\n";
  switch (report.status) {
    case VerifyStatus::verified: return 0;
    case VerifyStatus::counterexample: return 1;
    case VerifyStatus::inconclusive: return 3;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ternary quadratic form toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false, as_csv = false;
  std::string cache_flag;
  std::uint64_t seed = 0;
  int threads = 1;
  app.add_flag("--json", as_json, "machine-readable JSON output");
  app.add_flag("--csv", as_csv, "CSV output where supported");
  app.add_option("--cache-dir", cache_flag, "class-table cache directory");
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--threads", threads, "worker threads for verification tasks");

  std::string form_text, form_text2, task, family = "a";
  Int delta = 0, k = 1, p = 3, bound = 10000;
  Int nmax = -1, kmax = -1, nval = -1, deltaratio = -1, samples = -1, count = -1;
  std::vector<Int> values;
  bool all_witnesses = false, do_ascend = false, do_descend = false;

  auto* inv = app.add_subcommand("invariants", "discriminant, divisor, level, reciprocal, symbols");
  inv->add_option("form", form_text, "sextuple a,b,c,r,s,t")->required();

  auto* enu = app.add_subcommand("enumerate", "all classes of a discriminant");
  enu->add_option("--disc", delta, "discriminant")->required();

  auto* gen = app.add_subcommand("genus", "genus and spinor partition of a form");
  gen->add_option("form", form_text, "sextuple a,b,c,r,s,t")->required();
  gen->add_option("--bound", bound, "probe bound for spinor evidence");

  auto* rep = app.add_subcommand("repcount", "representation counts");
  rep->add_option("form", form_text, "sextuple a,b,c,r,s,t")->required();
  rep->add_option("n", values, "target values")->required();

  auto* cor = app.add_subcommand("corresponds", "mutual k-multiple representation");
  cor->add_option("f", form_text, "first form")->required();
  cor->add_option("g", form_text2, "second form")->required();
  cor->add_option("k", k, "multiplier")->required();
  cor->add_flag("--all-witnesses", all_witnesses, "list every representation matrix");

  auto* tra = app.add_subcommand("transform", "ascent/descent through canonical shapes");
  tra->add_flag("--ascend", do_ascend, "apply the ascent map");
  tra->add_flag("--descend", do_descend, "apply the descent map");
  tra->add_option("form", form_text, "sextuple a,b,c,r,s,t")->required();
  tra->add_option("p", p, "odd prime")->required();
  tra->add_flag("--all-witnesses", all_witnesses,
                "list every distinct descent output over the qualifying vectors");

  auto* ver = app.add_subcommand("verify", "re-verify a desk-checkable claim");
  std::string task_help = "one of:";
  for (const std::string& name : verification_task_names()) task_help += " " + name;
  ver->add_option("task", task, task_help)->required();
  ver->add_option("--nmax", nmax, "range limit for n");
  ver->add_option("--kmax", kmax, "range limit for k");
  ver->add_option("--bound", bound, "representation bound");
  ver->add_option("--n", nval, "single n (involution-400n)");
  ver->add_option("--family", family, "binary-form family a|b (involution-225n)");
  ver->add_option("--deltaratio", deltaratio, "discriminant ratio (respects-spinor)");
  ver->add_option("--samples", samples, "sample count (respects-spinor)");
  ver->add_option("--count", count, "random point count (kaplansky-identity)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string cache_dir = resolve_cache_dir(cache_flag);
    if (inv->parsed()) return cmd_invariants(form_text);
    if (enu->parsed()) return cmd_enumerate(delta, as_json, as_csv, cache_dir);
    if (gen->parsed()) return cmd_genus(form_text, bound, as_json, cache_dir);
    if (rep->parsed()) return cmd_repcount(form_text, values, as_json);
    if (cor->parsed()) return cmd_corresponds(form_text, form_text2, k, all_witnesses, as_json);
    if (tra->parsed()) return cmd_transform(do_ascend, do_descend, form_text, p, all_witnesses);
    if (ver->parsed()) {
      VerifyOptions options;
      options.nmax = nmax;
      options.kmax = kmax;
      options.bound = (ver->count("--bound") > 0) ? bound : -1;
      options.n = nval;
      options.family = family;
      options.deltaratio = deltaratio;
      options.samples = samples;
      options.count = count;
      options.seed = seed;
      options.threads = threads;
      options.cache_dir = cache_dir;
      return cmd_verify(task, options);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const not_isotropic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const symbol_undefined_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
