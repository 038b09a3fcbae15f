#include "ternary/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace ternary {

using nlohmann::json;

std::string to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::verified: return "verified";
    case VerifyStatus::counterexample: return "counterexample";
    case VerifyStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

json VerificationReport::to_json() const {
  return json{{"task", task},
              {"parameters", parameters},
              {"status", ternary::to_string(status)},
              {"details", details},
              {"runtime_ms", runtime_ms}};
}

VerificationReport VerificationReport::from_json(const json& doc) {
  VerificationReport r;
  r.task = doc.at("task").get<std::string>();
  r.parameters = doc.at("parameters");
  std::string s = doc.at("status").get<std::string>();
  r.status = s == "verified"       ? VerifyStatus::verified
             : s == "counterexample" ? VerifyStatus::counterexample
                                     : VerifyStatus::inconclusive;
  r.details = doc.at("details");
  r.runtime_ms = doc.at("runtime_ms").get<std::int64_t>();
  return r;
}

std::vector<Int> jones_pall_multipliers(Int n, Int bound) {
  std::vector<Int> out;
  for (Int m = 1; n * m * m <= bound; ++m) {
    if (all_prime_factors_one_mod_four(m)) out.push_back(m);
  }
  return out;
}

ClassTable table_for(Int delta, const VerifyOptions& options) {
  if (options.cache_dir.empty()) return enumerate_discriminant(delta);
  return load_or_enumerate(delta, options.cache_dir);
}

namespace {

// Runs fn(i) for i in [0, count) across the requested workers, collecting
// json records in index order.
std::vector<json> indexed_parallel(std::size_t count, int threads,
                                   const std::function<json(std::size_t)>& fn) {
  std::vector<json> out(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (!failed) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min<int>(threads, static_cast<int>(count));
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

TernaryForm kaplansky_form(Int n) { return TernaryForm::from_coefficients(2, 2, 4 * n + 1, 2, 2, 0); }

Mat3 scale_gram(const Mat3& m, Int k) {
  Mat3 out = m;
  for (auto& row : out.m)
    for (Int& x : row) x = checked_narrow(Wide(x) * k);
  return out;
}

std::vector<Int> squarefree_two_square_sums(Int nmax, int parity /* 0=any,1=odd,2=even */) {
  std::vector<Int> out;
  for (Int n = 1; n <= nmax; ++n) {
    if (parity == 1 && n % 2 == 0) continue;
    if (parity == 2 && n % 2 == 1) continue;
    if (!is_squarefree(n)) continue;
    if (!sum_two_squares_primitive(n)) continue;
    out.push_back(n);
  }
  return out;
}

VerificationReport make_report(const std::string& task, json parameters) {
  VerificationReport r;
  r.task = task;
  r.parameters = std::move(parameters);
  r.details = json::array();
  return r;
}

void finish(VerificationReport& r, const std::chrono::steady_clock::time_point& start) {
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
}

// ---- individual tasks ----

VerificationReport verify_kaplansky_identity(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int count = opt.count > 0 ? opt.count : 10000;
  VerificationReport r = make_report("kaplansky-identity", {{"count", count}, {"seed", opt.seed}});
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Int> coord(-50, 50), en(1, 200);
  Int checked = 0;
  for (Int i = 0; i < count; ++i) {
    Int n = en(rng), x = coord(rng), y = coord(rng), z = coord(rng);
    Int lhs = evaluate(kaplansky_form(n), {x, y, z});
    Int rhs = (x + y + z) * (x + y + z) + (x - y) * (x - y) + 4 * n * z * z;
    if (lhs != rhs) {
      r.status = VerifyStatus::counterexample;
      r.details.push_back({{"n", n}, {"x", x}, {"y", y}, {"z", z}, {"lhs", lhs}, {"rhs", rhs}});
      finish(r, start);
      return r;
    }
    ++checked;
  }
  r.details.push_back({{"points_checked", checked}});
  finish(r, start);
  return r;
}

VerificationReport verify_lemma1(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int nmax = opt.nmax > 0 ? opt.nmax : 200;
  Int bound = opt.bound > 0 ? opt.bound : 10000;
  VerificationReport r = make_report("lemma1", {{"nmax", nmax}, {"bound", bound}});
  std::vector<Int> ns = squarefree_two_square_sums(nmax, 1);
  auto rows = indexed_parallel(ns.size(), opt.threads, [&](std::size_t idx) -> json {
    Int n = ns[idx];
    TernaryForm f = kaplansky_form(n);
    json bad = json::array();
    for (Int m : jones_pall_multipliers(n, bound)) {
      Int value = n * m * m;
      Int count = rep_count(f, value);
      if (count != 0) bad.push_back({{"m", m}, {"value", value}, {"count", count}});
    }
    return json{{"n", n}, {"violations", bad}};
  });
  for (auto& row : rows) {
    if (!row.at("violations").empty()) r.status = VerifyStatus::counterexample;
    r.details.push_back(row);
  }
  finish(r, start);
  return r;
}

VerificationReport verify_repdiff(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int kmax = opt.kmax > 0 ? opt.kmax : 99;
  VerificationReport r = make_report("repdiff", {{"kmax", kmax}});
  TernaryForm f1 = TernaryForm::parse("1,1,16,0,0,0");
  TernaryForm f2 = TernaryForm::parse("2,2,5,2,2,0");
  for (Int k = 1; k <= kmax; k += 2) {
    Int lhs = rep_count(f1, k * k) - rep_count(f2, k * k);
    Int rhs = 4 * jacobi_symbol(-1, k) * k;
    json row{{"k", k}, {"difference", lhs}, {"formula", rhs}};
    if (lhs != rhs) {
      r.status = VerifyStatus::counterexample;
      row["mismatch"] = true;
    }
    r.details.push_back(row);
  }
  finish(r, start);
  return r;
}

VerificationReport verify_genus_agreement(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int kmax = opt.kmax > 0 ? opt.kmax : 50;
  VerificationReport r = make_report("genus-agreement", {{"kmax", kmax}});
  for (Int k = 1; k <= kmax; ++k) {
    TernaryForm f = TernaryForm::from_coefficients(1, 1, 16 * k, 0, 0, 0);
    TernaryForm h = TernaryForm::from_coefficients(4 * k + 1, 2, 2, 0, 2, 2);
    GenusInvariants fi = genus_symbols(f);
    GenusInvariants hi = genus_symbols(h);
    bool ok = fi.delta == 64 * k && fi.divisor_m == 4 && fi.level_N == 64 * k &&
              fi.reciprocal == TernaryForm::from_coefficients(16 * k, 16 * k, 1, 0, 0, 0) &&
              fi.reciprocal_divisor_mu == 64 * k && hi.delta == 64 * k && hi.divisor_m == 4 &&
              hi.level_N == 64 * k &&
              hi.reciprocal ==
                  TernaryForm::from_coefficients(4, 8 * k + 1, 8 * k + 1, 2, -4, -4) &&
              hi.reciprocal_divisor_mu == 64 * k && same_genus(f, h);
    json row{{"k", k}, {"agree", ok}};
    if (!ok) {
      r.status = VerifyStatus::counterexample;
      row["f"] = f.str();
      row["h"] = h.str();
    }
    r.details.push_back(row);
  }
  finish(r, start);
  return r;
}

// Rebases a partition of table-class indices onto a dense class list for
// the scan functions.
struct LocalGenus {
  std::vector<TernaryForm> classes;
  std::vector<std::vector<int>> blocks;
};

LocalGenus localize(const ClassTable& table, const SpinorPartition& part) {
  LocalGenus out;
  std::map<int, int> local;
  for (int ci : part.genus) {
    local[ci] = static_cast<int>(out.classes.size());
    out.classes.push_back(table.classes[ci]);
  }
  for (const auto& blk : part.blocks) {
    std::vector<int> b;
    for (int ci : blk) b.push_back(local[ci]);
    out.blocks.push_back(b);
  }
  return out;
}

// Block structure of gen<1,1,16n>: 2 blocks, the block of <1,1,16n> and
// the rest.
struct SixteenN {
  ClassTable table;
  SpinorPartition partition;
  int genus_index = -1;
  int class_index = -1;
  int home_block = -1;
};

SixteenN analyze_16n(Int n, const VerifyOptions& opt) {
  SixteenN out;
  out.table = table_for(64 * n, opt);
  TernaryForm g0 = TernaryForm::from_coefficients(1, 1, 16 * n, 0, 0, 0);
  out.class_index = find_class(out.table, g0);
  out.genus_index = find_genus_index(out.table, g0);
  if (out.class_index < 0 || out.genus_index < 0) return out;
  out.partition = spinor_partition(out.table, out.genus_index);
  for (std::size_t b = 0; b < out.partition.blocks.size(); ++b) {
    for (int ci : out.partition.blocks[b]) {
      if (ci == out.class_index) out.home_block = static_cast<int>(b);
    }
  }
  return out;
}

VerificationReport verify_spinor_represents(const VerifyOptions& opt, int parity) {
  auto start = std::chrono::steady_clock::now();
  Int nmax = opt.nmax > 0 ? opt.nmax : 100;
  Int bound = opt.bound > 0 ? opt.bound : 10000;
  std::string name = parity == 1 ? "spinor-represents-odd" : "spinor-represents-even";
  VerificationReport r = make_report(name, {{"nmax", nmax}, {"bound", bound}});
  std::vector<Int> ns = squarefree_two_square_sums(nmax, parity);
  auto rows = indexed_parallel(ns.size(), opt.threads, [&](std::size_t idx) -> json {
    Int n = ns[idx];
    SixteenN a = analyze_16n(n, opt);
    json row{{"n", n}};
    if (a.home_block < 0 || a.partition.blocks.size() != 2) {
      row["status"] = "inconclusive";
      row["blocks"] = a.partition.blocks.size();
      return row;
    }
    json misses = json::array(), hits = json::array();
    for (int ci : a.partition.blocks[a.home_block]) {
      if (!represents(a.table.classes[ci], n)) {
        misses.push_back({{"class", a.table.classes[ci].str()}, {"missing", n}});
      }
    }
    for (std::size_t b = 0; b < a.partition.blocks.size(); ++b) {
      if (static_cast<int>(b) == a.home_block) continue;
      for (int ci : a.partition.blocks[b]) {
        for (Int m : jones_pall_multipliers(n, bound)) {
          if (represents(a.table.classes[ci], n * m * m)) {
            hits.push_back({{"class", a.table.classes[ci].str()}, {"value", n * m * m}});
          }
        }
      }
    }
    row["status"] = (misses.empty() && hits.empty()) ? "ok" : "violated";
    if (!misses.empty()) row["home_block_misses"] = misses;
    if (!hits.empty()) row["other_block_hits"] = hits;
    return row;
  });
  for (auto& row : rows) {
    std::string s = row.at("status").get<std::string>();
    if (s == "violated") r.status = VerifyStatus::counterexample;
    if (s == "inconclusive" && r.status == VerifyStatus::verified)
      r.status = VerifyStatus::inconclusive;
    r.details.push_back(row);
  }
  finish(r, start);
  return r;
}

VerificationReport verify_chan_matrices(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int nmax = opt.nmax > 0 ? opt.nmax : 100;
  VerificationReport r = make_report("chan-matrices", {{"nmax", nmax}});
  Int cases = 0;
  for (Int u = 0; u * u <= nmax; ++u) {
    for (Int v = std::max<Int>(u, 1); u * u + v * v <= nmax; ++v) {
      Int n = u * u + v * v;
      if (gcd(u, v) != 1 || !is_squarefree(n)) continue;
      Mat3 g0 = TernaryForm::from_coefficients(1, 1, 16 * n, 0, 0, 0).gram();
      Mat3 f0 = TernaryForm::from_coefficients(1, 1, 16, 0, 0, 0).gram();
      Mat3 p = Mat3::from_columns({u, -v, 0}, {v, u, 0}, {0, 0, 1});
      Mat3 q = Mat3::from_columns({u, v, 0}, {-v, u, 0}, {0, 0, n});
      bool ok = p.transposed() * g0 * p == scale_gram(f0, n) &&
                q.transposed() * f0 * q == scale_gram(g0, n) && p.det() == n &&
                q.det() == n * n && p * q == scale_gram(Mat3::identity(), n) &&
                q * p == scale_gram(Mat3::identity(), n);
      if (!ok) {
        r.status = VerifyStatus::counterexample;
        r.details.push_back({{"u", u}, {"v", v}, {"n", n}, {"ok", false}});
      }
      ++cases;
    }
  }
  r.details.push_back({{"cases_checked", cases}});
  finish(r, start);
  return r;
}

VerificationReport verify_involution_16n(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int nmax = opt.nmax > 0 ? opt.nmax : 105;
  VerificationReport r = make_report("involution-16n", {{"nmax", nmax}, {"k", 4}});
  std::vector<Int> ns = squarefree_two_square_sums(nmax, 1);
  auto rows = indexed_parallel(ns.size(), opt.threads, [&](std::size_t idx) -> json {
    Int n = ns[idx];
    SixteenN a = analyze_16n(n, opt);
    json row{{"n", n}};
    if (a.home_block < 0 || a.partition.blocks.size() != 2) {
      row["status"] = "inconclusive";
      return row;
    }
    if (a.partition.blocks[0].size() != a.partition.blocks[1].size()) {
      row["status"] = "violated";
      row["reason"] = "unequal spinor block sizes";
      return row;
    }
    LocalGenus g = localize(a.table, a.partition);
    InvolutionReport rep = involution_scan(g.classes, g.blocks, 4);
    row["perfect_matching"] = rep.perfect_matching;
    row["crosses_blocks"] = rep.all_pairs_cross_blocks;
    row["classes"] = g.classes.size();
    row["status"] = (rep.perfect_matching && rep.all_pairs_cross_blocks) ? "ok" : "violated";
    return row;
  });
  for (auto& row : rows) {
    std::string s = row.at("status").get<std::string>();
    if (s == "violated") r.status = VerifyStatus::counterexample;
    if (s == "inconclusive" && r.status == VerifyStatus::verified)
      r.status = VerifyStatus::inconclusive;
    r.details.push_back(row);
  }
  finish(r, start);
  return r;
}

VerificationReport verify_involution_225n(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int nmax = opt.nmax > 0 ? opt.nmax : 30;
  std::string family = opt.family.empty() ? "a" : opt.family;
  if (family != "a" && family != "b") throw std::invalid_argument("family must be a or b");
  VerificationReport r = make_report("involution-225n", {{"nmax", nmax}, {"family", family}});

  // Eligible n: squarefree values of the binary form, prime to 15.
  std::set<Int> eligible;
  for (Int u = -nmax; u <= nmax; ++u) {
    for (Int v = -nmax; v <= nmax; ++v) {
      Int n = (family == "a") ? u * u + u * v + 4 * v * v : 2 * u * u + u * v + 2 * v * v;
      if (n >= 1 && n <= nmax && n % 3 != 0 && n % 5 != 0 && is_squarefree(n)) eligible.insert(n);
    }
  }
  std::vector<Int> ns(eligible.begin(), eligible.end());
  auto rows = indexed_parallel(ns.size(), opt.threads, [&](std::size_t idx) -> json {
    Int n = ns[idx];
    TernaryForm seed = (family == "a")
                           ? TernaryForm::from_coefficients(1, 4, 225 * n, 0, 0, 1)
                           : TernaryForm::from_coefficients(2, 2, 225 * n, 0, 0, 1);
    ClassTable table = table_for(discriminant(seed), opt);
    int gi = find_genus_index(table, seed);
    json row{{"n", n}, {"form", seed.str()}};
    if (gi < 0) {
      row["status"] = "inconclusive";
      return row;
    }
    SpinorPartition part = spinor_partition(table, gi);
    if (part.blocks.size() != 2 || part.blocks[0].size() != part.blocks[1].size()) {
      row["status"] = part.inconclusive ? "inconclusive" : "violated";
      row["blocks"] = part.blocks.size();
      return row;
    }
    LocalGenus g = localize(table, part);
    bool ok = true;
    for (Int k : {Int(9), Int(25)}) {
      InvolutionReport rep = involution_scan(g.classes, g.blocks, k);
      row["k" + std::to_string(k) + "_perfect"] = rep.perfect_matching;
      row["k" + std::to_string(k) + "_crosses"] = rep.all_pairs_cross_blocks;
      ok = ok && rep.perfect_matching && rep.all_pairs_cross_blocks;
    }
    row["status"] = ok ? "ok" : "violated";
    return row;
  });
  for (auto& row : rows) {
    std::string s = row.at("status").get<std::string>();
    if (s == "violated") r.status = VerifyStatus::counterexample;
    if (s == "inconclusive" && r.status == VerifyStatus::verified)
      r.status = VerifyStatus::inconclusive;
    r.details.push_back(row);
  }
  finish(r, start);
  return r;
}

// Labels the four blocks of gen<1,20,400n> by representation behavior:
// A represents both 5n and n, B only n, C only 5n, D neither.
std::map<char, int> label_400n_blocks(const ClassTable& table, const SpinorPartition& part,
                                      Int n) {
  std::map<char, int> labels;
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    bool rep5n = false, repn = false;
    for (int ci : part.blocks[b]) {
      if (represents(table.classes[ci], 5 * n)) rep5n = true;
      if (represents(table.classes[ci], n)) repn = true;
    }
    char label = rep5n ? (repn ? 'A' : 'C') : (repn ? 'B' : 'D');
    labels[label] = static_cast<int>(b);
  }
  return labels;
}

VerificationReport verify_involution_400n(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int n = opt.n > 0 ? opt.n : 29;
  VerificationReport r = make_report("involution-400n", {{"n", n}});

  TernaryForm seed = TernaryForm::from_coefficients(1, 20, 400 * n, 0, 0, 0);
  ClassTable table = table_for(discriminant(seed), opt);
  int gi = find_genus_index(table, seed);
  if (gi < 0) {
    r.status = VerifyStatus::inconclusive;
    r.details.push_back({{"error", "seed class not found"}});
    finish(r, start);
    return r;
  }

  // Negative control: for n represented by both binaries (such as 21) the
  // correspondence reaches both base forms and cannot respect spinor genus.
  bool both_binaries = false;
  {
    bool t1 = false, t2 = false;
    for (Int u = 0; u * u <= n; ++u) {
      for (Int v = 0; 20 * v * v <= n; ++v)
        if (u * u + 20 * v * v == n) t1 = true;
      for (Int v = 0; 5 * v * v <= n; ++v)
        if (4 * u * u + 5 * v * v == n) t2 = true;
    }
    both_binaries = t1 && t2;
  }

  if (both_binaries) {
    ClassTable base = table_for(32000, opt);
    int base_gi = find_genus_index(base, TernaryForm::from_coefficients(1, 20, 400, 0, 0, 0));
    SpinorPartition base_part = spinor_partition(base, base_gi);
    std::vector<TernaryForm> left, right;
    for (int ci : table.genera[gi]) left.push_back(table.classes[ci]);
    for (int ci : base.genera[base_gi]) right.push_back(base.classes[ci]);
    CorrespondenceGraph graph = correspondence_graph(left, right, n);

    int b1 = find_class(base, TernaryForm::from_coefficients(1, 20, 400, 0, 0, 0));
    int b2 = find_class(base, TernaryForm::from_coefficients(4, 5, 400, 0, 0, 0));
    int seed_class = find_class(table, seed);
    auto edge_between = [&](int lc, int rc) {
      int li = -1, ri = -1;
      for (std::size_t i = 0; i < left.size(); ++i)
        if (table.genera[gi][i] == lc) li = static_cast<int>(i);
      for (std::size_t i = 0; i < right.size(); ++i)
        if (base.genera[base_gi][i] == rc) ri = static_cast<int>(i);
      for (const auto& e : graph.edges)
        if (e.left_index == li && e.right_index == ri) return true;
      return false;
    };
    bool edge1 = edge_between(seed_class, b1);
    bool edge2 = edge_between(seed_class, b2);

    SpinorPartition left_part = spinor_partition(table, gi);
    bool respects = respects_spinor(graph, localize(table, left_part).blocks,
                                    localize(base, base_part).blocks);
    r.details.push_back({{"n", n},
                         {"edge_to_1_20_400", edge1},
                         {"edge_to_4_5_400", edge2},
                         {"respects_spinor", respects},
                         {"base_blocks", base_part.blocks.size()}});
    // The obstruction reproduced: both edges exist and respect fails.
    r.status = (edge1 && edge2 && !respects) ? VerifyStatus::counterexample
                                             : VerifyStatus::inconclusive;
    finish(r, start);
    return r;
  }

  SpinorPartition part = spinor_partition(table, gi);
  json row{{"n", n}, {"classes", part.genus.size()}, {"blocks", part.blocks.size()}};
  if (part.blocks.size() != 4) {
    row["status"] = "violated";
    r.status = part.inconclusive ? VerifyStatus::inconclusive : VerifyStatus::counterexample;
    r.details.push_back(row);
    finish(r, start);
    return r;
  }
  std::size_t size0 = part.blocks[0].size();
  bool equal_sizes = true;
  for (const auto& b : part.blocks) equal_sizes = equal_sizes && b.size() == size0;
  std::map<char, int> labels = label_400n_blocks(table, part, n);
  row["equal_sizes"] = equal_sizes;
  bool labeled = labels.size() == 4;
  row["labeled"] = labeled;
  if (!equal_sizes || !labeled) {
    row["status"] = "violated";
    r.status = VerifyStatus::counterexample;
    r.details.push_back(row);
    finish(r, start);
    return r;
  }

  LocalGenus g = localize(table, part);
  const std::vector<TernaryForm>& classes = g.classes;
  const std::vector<std::vector<int>>& blocks = g.blocks;
  std::vector<int> block_of(classes.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int i : blocks[b]) block_of[i] = static_cast<int>(b);

  // Multiplier 25: perfect involution pairing A<->C and B<->D.
  InvolutionReport k25 = involution_scan(classes, blocks, 25);
  bool k25_ok = k25.perfect_matching;
  if (k25_ok) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      int bi = block_of[i], bj = block_of[k25.partners[i][0]];
      bool ac = (bi == labels['A'] && bj == labels['C']) || (bi == labels['C'] && bj == labels['A']);
      bool bd = (bi == labels['B'] && bj == labels['D']) || (bi == labels['D'] && bj == labels['B']);
      if (!ac && !bd) k25_ok = false;
    }
  }
  row["k25_ok"] = k25_ok;

  // Multiplier 4: each class matches one in the opposite label and two in
  // each adjacent label (A<->D and B<->C are the single-partner pairs).
  InvolutionReport k4 = involution_scan(classes, blocks, 4);
  auto opposite = [&](int b) {
    if (b == labels['A']) return labels['D'];
    if (b == labels['D']) return labels['A'];
    if (b == labels['B']) return labels['C'];
    return labels['B'];
  };
  bool k4_ok = true;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::map<int, int> per_block;
    for (int j : k4.partners[i]) per_block[block_of[j]] += 1;
    int bi = block_of[i];
    if (per_block[bi] != 0 || per_block[opposite(bi)] != 1) k4_ok = false;
    for (int b = 0; b < 4; ++b) {
      if (b == bi || b == opposite(bi)) continue;
      if (per_block[b] != 2) k4_ok = false;
    }
  }
  row["k4_ok"] = k4_ok;
  row["status"] = (k25_ok && k4_ok) ? "ok" : "violated";
  if (!(k25_ok && k4_ok)) r.status = VerifyStatus::counterexample;
  r.details.push_back(row);
  finish(r, start);
  return r;
}

VerificationReport verify_respects_spinor(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int ratio = opt.deltaratio > 0 ? opt.deltaratio : 5;
  Int samples = opt.samples > 0 ? opt.samples : 3;
  if (!is_squarefree(ratio)) throw std::invalid_argument("deltaratio must be squarefree");
  VerificationReport r = make_report("respects-spinor", {{"deltaratio", ratio}, {"samples", samples}});
  Int found = 0;
  for (Int delta = 2; delta <= 2000 && found < samples; ++delta) {
    ClassTable small = table_for(delta, opt);
    if (small.classes.empty()) continue;
    ClassTable big = table_for(delta * ratio, opt);
    for (std::size_t gs = 0; gs < small.genera.size() && found < samples; ++gs) {
      SpinorPartition ps = spinor_partition(small, static_cast<int>(gs));
      if (ps.blocks.size() != 2) continue;
      for (std::size_t gb = 0; gb < big.genera.size() && found < samples; ++gb) {
        SpinorPartition pb = spinor_partition(big, static_cast<int>(gb));
        if (pb.blocks.size() != 2) continue;
        std::vector<TernaryForm> left, right;
        for (int ci : big.genera[gb]) left.push_back(big.classes[ci]);
        for (int ci : small.genera[gs]) right.push_back(small.classes[ci]);
        CorrespondenceGraph graph = correspondence_graph(left, right, ratio);
        if (graph.edges.empty()) continue;
        // Only full correspondences (every node covered) are sampled.
        std::set<int> lcov, rcov;
        for (const auto& e : graph.edges) {
          lcov.insert(e.left_index);
          rcov.insert(e.right_index);
        }
        if (lcov.size() != left.size() || rcov.size() != right.size()) continue;
        bool ok = respects_spinor(graph, localize(big, pb).blocks, localize(small, ps).blocks);
        r.details.push_back({{"delta", delta},
                             {"delta_big", delta * ratio},
                             {"left_classes", left.size()},
                             {"right_classes", right.size()},
                             {"respects", ok}});
        if (!ok) r.status = VerifyStatus::counterexample;
        ++found;
      }
    }
  }
  if (found == 0) r.status = VerifyStatus::inconclusive;
  finish(r, start);
  return r;
}

VerificationReport verify_no_splitting(const VerifyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Int bound = opt.bound > 0 ? opt.bound : 10000;
  VerificationReport r = make_report("no-splitting", {{"bound", bound}});

  auto scan_genus = [&](const TernaryForm& seed) {
    ClassTable table = table_for(discriminant(seed), opt);
    int gi = find_genus_index(table, seed);
    if (gi < 0) throw std::logic_error("seed class not found for " + seed.str());
    SpinorPartition part = spinor_partition(table, gi, bound);
    return std::make_pair(part, splitting_integer_scan(table, part, bound));
  };

  // gen<1,17,289> and gen<1,5,70,5,0,0>: no splitting integers at all.
  for (const char* text : {"1,17,289,0,0,0", "1,5,70,5,0,0"}) {
    auto [part, scan] = scan_genus(TernaryForm::parse(text));
    json row{{"genus_of", text},
             {"blocks", part.blocks.size()},
             {"splitting_integers_found", scan.size()}};
    if (!scan.empty()) {
      r.status = VerifyStatus::counterexample;
      row["first"] = scan.front();
    }
    if (part.blocks.size() < 2 && r.status == VerifyStatus::verified) {
      r.status = VerifyStatus::inconclusive;
      row["note"] = "partition inconclusive; scan vacuous";
    }
    r.details.push_back(row);
  }

  // gen<1,1,16>: exactly the odd squares.
  {
    auto [part, scan] = scan_genus(TernaryForm::parse("1,1,16,0,0,0"));
    std::vector<Int> expected;
    for (Int k = 1; k * k <= bound; k += 2) expected.push_back(k * k);
    bool ok = scan == expected;
    r.details.push_back({{"genus_of", "1,1,16,0,0,0"},
                         {"splitting_integers_found", scan.size()},
                         {"equals_odd_squares", ok}});
    if (!ok) r.status = VerifyStatus::counterexample;
  }
  finish(r, start);
  return r;
}

}  // namespace

const std::vector<std::string>& verification_task_names() {
  static const std::vector<std::string> names{
      "kaplansky-identity", "lemma1",          "repdiff",
      "genus-agreement",    "spinor-represents-odd", "spinor-represents-even",
      "chan-matrices",      "involution-16n",  "involution-225n",
      "involution-400n",    "respects-spinor", "no-splitting"};
  return names;
}

VerificationReport run_verification(const std::string& task, const VerifyOptions& options) {
  if (task == "kaplansky-identity") return verify_kaplansky_identity(options);
  if (task == "lemma1") return verify_lemma1(options);
  if (task == "repdiff") return verify_repdiff(options);
  if (task == "genus-agreement") return verify_genus_agreement(options);
  if (task == "spinor-represents-odd") return verify_spinor_represents(options, 1);
  if (task == "spinor-represents-even") return verify_spinor_represents(options, 2);
  if (task == "chan-matrices") return verify_chan_matrices(options);
  if (task == "involution-16n") return verify_involution_16n(options);
  if (task == "involution-225n") return verify_involution_225n(options);
  if (task == "involution-400n") return verify_involution_400n(options);
  if (task == "respects-spinor") return verify_respects_spinor(options);
  if (task == "no-splitting") return verify_no_splitting(options);
  throw std::invalid_argument("unknown verification task: " + task);
}

}  // namespace ternary
