#include "ternary/genus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

namespace ternary {

namespace {

// Distinct values of primitively represented numbers, ascending, growing
// the enumeration bound until at least `want` qualify under `admits`.
template <typename Pred>
std::vector<Int> sample_primitive_values(const TernaryForm& f, int want, Pred&& admits) {
  Int bound = 2 * std::max({f.a(), f.b(), f.c()}) + 16;
  for (int round = 0; round < 24; ++round) {
    std::set<Int> values;
    for_each_vector_up_to(f, bound, [&](const Vec3& v, Int value) {
      if (value > 0 && is_primitive_vector(v) && admits(value)) values.insert(value);
    });
    if (static_cast<int>(values.size()) >= want) {
      return std::vector<Int>(values.begin(), values.end());
    }
    bound *= 2;
  }
  throw std::logic_error("could not sample enough primitively represented values");
}

std::vector<GenusSymbol> compute_symbols(const TernaryForm& f, Int divisor) {
  std::vector<GenusSymbol> symbols;
  std::vector<Int> places;
  for (const PrimePower& pp : factorize(divisor).factors) {
    if (pp.prime % 2 == 1) places.push_back(pp.prime);
  }
  if (divisor % 16 == 0) places.push_back(4);
  if (divisor % 32 == 0) places.push_back(8);

  for (Int place : places) {
    std::vector<Int> samples;
    if (place == 4 || place == 8) {
      samples = sample_primitive_values(f, 8, [](Int w) { return w % 2 == 1; });
    } else {
      samples = sample_primitive_values(f, 8, [place](Int w) { return w % place != 0; });
    }
    int chi = 0;
    for (Int w : samples) {
      int c;
      if (place == 4) {
        c = (w % 4 == 1) ? 1 : -1;
      } else if (place == 8) {
        Int m8 = w % 8;
        c = (m8 == 1 || m8 == 7) ? 1 : -1;
      } else {
        c = jacobi_symbol(w, place);
      }
      if (chi == 0) {
        chi = c;
      } else if (chi != c) {
        throw symbol_undefined_error("inconsistent characters sampled at place " +
                                     std::to_string(place) + " for form " + f.str());
      }
    }
    symbols.push_back({place, chi});
  }
  std::sort(symbols.begin(), symbols.end(),
            [](const GenusSymbol& x, const GenusSymbol& y) { return x.place < y.place; });
  return symbols;
}

bool symbols_equal(const std::vector<GenusSymbol>& x, const std::vector<GenusSymbol>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].place != y[i].place || x[i].value != y[i].value) return false;
  }
  return true;
}

}  // namespace

GenusInvariants genus_symbols(const TernaryForm& f) {
  auto [phi, m] = reciprocal_and_divisor(f);
  auto [back, mu] = reciprocal_and_divisor(phi);
  if (!(back == f)) throw std::logic_error("reciprocal involution failed");
  GenusInvariants inv{discriminant(f), m, level(f), phi, mu, {}, {}};
  inv.symbols_f = compute_symbols(f, m);
  inv.symbols_phi = compute_symbols(phi, mu);
  return inv;
}

bool same_genus(const TernaryForm& f, const TernaryForm& g,
                std::vector<std::string>* diagnostics) {
  if (discriminant(f) != discriminant(g)) return false;
  GenusInvariants a = genus_symbols(f);
  GenusInvariants b = genus_symbols(g);
  bool equal = a.divisor_m == b.divisor_m && a.level_N == b.level_N &&
               a.reciprocal_divisor_mu == b.reciprocal_divisor_mu &&
               symbols_equal(a.symbols_f, b.symbols_f) &&
               symbols_equal(a.symbols_phi, b.symbols_phi);
  if (equal && diagnostics) {
    std::vector<Int> hf = rep_histogram(f, 50), hg = rep_histogram(g, 50);
    std::vector<Int> vf, vg;
    for (Int j = 0; j <= 50; ++j) {
      if (hf[j] > 0) vf.push_back(j);
      if (hg[j] > 0) vg.push_back(j);
    }
    if (vf != vg) {
      diagnostics->push_back("same-genus forms " + f.str() + " and " + g.str() +
                             " differ in represented values <= 50 (normal for a "
                             "multi-class genus)");
    }
  }
  return equal;
}

namespace {

Int icbrt_ceil(Int n) {
  Int x = 0;
  while (x * x * x < n) ++x;
  return x;
}

std::string genus_key(const GenusInvariants& inv) {
  std::string key = std::to_string(inv.divisor_m) + "|" + std::to_string(inv.level_N) + "|" +
                    std::to_string(inv.reciprocal_divisor_mu) + "|";
  for (const GenusSymbol& s : inv.symbols_f)
    key += "f" + std::to_string(s.place) + ":" + std::to_string(s.value) + ";";
  key += "|";
  for (const GenusSymbol& s : inv.symbols_phi)
    key += "p" + std::to_string(s.place) + ":" + std::to_string(s.value) + ";";
  return key;
}

}  // namespace

ClassTable enumerate_discriminant(Int delta, int slack) {
  if (delta < 1) throw std::invalid_argument("delta must be positive");
  if (slack < 1) throw std::invalid_argument("slack must be >= 1");

  // Reduced forms satisfy a <= b <= c, |t| <= a, |s| <= a, |r| <= b and
  // abc <= delta/2; every sign class of (r,s,t) is reachable with
  // s, t >= 0, so those two loops run over nonnegative values only.
  const Int amax = icbrt_ceil((delta + 1) / 2) * slack;
  std::set<Sextuple> found;  // canonical sextuples

  for (Int a = 1; a <= amax; ++a) {
    const Int bmax = isqrt(delta / (2 * a)) * slack + 1;
    for (Int t = 0; t <= a; ++t) {
      for (Int s = 0; s <= a; ++s) {
        for (Int b = a; b <= bmax; ++b) {
          const Int den = 4 * a * b - t * t;
          // num(r) = delta + a r^2 + b s^2 - r s t; incremental residues
          // avoid a division in the r loop.
          const Int base = checked_narrow(Wide(delta) + Wide(b) * s * s);
          Int r = -b;
          Wide num = Wide(base) + Wide(a) * r * r - Wide(r) * s * t;
          Int num_mod = static_cast<Int>(((num % den) + den) % den);
          // step(r) = num(r+1)-num(r) = a(2r+1) - s t
          Int step_mod = static_cast<Int>((((Wide(a) * (2 * r + 1) - Wide(s) * t) % den) + den) % den);
          const Int step_step = (2 * a) % den;
          for (;; ++r) {
            if (num_mod == 0) {
              const Wide cnum = Wide(base) + Wide(a) * r * r - Wide(r) * s * t;
              const Wide c = cnum / den;
              if (c >= b && c <= std::numeric_limits<Int>::max() / 4) {
                Sextuple q{a, b, static_cast<Int>(c), r, s, t};
                if (is_primitive(q) && is_positive_definite(q) && discriminant(q) == delta) {
                  Reduction red = reduce(TernaryForm::from_sextuple(q));
                  found.insert(red.canonical.coefficients());
                }
              }
            }
            if (r == b) break;
            num_mod += step_mod;
            if (num_mod >= den) num_mod -= den;
            step_mod += step_step;
            if (step_mod >= den) step_mod -= den;
          }
        }
      }
    }
  }

  ClassTable table;
  table.delta = delta;
  table.provenance = "a<=" + std::to_string(amax) + ", 0<=s,t<=a, a<=b<=sqrt(delta/2a), |r|<=b, slack=" +
                     std::to_string(slack);
  for (const Sextuple& q : found) table.classes.push_back(TernaryForm::from_sextuple(q));
  table.aut_counts.reserve(table.classes.size());
  for (const TernaryForm& f : table.classes) {
    Int aut = static_cast<Int>(automorphisms(f).size());
    // the holohedry orders; anything else means a broken search
    if (aut != 2 && aut != 4 && aut != 8 && aut != 12 && aut != 16 && aut != 24 && aut != 48) {
      throw std::logic_error("automorphism count " + std::to_string(aut) + " for " + f.str());
    }
    table.aut_counts.push_back(aut);
  }

  // Group into genera by the invariant key.
  std::map<std::string, std::vector<int>> groups;
  for (std::size_t i = 0; i < table.classes.size(); ++i) {
    groups[genus_key(genus_symbols(table.classes[i]))].push_back(static_cast<int>(i));
  }
  std::vector<std::vector<int>> genera;
  for (auto& [key, block] : groups) genera.push_back(block);
  std::sort(genera.begin(), genera.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  table.genera = genera;
  return table;
}

std::vector<Int> spinor_exception_candidates(Int delta) {
  if (delta < 1) throw std::invalid_argument("delta must be positive");
  return squarefree_divisors(2 * delta);
}

Rational weighted_measure(const std::vector<std::pair<TernaryForm, Int>>& classes, Int j) {
  Rational total(0);
  for (const auto& [form, aut] : classes) {
    if (aut <= 0) throw std::invalid_argument("aut counts must be positive");
    total = total + Rational(rep_count(form, j), aut);
  }
  return total;
}

namespace {

using Blocks = std::vector<std::vector<int>>;

Rational side_mass(const std::vector<int>& side, const ClassTable& table) {
  Rational mass(0);
  for (int i : side) mass = mass + Rational(1, table.aut_counts[i]);
  return mass;
}

bool equal_masses(const Blocks& blocks, const ClassTable& table) {
  if (blocks.empty()) return false;
  Rational first = side_mass(blocks[0], table);
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (!(side_mass(blocks[i], table) == first)) return false;
  }
  return true;
}

bool power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// Common refinement of a partition with a two-sided split.
Blocks refine(const Blocks& blocks, const std::vector<bool>& in_side,
              const std::vector<int>& genus) {
  std::map<int, int> side_of;
  for (std::size_t i = 0; i < genus.size(); ++i) side_of[genus[i]] = in_side[i] ? 1 : 0;
  Blocks out;
  for (const auto& block : blocks) {
    std::vector<int> yes, no;
    for (int i : block) (side_of[i] ? yes : no).push_back(i);
    if (!yes.empty()) out.push_back(yes);
    if (!no.empty()) out.push_back(no);
  }
  return out;
}

}  // namespace

SpinorPartition spinor_partition(const ClassTable& table, int genus_index, Int probe_bound) {
  if (genus_index < 0 || genus_index >= static_cast<int>(table.genera.size())) {
    throw std::invalid_argument("genus index out of range");
  }
  SpinorPartition part;
  part.genus = table.genera[genus_index];
  part.blocks = {part.genus};
  const std::size_t k = part.genus.size();
  if (k <= 1) return part;

  const std::vector<Int> multipliers{1, 2, 3, 4, 5, 7};
  const std::vector<Int> candidates = spinor_exception_candidates(table.delta);

  // Weighted measures over a small window back every acceptance decision:
  // spinor genera have equal mass, and their measures can disagree only in
  // the square classes of divisors of 2*delta (where the splitting
  // integers live). Any candidate split violating that is evidence noise,
  // not spinor structure.
  const Int measure_window = std::min<Int>(probe_bound, 300);
  std::vector<std::vector<Int>> hist(k);
  for (std::size_t i = 0; i < k; ++i)
    hist[i] = rep_histogram(table.classes[part.genus[i]], measure_window);
  Int aut_lcm = 1;
  for (std::size_t i = 0; i < k; ++i)
    aut_lcm = std::lcm(aut_lcm, table.aut_counts[part.genus[i]]);
  auto allowed_split = [&](Int j) {
    Int core = j;
    for (Int p = 2; p * p <= core; p = (p == 2) ? 3 : p + 2) {
      while (core % (p * p) == 0) core /= p * p;
    }
    return (2 * table.delta) % core == 0;
  };
  auto measures_compatible = [&](const Blocks& blocks) {
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < k; ++i) pos[part.genus[i]] = i;
    for (Int j = 1; j <= measure_window; ++j) {
      if (allowed_split(j)) continue;
      Wide first = 0;
      bool have_first = false;
      for (const auto& block : blocks) {
        Wide sum = 0;
        for (int ci : block) sum += Wide(hist[pos[ci]][j]) * (aut_lcm / table.aut_counts[ci]);
        if (!have_first) {
          first = sum;
          have_first = true;
        } else if (sum != first) {
          return false;
        }
      }
    }
    return true;
  };

  // Exceptional-integer probes: a represents-t*m^2 row is admitted as
  // evidence only if the refined partition keeps a power-of-two block
  // count, equal block masses, and measure compatibility. m = 1 rows go
  // first.
  for (Int m : multipliers) {
    for (Int t : candidates) {
      const Int probe = t * m * m;
      if (probe > probe_bound) continue;
      std::vector<bool> row(k);
      bool any = false, all = true;
      for (std::size_t i = 0; i < k; ++i) {
        row[i] = represents(table.classes[part.genus[i]], probe);
        any = any || row[i];
        all = all && row[i];
      }
      if (!any || all) continue;
      Blocks refined = refine(part.blocks, row, part.genus);
      if (refined.size() == part.blocks.size()) {
        // Row already constant on blocks: record m=1 corroboration only.
        if (m == 1) part.exceptional_evidence.push_back({t, probe, row});
        continue;
      }
      if (!power_of_two(refined.size()) || !equal_masses(refined, table)) continue;
      if (!measures_compatible(refined)) continue;
      part.blocks = refined;
      part.exceptional_evidence.push_back({t, probe, row});
    }
  }

  // Measure-based bipartition when the boolean probes found nothing: the
  // unique equal-mass measure-compatible bipartition, if there is exactly
  // one.
  if (part.blocks.size() == 1 && k >= 2 && k <= 16) {
    std::vector<std::vector<bool>> compatible;
    for (std::size_t mask = 1; mask < (std::size_t(1) << (k - 1)); ++mask) {
      std::vector<bool> side(k);
      for (std::size_t i = 0; i < k; ++i) side[i] = (i == 0) ? true : ((mask >> (i - 1)) & 1);
      Blocks split = refine(part.blocks, side, part.genus);
      if (split.size() != 2 || !equal_masses(split, table)) continue;
      if (!measures_compatible(split)) continue;
      compatible.push_back(side);
    }
    if (compatible.size() == 1) {
      part.blocks = refine(part.blocks, compatible[0], part.genus);
    }
  }

  part.inconclusive = part.blocks.size() == 1;

  // Splitting-integer evidence over the measure window for the final
  // partition.
  if (part.blocks.size() > 1) {
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < k; ++i) pos[part.genus[i]] = i;
    for (Int j = 1; j <= measure_window; ++j) {
      std::vector<Rational> measures;
      for (const auto& block : part.blocks) {
        Rational m(0);
        for (int ci : block) m = m + Rational(hist[pos[ci]][j], table.aut_counts[ci]);
        measures.push_back(m);
      }
      bool differ = false;
      for (std::size_t bi = 1; bi < measures.size(); ++bi) {
        if (!(measures[bi] == measures[0])) differ = true;
      }
      if (differ) part.splitting_evidence.push_back({j, measures});
    }
  }
  return part;
}

std::vector<Int> splitting_integer_scan(const ClassTable& table, const SpinorPartition& partition,
                                        Int bound) {
  std::vector<Int> out;
  if (partition.blocks.size() < 2) return out;
  std::vector<std::vector<Int>> block_scaled(partition.blocks.size());
  // Common denominator over all involved classes keeps the comparison in
  // integers.
  Int aut_lcm = 1;
  for (const auto& block : partition.blocks)
    for (int ci : block) aut_lcm = std::lcm(aut_lcm, table.aut_counts[ci]);
  for (std::size_t bi = 0; bi < partition.blocks.size(); ++bi) {
    std::vector<Int> acc(bound + 1, 0);
    for (int ci : partition.blocks[bi]) {
      std::vector<Int> h = rep_histogram(table.classes[ci], bound);
      Int w = aut_lcm / table.aut_counts[ci];
      for (Int j = 0; j <= bound; ++j) acc[j] += h[j] * w;
    }
    block_scaled[bi] = std::move(acc);
  }
  for (Int j = 1; j <= bound; ++j) {
    for (std::size_t bi = 1; bi < block_scaled.size(); ++bi) {
      if (block_scaled[bi][j] != block_scaled[0][j]) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

namespace {

std::string table_path(Int delta, const std::string& dir) {
  return dir + "/" + std::to_string(delta) + ".json";
}

}  // namespace

void save_class_table(const ClassTable& table, const std::string& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json doc;
  doc["delta"] = table.delta;
  nlohmann::json classes = nlohmann::json::array();
  for (const TernaryForm& f : table.classes) classes.push_back(f.coefficients());
  doc["classes"] = classes;
  doc["aut_counts"] = table.aut_counts;
  doc["genera"] = table.genera;
  doc["tool_version"] = kToolVersion;
  std::ofstream out(table_path(table.delta, dir));
  if (!out) throw std::runtime_error("cannot write cache file in " + dir);
  out << doc.dump(1) << "\n";
}

std::optional<ClassTable> load_class_table(Int delta, const std::string& dir) {
  std::ifstream in(table_path(delta, dir));
  if (!in) return std::nullopt;
  nlohmann::json doc;
  try {
    in >> doc;
    if (doc.at("tool_version").get<std::string>() != kToolVersion) return std::nullopt;
    ClassTable table;
    table.delta = doc.at("delta").get<Int>();
    if (table.delta != delta) return std::nullopt;
    for (const auto& arr : doc.at("classes")) {
      Sextuple q;
      for (int i = 0; i < 6; ++i) q[i] = arr.at(i).get<Int>();
      table.classes.push_back(TernaryForm::from_sextuple(q));
    }
    table.aut_counts = doc.at("aut_counts").get<std::vector<Int>>();
    table.genera = doc.at("genera").get<std::vector<std::vector<int>>>();
    table.provenance = "cache";
    return table;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

ClassTable load_or_enumerate(Int delta, const std::string& dir) {
  if (auto cached = load_class_table(delta, dir)) return *cached;
  ClassTable table = enumerate_discriminant(delta);
  save_class_table(table, dir);
  return table;
}

int find_class(const ClassTable& table, const TernaryForm& f) {
  TernaryForm canonical = reduce(f).canonical;
  for (std::size_t i = 0; i < table.classes.size(); ++i) {
    if (table.classes[i] == canonical) return static_cast<int>(i);
  }
  return -1;
}

int find_genus_index(const ClassTable& table, const TernaryForm& f) {
  int ci = find_class(table, f);
  if (ci < 0) return -1;
  for (std::size_t gi = 0; gi < table.genera.size(); ++gi) {
    for (int i : table.genera[gi]) {
      if (i == ci) return static_cast<int>(gi);
    }
  }
  return -1;
}

}  // namespace ternary
