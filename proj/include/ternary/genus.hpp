#pragma once

/* Genus-level structure: operational genus symbols, genus equality,
 * enumeration of all classes of a discriminant, evidence-based spinor
 * partitioning, weighted representation measures and splitting-integer
 * scans, plus the on-disk class-table cache. */

#include <optional>
#include <string>

#include "ternary/reduce.hpp"

namespace ternary {

inline constexpr const char* kToolVersion = "0.1.0";

struct symbol_undefined_error : std::runtime_error {
  explicit symbol_undefined_error(const std::string& what) : std::runtime_error(what) {}
};

// Invariant dossier with operational genus symbols: at each odd prime
// p | m, at 4 if 16 | m, at 8 if 32 | m, as the common quadratic character
// of sampled primitively represented values (and likewise for the
// reciprocal with divisor mu). Inconsistent samples raise
// symbol_undefined_error.
GenusInvariants genus_symbols(const TernaryForm& f);

// True iff discriminant, divisor, level, reciprocal divisor and the full
// symbol collections agree. When true, a represented-set comparison up to
// 50 appends a diagnostic note on mismatch (data only, never the result).
bool same_genus(const TernaryForm& f, const TernaryForm& g,
                std::vector<std::string>* diagnostics = nullptr);

struct ClassTable {
  Int delta = 0;
  std::vector<TernaryForm> classes;      // canonical, pairwise inequivalent
  std::vector<Int> aut_counts;
  std::vector<std::vector<int>> genera;  // partition of class indices
  std::string provenance;                // enumeration bounds used
};

// All equivalence classes of primitive positive ternary forms of the given
// discriminant, grouped into genera. slack > 1 inflates the loop bounds
// (used by the stability tests).
ClassTable enumerate_discriminant(Int delta, int slack = 1);

// Squarefree divisors of 2*delta, ascending.
std::vector<Int> spinor_exception_candidates(Int delta);

struct SpinorPartition {
  std::vector<int> genus;                 // class indices into the table
  std::vector<std::vector<int>> blocks;   // partition of `genus`

  struct ExceptionRow {
    Int t;
    Int probe;                    // the represented value tested, t*m^2
    std::vector<bool> represents; // aligned with `genus`
  };
  std::vector<ExceptionRow> exceptional_evidence;

  struct SplittingRow {
    Int j;
    std::vector<Rational> measures;  // aligned with blocks
  };
  std::vector<SplittingRow> splitting_evidence;

  bool inconclusive = false;
};

// Evidence-based partition of one genus into candidate spinor genera:
// boolean represents-t*m^2 rows validated by equal block masses, refined
// by weighted-measure bipartitions when the boolean probes are trivial.
// A single block with inconclusive=true means no separation was found.
SpinorPartition spinor_partition(const ClassTable& table, int genus_index,
                                 Int probe_bound = 10000);

// Siegel-style weighted count: sum of rep_count(form, j)/aut over classes.
Rational weighted_measure(const std::vector<std::pair<TernaryForm, Int>>& classes, Int j);

// All j <= bound at which the blocks' weighted measures disagree.
std::vector<Int> splitting_integer_scan(const ClassTable& table, const SpinorPartition& partition,
                                        Int bound);

// Class-table cache: one JSON document per discriminant in `dir`, file
// name "<delta>.json". A tool_version mismatch reads as absent.
void save_class_table(const ClassTable& table, const std::string& dir);
std::optional<ClassTable> load_class_table(Int delta, const std::string& dir);
ClassTable load_or_enumerate(Int delta, const std::string& dir);

// Index of the class equivalent to f, or -1.
int find_class(const ClassTable& table, const TernaryForm& f);
// Index of the genus block containing f's class, or -1.
int find_genus_index(const ClassTable& table, const TernaryForm& f);

}  // namespace ternary
