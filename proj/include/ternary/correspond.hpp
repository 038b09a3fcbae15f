#pragma once

/* Multiple-representation relations between forms: P^t F P = k G searches,
 * mutual (Chan) pairs and genus-correspondence graphs, the ascent/descent
 * coefficient maps through their canonical shapes, and involution scans on
 * a genus. */

#include "ternary/genus.hpp"

namespace ternary {

struct not_isotropic_error : std::runtime_error {
  explicit not_isotropic_error(const std::string& what) : std::runtime_error(what) {}
};

struct search_exhausted_error : std::runtime_error {
  explicit search_exhausted_error(const std::string& what) : std::runtime_error(what) {}
};

// Witness that source represents k*target: P^t Gram(source) P = k Gram(target),
// re-verified at construction.
struct RepMatrix {
  Mat3 P;
  TernaryForm source;
  TernaryForm target;
  Int k;

  static RepMatrix checked(const Mat3& p, const TernaryForm& source, const TernaryForm& target,
                           Int k);
};

// Exhaustive search over images of the reduced target basis; absent iff no
// integral P exists.
std::optional<RepMatrix> represents_multiple(const TernaryForm& f, const TernaryForm& g, Int k);

// All witnesses, up to `limit`.
std::vector<RepMatrix> all_representation_witnesses(const TernaryForm& f, const TernaryForm& g,
                                                    Int k, std::size_t limit = 64);

struct ChanPair {
  RepMatrix forward;   // f represents k*g
  RepMatrix backward;  // g represents k*f
  bool product_is_k_identity;  // diagnostic: P*Q = +-k*I for the found pair
};

// Both directions of a mutual k-representation. The discriminant ratio
// must be integral one way or the other.
std::optional<ChanPair> chan_pair(const TernaryForm& f, const TernaryForm& g, Int k);

struct CorrespondenceGraph {
  std::vector<TernaryForm> left;
  std::vector<TernaryForm> right;
  Int k;
  struct Edge {
    int left_index;
    int right_index;
    RepMatrix forward;
    RepMatrix backward;
  };
  std::vector<Edge> edges;
};

CorrespondenceGraph correspondence_graph(const std::vector<TernaryForm>& left,
                                         const std::vector<TernaryForm>& right, Int k);

// True iff no block on one side connects by edges to two distinct blocks
// on the other side. Blocks index into the graph's node lists and must
// cover them.
bool respects_spinor(const CorrespondenceGraph& graph,
                     const std::vector<std::vector<int>>& left_blocks,
                     const std::vector<std::vector<int>>& right_blocks);

// Equivalent form with p | a', p | c', s' not divisible by p, built by the
// three steps: a primitive vector of value divisible by p as third basis
// vector, a swap making s nonzero mod p, and a shear. Requires odd p not
// dividing the discriminant.
std::pair<TernaryForm, Mat3> ascent_canonical_shape(const TernaryForm& f, Int p);

// <pa, pb, c/p, r, s, pt> applied to the ascent shape; discriminant p*delta.
TernaryForm ascend(const TernaryForm& f, Int p);

// Equivalent form with p^2 | a', p | b', p | t', s' nonzero mod p.
// Requires p || delta and isotropy at p.
std::pair<TernaryForm, Mat3> descent_canonical_shape(const TernaryForm& g, Int p);

// <a/p, b/p, pc, r, s, t/p> applied to the descent shape; discriminant delta/p.
TernaryForm descend(const TernaryForm& g, Int p);

// Canonical forms of every descend output over all qualifying vectors
// within the search bound, deduplicated.
std::vector<TernaryForm> descend_all_witnesses(const TernaryForm& g, Int p);

struct InvolutionReport {
  Int k;
  std::vector<std::vector<int>> partners;  // per class, indices of g != f with a chan pair
  bool perfect_matching;                   // every class exactly one partner, symmetric
  bool all_pairs_cross_blocks;
  std::vector<std::vector<Int>> block_pair_counts;  // ordered block-to-block edge counts
};

InvolutionReport involution_scan(const std::vector<TernaryForm>& classes,
                                 const std::vector<std::vector<int>>& blocks, Int k);

}  // namespace ternary
