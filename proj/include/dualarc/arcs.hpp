// SPDX-License-Identifier: Apache-2.0
//
// Verification, dualization, order-1 structure diagnostics and completion of
// deficient dual arcs.

#ifndef DUALARC_ARCS_HPP_
#define DUALARC_ARCS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualarc/family.hpp"

namespace dualarc::arcs {

// ---------------------------------------------------------------- verify

enum class VerifyMode { kExhaustive, kSampled };

inline constexpr std::uint64_t kDefaultVerifySeed = 20240607;

struct VerifyOptions {
  VerifyMode mode = VerifyMode::kExhaustive;
  std::size_t samples = 500;  // per subset size, sampled mode only
  std::uint64_t seed = kDefaultVerifySeed;
  std::size_t max_listed = 16;
};

struct Failure {
  std::vector<std::size_t> subset;  // positions in the family
  int expected;
  int actual;
};

struct VerificationReport {
  FamilyKind kind = FamilyKind::kDualArc;
  VerifyMode mode = VerifyMode::kExhaustive;
  std::uint64_t seed = 0;
  std::size_t samples = 0;

  bool axioms_hold = true;
  bool regular = true;
  // Span of all elements for dual arcs, meet of all elements for arcs.
  int span_dim = -1;
  int meet_dim = -1;
  std::size_t subsets_checked = 0;

  // Axiom failures only; capped at VerifyOptions::max_listed.
  std::vector<Failure> failures;
  std::size_t failure_count = 0;
  // Subsets whose regularity condition fails, same cap.
  std::vector<Failure> regularity_failures;
  std::size_t regularity_failure_count = 0;
};

VerificationReport verify(const Family& family, const VerifyOptions& options = {});

std::string to_text(const VerificationReport& report);
// One key=value per line.
std::string to_key_values(const VerificationReport& report);

// Elementwise perp, parameters (n0, N-1-n1, ..., N-1-n_{d+1}), kind flipped.
Family dualize(const Family& family);

// l-dimensional dual hyperoval axioms: (q^{l+1}-1)/(q-1) + 1 elements,
// pairwise meeting in points, triples skew, spanning.
struct HyperovalReport {
  bool size_ok = false;
  bool pairs_meet_in_points = false;
  bool triples_skew = false;
  bool spanning = false;
  bool holds() const { return size_ok && pairs_meet_in_points && triples_skew && spanning; }
};
HyperovalReport check_dual_hyperoval(const Family& family);

// ------------------------------------------------------ order-1 structure

// Hypotheses for completing a d = 1 family with deficiency delta.
struct HypothesesReport {
  std::uint64_t expected_size = 0;
  bool size_matches = false;
  bool ambient_matches = false;        // N = n(n+3)/2
  bool pairs_meet_in_points = false;   // (1)
  bool triples_skew = false;           // (2)
  bool spanning = false;               // (3)
  bool span_dimensions = false;        // (4)
  bool q_even = false;
  bool big_pair_span = false;          // (5), vacuously true for q odd
  bool delta_bound = false;            // 2 delta <= q-7 (odd), q-8 (even)
  std::vector<int> span_dims_seen;     // distinct dimensions met in (4)
  std::vector<int> bad_span_dims;
  bool all_hold() const {
    return size_matches && ambient_matches && pairs_meet_in_points && triples_skew && spanning &&
           span_dimensions && big_pair_span && delta_bound;
  }
};

// Throws std::invalid_argument unless d = 1 and the family is a dual arc.
HypothesesReport verify_t_d1_hypotheses(const Family& family, int delta);
std::string to_text(const HypothesesReport& report);

// Thrown when a point lies in three or more elements.
class AxiomViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ContactPoint {
  Vector point;          // canonical representative
  int count;             // 1; points on no element are not listed
  std::size_t element;   // position of the covering element
};

// Points of the union of the elements lying in exactly one element, sorted
// by coordinates.
std::vector<ContactPoint> contact_points(const Family& family);

enum class SpanClass { kSmall, kPair, kBig };
std::string to_string(SpanClass kind);

struct TwoNSpaceClass {
  Subspace span;
  std::vector<std::size_t> members;  // positions, ascending
  SpanClass kind = SpanClass::kPair;
  // Big classes only.
  std::optional<Subspace> special_plane;
  bool members_meet_plane_in_lines = false;
  bool outsiders_avoid_plane = false;
  int deficiency = 0;  // q + 1 - members
};

// Thrown when a pair span holds more than 2 but fewer than q - delta
// elements.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Distinct spans of two elements, in order of their first pair.
std::vector<TwoNSpaceClass> classify_pair_spans(const Family& family, int delta);

// The big classes through one element and the lines their special planes
// cut on it.
struct ElementStar {
  std::size_t element = 0;
  std::vector<std::size_t> classes;  // indices into the classification
  std::vector<Subspace> lines;
  Subspace common;                   // meet of the lines
  int deficiency_sum = 0;
};
ElementStar element_star(const Family& family, const std::vector<TwoNSpaceClass>& classes, std::size_t element);

// ------------------------------------------------------------- extension

class ExtensionError : public std::runtime_error {
 public:
  ExtensionError(const std::string& what, std::size_t round, std::size_t nodes)
      : std::runtime_error(what), round_(round), nodes_(nodes) {}
  std::size_t round() const noexcept { return round_; }
  std::size_t nodes() const noexcept { return nodes_; }

 private:
  std::size_t round_;
  std::size_t nodes_;
};

struct ExtensionStats {
  std::size_t nodes = 0;  // candidate subspaces examined
  std::vector<std::size_t> added_labels;
};

// Adds delta elements built from contact points, one per round. New elements
// take the smallest unused labels; the result is sorted by label. Throws
// std::invalid_argument on a size mismatch and ExtensionError when a round
// finds nothing.
Family extend_deficient(const Family& family, int delta, ExtensionStats* stats = nullptr);

}  // namespace dualarc::arcs

#endif  // DUALARC_ARCS_HPP_
