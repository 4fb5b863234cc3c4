// SPDX-License-Identifier: Apache-2.0
//
// Ordered families of subspaces with declared parameters.
//
// A dual arc of order d with parameters (n0, n1, ..., n_{d+1}) is a set of
// n1-spaces of PG(n0, q) where any j <= d+1 members meet in an n_j-space
// and any d+2 members have empty meet. An arc is the dual notion: any j
// members span an n_j-space and any d+2 span everything.
//
// Each element carries a label. Constructions label elements 0..m-1 in
// construction order; removal keeps labels, and extension fills the gaps, so
// writing a family sorted by label reproduces the original file.

#ifndef DUALARC_FAMILY_HPP_
#define DUALARC_FAMILY_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dualarc/linalg.hpp"

namespace dualarc::arcs {

using linalg::Subspace;
using linalg::Vector;

enum class FamilyKind { kDualArc, kArc };

std::string to_string(FamilyKind kind);

class Family {
 public:
  // Throws if elements disagree on field or ambient space, if
  // params.size() != order + 2, if params[0] != ambient_dim, or if an
  // element's dimension differs from params[1].
  Family(FamilyKind kind, gf::FieldPtr field, int ambient_dim, int order, std::vector<int> params,
         std::vector<Subspace> elements, int source_dim = -1);
  Family(FamilyKind kind, gf::FieldPtr field, int ambient_dim, int order, std::vector<int> params,
         std::vector<Subspace> elements, std::vector<std::size_t> labels, int source_dim);

  FamilyKind kind() const noexcept { return kind_; }
  const gf::FieldPtr& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_->q(); }
  int ambient_dim() const noexcept { return ambient_dim_; }
  int order() const noexcept { return order_; }
  // (n0, n1, ..., n_{d+1}).
  const std::vector<int>& params() const noexcept { return params_; }
  int element_dim() const noexcept { return params_[1]; }
  // Projective dimension of the point set a construction started from, or
  // -1 when unknown.
  int source_dim() const noexcept { return source_dim_; }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Subspace>& elements() const noexcept { return elements_; }
  const Subspace& operator[](std::size_t i) const { return elements_.at(i); }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }

  // Strict monotonicity of the declared parameters: decreasing down to
  // n_{d+1} > -1 for dual arcs, increasing below n0 for arcs.
  bool params_well_formed() const;

  Family without(std::span<const std::size_t> indices) const;
  Family with_element(Subspace element, std::size_t label) const;
  // Same elements reordered by label.
  Family sorted_by_label() const;
  Family with_params(FamilyKind kind, std::vector<int> params, std::vector<Subspace> elements) const;

 private:
  FamilyKind kind_;
  gf::FieldPtr field_;
  int ambient_dim_;
  int order_;
  std::vector<int> params_;
  std::vector<Subspace> elements_;
  std::vector<std::size_t> labels_;
  int source_dim_;
};

// (q^{n+1} - 1)/(q - 1): the size of a full order-1 family over PG(n, q).
std::uint64_t full_family_size(std::uint64_t q, int n);

// File layout:
//   <q> <n> <d> <count>
//   kind=<dual|arc> params=<n0> <n1> ... <n_{d+1}>
//   element <label>
//   <subspace block>
//   ...
// where n is the source dimension (-1 when unknown).
void write_family(std::ostream& os, const Family& family);
std::string family_to_text(const Family& family);
Family read_family(std::istream& is);

}  // namespace dualarc::arcs

#endif  // DUALARC_FAMILY_HPP_
