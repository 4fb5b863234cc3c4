// SPDX-License-Identifier: Apache-2.0

#include "dualarc/family.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dualarc::arcs {

std::string to_string(FamilyKind kind) { return kind == FamilyKind::kDualArc ? "dual" : "arc"; }

Family::Family(FamilyKind kind, gf::FieldPtr field, int ambient_dim, int order, std::vector<int> params,
               std::vector<Subspace> elements, int source_dim)
    : Family(kind, field, ambient_dim, order, std::move(params), elements,
             [&] {
               std::vector<std::size_t> l(elements.size());
               std::iota(l.begin(), l.end(), std::size_t{0});
               return l;
             }(),
             source_dim) {}

Family::Family(FamilyKind kind, gf::FieldPtr field, int ambient_dim, int order, std::vector<int> params,
               std::vector<Subspace> elements, std::vector<std::size_t> labels, int source_dim)
    : kind_(kind),
      field_(std::move(field)),
      ambient_dim_(ambient_dim),
      order_(order),
      params_(std::move(params)),
      elements_(std::move(elements)),
      labels_(std::move(labels)),
      source_dim_(source_dim) {
  if (!field_) throw std::invalid_argument("family without a field");
  if (order_ < 0) throw std::invalid_argument("order must be non-negative");
  if (params_.size() != static_cast<std::size_t>(order_) + 2) {
    throw std::invalid_argument("expected " + std::to_string(order_ + 2) + " parameters");
  }
  if (params_[0] != ambient_dim_) throw std::invalid_argument("n0 must equal the ambient dimension");
  if (labels_.size() != elements_.size()) throw std::invalid_argument("one label per element required");
  for (const auto& el : elements_) {
    if (!gf::same_field(el.field(), field_)) throw gf::FieldMismatch("family element over a different field");
    if (el.ambient_dim() != ambient_dim_) throw linalg::DimensionError("family element in a different ambient space");
    if (el.dim() != params_[1]) {
      throw linalg::DimensionError("family element of dimension " + std::to_string(el.dim()) + ", expected " +
                                   std::to_string(params_[1]));
    }
  }
}

bool Family::params_well_formed() const {
  if (kind_ == FamilyKind::kDualArc) {
    for (std::size_t i = 1; i < params_.size(); ++i) {
      if (params_[i] >= params_[i - 1]) return false;
    }
    return params_.back() > -1;
  }
  if (params_[1] < 0) return false;
  for (std::size_t i = 2; i < params_.size(); ++i) {
    if (params_[i] <= params_[i - 1]) return false;
  }
  return params_.back() < params_[0];
}

Family Family::without(std::span<const std::size_t> indices) const {
  std::vector<bool> drop(elements_.size(), false);
  for (auto i : indices) drop.at(i) = true;
  std::vector<Subspace> els;
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (drop[i]) continue;
    els.push_back(elements_[i]);
    labels.push_back(labels_[i]);
  }
  return Family(kind_, field_, ambient_dim_, order_, params_, std::move(els), std::move(labels), source_dim_);
}

Family Family::with_element(Subspace element, std::size_t label) const {
  auto els = elements_;
  auto labels = labels_;
  els.push_back(std::move(element));
  labels.push_back(label);
  return Family(kind_, field_, ambient_dim_, order_, params_, std::move(els), std::move(labels), source_dim_);
}

Family Family::sorted_by_label() const {
  std::vector<std::size_t> idx(elements_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return labels_[a] < labels_[b]; });
  std::vector<Subspace> els;
  std::vector<std::size_t> labels;
  for (auto i : idx) {
    els.push_back(elements_[i]);
    labels.push_back(labels_[i]);
  }
  return Family(kind_, field_, ambient_dim_, order_, params_, std::move(els), std::move(labels), source_dim_);
}

Family Family::with_params(FamilyKind kind, std::vector<int> params, std::vector<Subspace> elements) const {
  return Family(kind, field_, ambient_dim_, order_, std::move(params), std::move(elements), labels_, source_dim_);
}

std::uint64_t full_family_size(std::uint64_t q, int n) { return linalg::projective_point_count(q, n + 1); }

void write_family(std::ostream& os, const Family& family) {
  os << family.q() << ' ' << family.source_dim() << ' ' << family.order() << ' ' << family.size() << '\n';
  os << "kind=" << to_string(family.kind()) << " params=";
  for (std::size_t i = 0; i < family.params().size(); ++i) os << (i ? " " : "") << family.params()[i];
  os << '\n';
  for (std::size_t i = 0; i < family.size(); ++i) {
    os << "element " << family.labels()[i] << '\n';
    linalg::write_subspace(os, family[i]);
  }
}

std::string family_to_text(const Family& family) {
  std::ostringstream os;
  write_family(os, family);
  return os.str();
}

Family read_family(std::istream& is) {
  auto fail = [](const std::string& what) { return std::runtime_error("family file: " + what); };
  std::string line;
  if (!std::getline(is, line)) throw fail("empty input");
  std::uint64_t q = 0;
  int n = 0, d = 0;
  std::size_t count = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> q >> n >> d >> count)) throw fail("bad header '" + line + "'");
  }
  if (!std::getline(is, line)) throw fail("missing kind/params line");
  FamilyKind kind;
  std::vector<int> params;
  {
    std::istringstream ps(line);
    std::string tok;
    ps >> tok;
    if (tok == "kind=dual") {
      kind = FamilyKind::kDualArc;
    } else if (tok == "kind=arc") {
      kind = FamilyKind::kArc;
    } else {
      throw fail("unknown kind '" + tok + "'");
    }
    ps >> tok;
    if (tok.rfind("params=", 0) != 0) throw fail("missing params");
    params.push_back(std::stoi(tok.substr(7)));
    int v;
    while (ps >> v) params.push_back(v);
  }
  if (params.size() != static_cast<std::size_t>(d) + 2) throw fail("parameter count does not match order");
  auto field = gf::make_field_of_order(q);
  std::vector<Subspace> els;
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < count; ++i) {
    do {
      if (!std::getline(is, line)) throw fail("expected " + std::to_string(count) + " elements, found " + std::to_string(i));
    } while (line.find_first_not_of(" \t\r") == std::string::npos);
    std::istringstream es(line);
    std::string word;
    std::size_t label;
    if (!(es >> word >> label) || word != "element") throw fail("expected 'element <label>', got '" + line + "'");
    labels.push_back(label);
    els.push_back(linalg::read_subspace(is, field));
  }
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw fail("trailing content after the last element");
  }
  const int ambient = params[0];
  return Family(kind, field, ambient, d, std::move(params), std::move(els), std::move(labels), n);
}

}  // namespace dualarc::arcs
