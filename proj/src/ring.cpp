#include "tightcore/ring.hpp"

#include "tightcore/errors.hpp"
#include "tightcore/poly_io.hpp"

namespace tightcore {

RingDesc::RingDesc(PolyRingPtr ambient, std::vector<Poly> relations, RingOptions options)
    : ambient_(std::move(ambient)), options_(std::move(options)) {
  if (ambient_->order().kind != OrderKind::grevlex) throw DomainError("quotient rings use a grevlex ambient order");
  for (auto& r : relations) {
    if (!r.ring().same_as(*ambient_)) throw DomainError("relation lives in a different ring");
    if (r.is_zero()) continue;
    if (r.constant_term().v != 0) throw DomainError("relation " + format_poly(r) + " does not vanish at the origin");
    relations_.push_back(r.ring_ptr() == ambient_ ? r : r.in_ring(ambient_));
  }
  relation_basis_ = buchberger(ambient_, relations_, groebner_options());
  dimension_ = relation_basis_.polys.empty() ? static_cast<int>(ambient_->nvars()) : krull_dimension(relation_basis_);
  if (options_.known_test_ideal) {
    for (auto& g : *options_.known_test_ideal) {
      if (!g.ring().same_as(*ambient_)) throw DomainError("test ideal generator lives in a different ring");
    }
  }
}

std::shared_ptr<const RingDesc> RingDesc::make(PolyRingPtr ambient, std::vector<Poly> relations, RingOptions options) {
  return std::make_shared<const RingDesc>(std::move(ambient), std::move(relations), std::move(options));
}

Poly RingDesc::parse(const std::string& text) const { return parse_poly(ambient_, text); }

bool RingDesc::same_as(const RingDesc& other) const {
  if (this == &other) return true;
  if (!ambient_->same_as(*other.ambient_) || relation_basis_.polys.size() != other.relation_basis_.polys.size()) {
    return false;
  }
  for (std::size_t i = 0; i < relation_basis_.polys.size(); ++i) {
    if (!(relation_basis_.polys[i] == other.relation_basis_.polys[i])) return false;
  }
  return true;
}

}  // namespace tightcore
