#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tightcore/groebner.hpp"

namespace tightcore {

struct RingFlags {
  /// Gorenstein (or Cohen-Macaulay) local ring with an isolated singularity:
  /// licenses the exact parameter-ideal tight closure I^* = I : tau.
  bool gorenstein_isolated_singularity = false;
  /// Interpret ideals in the localization at the origin (the default; the
  /// rings of interest are local or complete local).
  bool local = true;
};

struct RingOptions {
  std::string name;
  RingFlags flags;
  /// Generators (in the ambient polynomial ring) of the known test ideal.
  std::optional<std::vector<Poly>> known_test_ideal;
  std::uint32_t degree_cap = 60;
  /// Largest N tried when searching for the m-primary component I + m^N.
  std::uint32_t local_power_cap = 24;
};

/// R = k[x_1..x_n]/Q with m = (x_1..x_n). The relations must vanish at the origin.
class RingDesc {
 public:
  static std::shared_ptr<const RingDesc> make(PolyRingPtr ambient, std::vector<Poly> relations,
                                              RingOptions options = {});

  const PolyRingPtr& ambient() const { return ambient_; }
  const Field& field() const { return ambient_->field(); }
  const FieldPtr& field_ptr() const { return ambient_->field_ptr(); }
  std::size_t nvars() const { return ambient_->nvars(); }
  const std::string& name() const { return options_.name; }
  const RingFlags& flags() const { return options_.flags; }
  const std::optional<std::vector<Poly>>& known_test_ideal() const { return options_.known_test_ideal; }
  GroebnerOptions groebner_options() const { return {options_.degree_cap}; }
  std::uint32_t local_power_cap() const { return options_.local_power_cap; }
  std::uint32_t degree_cap() const { return options_.degree_cap; }
  const RingOptions& options() const { return options_; }

  const std::vector<Poly>& relations() const { return relations_; }
  const GroebnerBasis& relation_basis() const { return relation_basis_; }
  int dimension() const { return dimension_; }
  std::uint32_t characteristic() const { return field().characteristic(); }

  Poly reduce(const Poly& f) const { return normal_form(f, relation_basis_); }
  Poly variable(std::size_t i) const { return Poly::variable(ambient_, i); }
  Poly constant(Scalar c) const { return Poly::constant(ambient_, c); }
  Poly parse(const std::string& text) const;

  bool same_as(const RingDesc& other) const;

  RingDesc(PolyRingPtr ambient, std::vector<Poly> relations, RingOptions options);

 private:
  PolyRingPtr ambient_;
  std::vector<Poly> relations_;
  RingOptions options_;
  GroebnerBasis relation_basis_;
  int dimension_ = 0;
};

using RingPtr = std::shared_ptr<const RingDesc>;

}  // namespace tightcore
