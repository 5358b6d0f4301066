#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diagbase/group_table.hpp"
#include "diagbase/perm.hpp"

namespace diagbase {

/// Index into the element list of a simple group T. Index 0 is the identity.
using TElem = std::uint16_t;
/// Index into Aut(T), laid out as `coset * |T| + t` for the automorphism
/// rho_coset followed by conjugation by t.
using AutIdx = std::uint32_t;
/// Label of an Inn(T)-coset in Aut(T); 0 is Inn(T) itself.
using OutLabel = std::uint32_t;

inline constexpr std::size_t kSimpleGroupOrderBudget = 2520;

/// One catalog record, as written in the catalog file.
struct SimpleGroupSpec {
    std::string name;
    std::size_t natural_degree = 0;
    std::vector<Perm> generators;  // exactly two
    std::size_t order = 0;
    std::size_t out_order = 0;
    std::size_t min_index = 0;
    std::pair<Perm, Perm> gen_pair_distinct_orders;
    std::pair<Perm, Perm> involution_pair;
    /// Each automorphism generator is given by the images of the two group generators.
    std::vector<std::pair<Perm, Perm>> aut_generators;
    std::string source;
};

/// T with its elements materialized as a flat indexed list plus lookup tables.
class SimpleGroup {
public:
    /// Throws ValidationError if the generators do not close within the
    /// order budget or the recorded order disagrees.
    explicit SimpleGroup(SimpleGroupSpec spec);

    const SimpleGroupSpec& spec() const noexcept { return spec_; }
    const std::string& name() const noexcept { return spec_.name; }
    std::size_t order() const noexcept { return elements_.size(); }

    TElem mul(TElem a, TElem b) const noexcept { return mul_[static_cast<std::size_t>(a) * order() + b]; }
    TElem inv(TElem a) const noexcept { return inv_[a]; }
    std::uint32_t elem_order(TElem a) const noexcept { return ord_[a]; }
    /// t^-1 s t
    TElem conj(TElem s, TElem t) const noexcept { return mul(inv(t), mul(s, t)); }

    const Perm& element(TElem a) const { return elements_[a]; }
    std::optional<TElem> index_of(const Perm& p) const;
    TElem require_index(const Perm& p, const std::string& what) const;

    /// Generators as element indices.
    TElem gen(std::size_t i) const noexcept { return gens_[i]; }
    std::pair<TElem, TElem> distinct_order_pair() const noexcept { return distinct_pair_; }
    std::pair<TElem, TElem> involution_pair() const noexcept { return involution_pair_; }

    /// Word-tree parent of each element: element(a) = element(parent(a)) * gen(parent_gen(a)).
    TElem parent(TElem a) const noexcept { return parent_[a]; }
    std::uint8_t parent_gen(TElem a) const noexcept { return parent_gen_[a]; }

    /// Size of the subgroup generated by the given elements.
    std::size_t subgroup_order(const std::vector<TElem>& gens) const;
    std::vector<TElem> centralizer(TElem x) const;
    /// The set T(x, y): non-identity elements whose order differs from those of x and y.
    std::vector<TElem> other_order_elements(TElem x, TElem y) const;

    /// Elements as an abstract permutation group on its natural points.
    GroupTable natural_table() const;

private:
    SimpleGroupSpec spec_;
    std::vector<Perm> elements_;
    std::unordered_map<Perm, TElem, PermHash> index_;
    std::vector<TElem> mul_;
    std::vector<TElem> inv_;
    std::vector<std::uint32_t> ord_;
    std::vector<TElem> parent_;
    std::vector<std::uint8_t> parent_gen_;
    std::vector<TElem> gens_;
    std::pair<TElem, TElem> distinct_pair_{};
    std::pair<TElem, TElem> involution_pair_{};
};

/// Aut(T) materialized as bijections of T's element list.
class AutTable {
public:
    /// Throws ValidationError if an automorphism generator does not extend to
    /// an automorphism, or the closure is inconsistent with the recorded |Out(T)|.
    explicit AutTable(std::shared_ptr<const SimpleGroup> group);

    const SimpleGroup& group() const noexcept { return *group_; }
    std::shared_ptr<const SimpleGroup> group_ptr() const noexcept { return group_; }
    std::size_t order() const noexcept { return out_order_ * group_->order(); }
    std::size_t out_order() const noexcept { return out_order_; }

    /// Image of s under the automorphism a (right action).
    TElem apply(AutIdx a, TElem s) const noexcept { return img_[static_cast<std::size_t>(a) * group_->order() + s]; }
    /// a followed by b.
    AutIdx compose(AutIdx a, AutIdx b) const noexcept;
    AutIdx inverse(AutIdx a) const noexcept { return inv_[a]; }
    AutIdx identity() const noexcept { return 0; }
    std::uint32_t aut_order(AutIdx a) const noexcept { return ord_[a]; }

    OutLabel coset(AutIdx a) const noexcept { return a / static_cast<AutIdx>(group_->order()); }
    TElem inner_offset(AutIdx a) const noexcept { return static_cast<TElem>(a % group_->order()); }
    /// phi_t: s -> t^-1 s t.
    AutIdx inn(TElem t) const noexcept { return t; }
    AutIdx make(OutLabel c, TElem t) const noexcept { return c * static_cast<AutIdx>(group_->order()) + t; }

    OutLabel out_mul(OutLabel a, OutLabel b) const noexcept { return out_mul_[a * out_order_ + b]; }
    OutLabel out_inv(OutLabel a) const noexcept;
    std::uint32_t out_elem_order(OutLabel a) const noexcept;
    /// Closure of the given labels inside Out(T), sorted; always contains 0.
    std::vector<OutLabel> out_subgroup(const std::vector<OutLabel>& gens) const;

    Perm bijection(AutIdx a) const;
    std::optional<AutIdx> index_of(const Perm& bijection) const;
    /// The unique t with bijection == phi_t. Throws NotInnerError otherwise.
    TElem recover_conjugator(const Perm& bijection) const;
    bool same_out_coset(const Perm& a, const Perm& b) const;

    /// All automorphisms as permutations of T's element list.
    GroupTable as_table() const;

private:
    std::shared_ptr<const SimpleGroup> group_;
    std::size_t out_order_ = 0;
    std::vector<TElem> img_;
    std::vector<AutIdx> inv_;
    std::vector<std::uint32_t> ord_;
    std::vector<OutLabel> out_mul_;
    /// rho_a rho_b = rho_{out_mul} phi_{rho_prod_offset}
    std::vector<TElem> rho_prod_offset_;
    /// image of gen(0) under phi_t -> all t producing it
    std::unordered_map<TElem, std::vector<TElem>> conj_solutions_;
    std::vector<Perm> rho_inv_;

    std::optional<TElem> try_recover(const Perm& bijection) const;
};

/// phi_t as a bijection of T.
Perm inn_of(const SimpleGroup& t_group, TElem t);

std::vector<SimpleGroupSpec> parse_catalog(std::istream& in);
std::vector<SimpleGroupSpec> parse_catalog_file(const std::string& path);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SpecValidation {
    std::string group;
    std::vector<CheckResult> checks;
    bool min_index_verified = false;
    bool ok() const;
};

/// Runs every catalog invariant for one record. Never throws for a failed
/// invariant; structural failures (closure, automorphism extension) are
/// reported as failed checks.
SpecValidation validate_spec(const SimpleGroupSpec& spec);

/// Parses and validates; throws ValidationError naming the group and invariant on the first failure.
std::vector<SimpleGroupSpec> load_catalog(std::istream& in);
std::vector<SimpleGroupSpec> load_catalog_file(const std::string& path);

/// Catalog shipped with the library (data/catalog.txt in the source tree).
std::string default_catalog_path();

/// A catalog group with T and Aut(T) materialized, shared by all consumers.
struct CatalogGroup {
    std::shared_ptr<const SimpleGroup> group;
    std::shared_ptr<const AutTable> aut;
};

CatalogGroup materialize(const SimpleGroupSpec& spec);
/// Looks up `name` in the given specs; throws PreconditionError if absent.
CatalogGroup materialize(const std::vector<SimpleGroupSpec>& specs, const std::string& name);

}  // namespace diagbase
