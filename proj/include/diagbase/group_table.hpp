#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "diagbase/perm.hpp"

namespace diagbase {

inline constexpr std::size_t kDefaultEnumerationBudget = 10'000'000;

/// A finite permutation group with every element materialized.
///
/// Element 0 is always the identity. The table is immutable once built and
/// can be shared read-only between threads.
class GroupTable {
public:
    /// Breadth-first closure of `gens`. Throws BudgetExceeded when the group
    /// order would exceed `budget`.
    static GroupTable generate(std::span<const Perm> gens, std::size_t degree,
                               std::size_t budget = kDefaultEnumerationBudget);

    /// Wraps a list of elements already known to form a group (e.g. a
    /// centralizer). A small generating set is extracted greedily.
    static GroupTable from_subgroup_elements(std::vector<Perm> elements, std::size_t degree);

    std::size_t order() const noexcept { return elements_.size(); }
    std::size_t degree() const noexcept { return degree_; }
    const Perm& element(std::size_t i) const { return elements_[i]; }
    const std::vector<Perm>& elements() const noexcept { return elements_; }
    const std::vector<Perm>& generators() const noexcept { return generators_; }

    std::optional<std::size_t> index_of(const Perm& p) const;
    bool contains(const Perm& p) const { return index_.count(p) != 0; }

    /// Index of element(i) * element(j).
    std::size_t multiply(std::size_t i, std::size_t j) const;
    std::size_t inverse(std::size_t i) const;

private:
    std::size_t degree_ = 0;
    std::vector<Perm> elements_;
    std::vector<Perm> generators_;
    std::unordered_map<Perm, std::uint32_t, PermHash> index_;
};

struct ClassPartition {
    std::vector<std::size_t> reps;        // element positions
    std::vector<std::uint32_t> class_of;  // element position -> class id
    std::vector<std::size_t> sizes;
};

ClassPartition conjugacy_classes(const GroupTable& g);

/// All y in g commuting with x. Throws PreconditionError if x is not in g.
GroupTable centralizer(const GroupTable& g, const Perm& x);

/// f_p(g): number of conjugacy classes consisting of elements of prime order.
std::size_t prime_order_class_count(const GroupTable& g);
std::size_t prime_order_class_count(const GroupTable& g, const ClassPartition& classes);

bool is_prime(std::uint64_t n);

struct MinimalBase {
    std::size_t size = 0;
    std::vector<Point> base;
};

/// Exact minimal base for the natural action of g on {0..degree-1}.
/// Exhaustive backtracking over stabilizer chains; candidate points are orbit
/// representatives of the running stabilizer in descending orbit size.
MinimalBase minimal_base(const GroupTable& g);

/// Elements of g fixing every point of `points`.
std::vector<std::size_t> pointwise_stabilizer(const GroupTable& g, std::span<const Point> points);

/// Fewest points moved by a non-identity element. Throws PreconditionError on the trivial group.
std::size_t minimal_degree(const GroupTable& g);

std::vector<std::vector<Point>> orbits(const GroupTable& g);
bool is_transitive(const GroupTable& g);
/// Transitive with no non-trivial block system. Degree 1 counts as primitive.
bool is_primitive(const GroupTable& g);

struct DistinguishingOptions {
    std::size_t exhaustive_limit = 24;
    std::size_t random_samples = 100'000;
    std::uint64_t seed = 0x5EED;
};

struct DistinguishingResult {
    std::optional<std::vector<Point>> subset;  // sorted
    /// True when the answer is certain: a subset was found, or the exhaustive
    /// search ran to completion. False means "absent, but only sampled".
    bool certain = true;
};

/// A non-empty proper subset with trivial setwise stabilizer and at least as
/// large as its complement. Lexicographically first among qualifying subsets
/// when the degree is within the exhaustive limit.
DistinguishingResult distinguishing_subset(const GroupTable& g, const DistinguishingOptions& opts = {});

/// True if the only element of g mapping `subset` onto itself is the identity.
bool has_trivial_setwise_stabilizer(const GroupTable& g, std::span<const Point> subset);

}  // namespace diagbase
