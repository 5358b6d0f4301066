#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "diagbase/group_table.hpp"
#include "diagbase/perm.hpp"
#include "diagbase/simple_group.hpp"

namespace diagbase {

using BigInt = boost::multiprecision::cpp_int;

/// Alt(k) and Sym(k) tops are kept symbolic; their tables are materialized
/// only up to this degree.
inline constexpr std::size_t kMaterializeTopDegree = 6;

/// The top group P <= S_k: an explicit table, or the symbolic Alt(k) / Sym(k).
class TopGroup {
public:
    enum class Kind { Explicit, Alt, Sym };

    static TopGroup from_table(GroupTable table, std::string name = {});
    static TopGroup from_generators(std::size_t k, const std::vector<Perm>& gens, std::string name = {});
    static TopGroup alt(std::size_t k);
    static TopGroup sym(std::size_t k);
    static TopGroup trivial(std::size_t k);
    static TopGroup cyclic(std::size_t k);
    static TopGroup dihedral(std::size_t k);
    /// "Sym(5)", "Alt(3)", "trivial", "C37", "D5", or generators "(1 2 3) ; (1 2)" (1-based).
    static TopGroup parse(const std::string& text, std::size_t k);

    Kind kind() const noexcept { return kind_; }
    bool symbolic() const noexcept { return kind_ != Kind::Explicit; }
    std::size_t degree() const noexcept { return k_; }
    const std::string& name() const noexcept { return name_; }
    BigInt order() const;
    bool contains(const Perm& p) const;
    /// True when P contains Alt(k).
    bool contains_alt() const;
    bool is_sym() const;

    bool has_table() const noexcept { return table_ != nullptr; }
    /// Throws UnsupportedError when the top has no materialized table.
    const GroupTable& table() const;

    /// Uniform random element.
    Perm random_element(std::mt19937_64& rng) const;

private:
    Kind kind_ = Kind::Explicit;
    std::size_t k_ = 0;
    std::string name_;
    std::shared_ptr<const GroupTable> table_;
};

/// An element (a_1, ..., a_k)pi of W(k, T).
struct WElement {
    std::vector<AutIdx> auts;
    Perm perm;

    bool operator==(const WElement&) const = default;
};

/// A point of Omega: the coset D(phi_{t_1}, ..., phi_{t_k}) with t_1 = 1.
struct OmegaPoint {
    std::vector<TElem> t;

    bool is_diagonal() const;
    std::string to_string() const;
    bool operator==(const OmegaPoint&) const = default;
    auto operator<=>(const OmegaPoint&) const = default;
};

/// A diagonal element (alpha, ..., alpha)pi, with pi given by index into the top table.
struct DiagElem {
    AutIdx alpha = 0;
    std::uint32_t perm = 0;

    bool operator==(const DiagElem&) const = default;
    auto operator<=>(const DiagElem&) const = default;
};

/// A diagonal element with its permutation stored directly (used when the top is symbolic).
struct DiagPerm {
    AutIdx alpha = 0;
    Perm perm;

    bool operator==(const DiagPerm&) const = default;
    auto operator<=>(const DiagPerm&) const = default;
};

/// G = {(a_1..a_k)pi : a_i in one Out-coset with label in O, pi in P}.
class DiagTypeGroup {
public:
    DiagTypeGroup(CatalogGroup t, std::size_t k, std::vector<OutLabel> out_part, TopGroup top);

    const SimpleGroup& t() const noexcept { return *cat_.group; }
    const AutTable& aut() const noexcept { return *cat_.aut; }
    const CatalogGroup& catalog() const noexcept { return cat_; }
    std::size_t k() const noexcept { return k_; }
    const std::vector<OutLabel>& out_part() const noexcept { return out_; }
    bool out_is_full() const noexcept { return out_.size() == aut().out_order(); }
    const TopGroup& top() const noexcept { return top_; }

    /// Automorphisms whose Out-label lies in O, ascending.
    const std::vector<AutIdx>& auts_in_o() const noexcept { return auts_o_; }
    bool label_in_o(OutLabel c) const noexcept { return in_o_[c] != 0; }

    BigInt order() const;
    BigInt degree() const;
    /// Degree as a machine integer when it fits in 64 bits.
    std::optional<std::uint64_t> small_degree() const;
    BigInt stab_order() const;

    bool contains(const WElement& w) const;
    WElement diag(AutIdx alpha, const Perm& pi) const;
    WElement multiply(const WElement& a, const WElement& b) const;
    WElement inverse(const WElement& a) const;
    WElement identity() const;
    /// The lift (phi_{t_1}, ..., phi_{t_k}) of a point.
    WElement lift(const OmegaPoint& w) const;
    WElement random_element(std::mt19937_64& rng) const;

    OmegaPoint diagonal_point() const;
    OmegaPoint random_point(std::mt19937_64& rng) const;
    /// Canonical form of D(phi_{s_1}, ..., phi_{s_k}).
    OmegaPoint canonical(const std::vector<TElem>& s) const;

    /// Omega points encoded as integers in base |T| over coordinates 2..k.
    std::uint64_t encode(const OmegaPoint& w) const;
    OmegaPoint decode(std::uint64_t code) const;

    std::string descriptor() const;

private:
    CatalogGroup cat_;
    std::size_t k_;
    std::vector<OutLabel> out_;
    std::vector<char> in_o_;
    TopGroup top_;
    std::vector<AutIdx> auts_o_;
};

/// Parses "full", "inner", or a comma-separated list of Out labels; returns the generated subgroup.
std::vector<OutLabel> parse_out_part(const std::string& text, const AutTable& aut);

/// Throws ValidationError when the top is neither primitive nor trivial at k = 2,
/// or when `out_part` is not a subgroup of Out(T).
DiagTypeGroup build_group(const CatalogGroup& t, std::size_t k, const std::vector<OutLabel>& out_part, TopGroup top);

/// Image of the point under w (right action on right cosets of D).
OmegaPoint act(const DiagTypeGroup& g, const OmegaPoint& w, const WElement& x);
/// Image under the diagonal element (alpha, ..., alpha)pi.
OmegaPoint act_diag(const DiagTypeGroup& g, const OmegaPoint& w, AutIdx alpha, const Perm& pi);

/// G_D as (alpha, pi) pairs. Throws UnsupportedError for a top without a table.
std::vector<DiagElem> stab_of_D(const DiagTypeGroup& g);

const TopGroup& top_group_of(const DiagTypeGroup& g);

}  // namespace diagbase
