#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace diagbase {

using Point = std::uint32_t;

/// A bijection of {0, ..., m-1}, stored as its image list.
///
/// Composition follows the right-action convention used throughout the
/// library: `p * q` applies p first and then q, so `(p * q)(i) == q(p(i))`.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::size_t degree);  // identity
    explicit Perm(std::vector<Point> images);  // throws ValidationError if not a bijection

    static Perm identity(std::size_t degree) { return Perm(degree); }
    /// Builds a permutation from 0-based cycles, e.g. {{0,1,2},{3,4}}.
    static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);
    /// Parses 1-based cycle notation such as "(1 2 3)(4 5)"; "()" is the identity.
    static Perm parse(std::string_view text, std::size_t degree);

    std::size_t degree() const noexcept { return images_.size(); }
    Point operator()(Point i) const noexcept { return images_[i]; }
    Point operator[](Point i) const noexcept { return images_[i]; }
    std::span<const Point> images() const noexcept { return images_; }

    Perm operator*(const Perm& rhs) const;
    Perm inverse() const;
    Perm pow(long long e) const;

    bool is_identity() const noexcept;
    /// Number of points moved.
    std::size_t support_size() const noexcept;
    std::size_t fixed_points() const noexcept { return degree() - support_size(); }
    /// Lengths of all cycles including fixed points, sorted descending.
    std::vector<std::size_t> cycle_type() const;
    bool is_even() const;

    /// 1-based cycle notation, "()" for the identity.
    std::string to_string() const;

    bool operator==(const Perm&) const = default;
    auto operator<=>(const Perm&) const = default;

private:
    std::vector<Point> images_;
};

/// Least n >= 1 with p^n = 1.
std::uint64_t element_order(const Perm& p);

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace diagbase
