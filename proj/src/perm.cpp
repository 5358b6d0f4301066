#include "diagbase/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "diagbase/errors.hpp"

namespace diagbase {

Perm::Perm(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<char> hit(images_.size(), 0);
    for (Point v : images_) {
        if (v >= images_.size() || hit[v])
            throw ValidationError("image list is not a bijection");
        hit[v] = 1;
    }
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<char> used(degree, 0);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            Point a = c[i];
            if (a >= degree) throw ValidationError("cycle point out of range");
            if (used[a]) throw ValidationError("point repeated across cycles");
            used[a] = 1;
            img[a] = c[(i + 1) % c.size()];
        }
    }
    return Perm(std::move(img));
}

Perm Perm::parse(std::string_view text, std::size_t degree) {
    std::vector<std::vector<Point>> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (i == text.size()) throw ValidationError("empty permutation text");
    while (i < text.size()) {
        if (text[i] != '(') throw ValidationError("expected '(' in cycle notation: " + std::string(text));
        ++i;
        std::vector<Point> cycle;
        for (;;) {
            while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
            if (i >= text.size()) throw ValidationError("unterminated cycle: " + std::string(text));
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (text[i] < '0' || text[i] > '9')
                throw ValidationError("unexpected character in cycle notation: " + std::string(text));
            std::size_t v = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + (text[i++] - '0');
            if (v == 0 || v > degree)
                throw ValidationError("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
            cycle.push_back(static_cast<Point>(v - 1));
        }
        if (!cycle.empty()) cycles.push_back(std::move(cycle));
        skip_ws();
    }
    return from_cycles(degree, cycles);
}

Perm Perm::operator*(const Perm& rhs) const {
    std::vector<Point> img(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) img[i] = rhs.images_[images_[i]];
    Perm r;
    r.images_ = std::move(img);
    return r;
}

Perm Perm::inverse() const {
    std::vector<Point> img(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) img[images_[i]] = static_cast<Point>(i);
    Perm r;
    r.images_ = std::move(img);
    return r;
}

Perm Perm::pow(long long e) const {
    Perm base = e < 0 ? inverse() : *this;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Perm acc(degree());
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool Perm::is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

std::size_t Perm::support_size() const noexcept {
    std::size_t n = 0;
    for (std::size_t i = 0; i < images_.size(); ++i) n += images_[i] != i;
    return n;
}

std::vector<std::size_t> Perm::cycle_type() const {
    std::vector<std::size_t> lens;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
            seen[j] = 1;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

bool Perm::is_even() const {
    std::size_t transpositions = 0;
    for (std::size_t len : cycle_type()) transpositions += len - 1;
    return transpositions % 2 == 0;
}

std::string Perm::to_string() const {
    std::ostringstream os;
    std::vector<char> seen(images_.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (seen[i] || images_[i] == i) continue;
        any = true;
        os << '(';
        Point j = static_cast<Point>(i);
        bool first = true;
        while (!seen[j]) {
            seen[j] = 1;
            if (!first) os << ' ';
            os << j + 1;
            first = false;
            j = images_[j];
        }
        os << ')';
    }
    return any ? os.str() : "()";
}

std::uint64_t element_order(const Perm& p) {
    std::uint64_t ord = 1;
    for (std::size_t len : p.cycle_type()) ord = std::lcm(ord, static_cast<std::uint64_t>(len));
    return ord;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
    // FNV-1a over the image list
    std::size_t h = 1469598103934665603ull;
    for (Point v : p.images()) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace diagbase
