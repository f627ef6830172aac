#pragma once

#include "semiring.hpp"

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace stqf {

using IndexSet = std::vector<int>;  // zero-based, sorted

class Vector {
public:
    using Coords = boost::container::small_vector<Element, 4>;

    Vector() = default;
    explicit Vector(int rank) : c_(static_cast<std::size_t>(rank)) {
        if (rank <= 0) throw PreconditionError("vector rank must be positive");
    }
    Vector(std::initializer_list<Element> xs) : c_(xs.begin(), xs.end()) {}
    template <class It>
    Vector(It first, It last) : c_(first, last) {}

    static Vector unit(int rank, int i, Element coef = kOne) {
        Vector v(rank);
        v[i] = coef;
        return v;
    }

    int rank() const { return static_cast<int>(c_.size()); }
    Element& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    const Element& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Element& e) { return e.is_zero(); });
    }

    friend bool operator==(const Vector& a, const Vector& b) { return a.c_ == b.c_; }

private:
    Coords c_;
};

namespace detail {
inline void require_same_rank(const Vector& x, const Vector& y) {
    if (x.rank() != y.rank())
        throw PreconditionError("rank mismatch: " + std::to_string(x.rank()) + " vs " + std::to_string(y.rank()));
}
}  // namespace detail

inline Vector vec_add(const Vector& x, const Vector& y) {
    detail::require_same_rank(x, y);
    Vector r(x.rank());
    for (int i = 0; i < x.rank(); ++i) r[i] = x[i] + y[i];
    return r;
}

inline Vector scalar_mul(const Element& l, const Vector& x) {
    Vector r(x.rank());
    for (int i = 0; i < x.rank(); ++i) r[i] = l * x[i];
    return r;
}

inline Vector operator+(const Vector& x, const Vector& y) { return vec_add(x, y); }
inline Vector operator*(const Element& l, const Vector& x) { return scalar_mul(l, x); }

inline bool vec_leq(const Vector& x, const Vector& y) {
    detail::require_same_rank(x, y);
    for (int i = 0; i < x.rank(); ++i)
        if (!min_leq(x[i], y[i])) return false;
    return true;
}

inline bool vec_less(const Vector& x, const Vector& y) { return vec_leq(x, y) && !(x == y); }

inline Vector vec_sup(const Vector& x, const Vector& y) {
    detail::require_same_rank(x, y);
    Vector r(x.rank());
    for (int i = 0; i < x.rank(); ++i) r[i] = sup(x[i], y[i]);
    return r;
}

inline IndexSet support(const Vector& x) {
    IndexSet s;
    for (int i = 0; i < x.rank(); ++i)
        if (!x[i].is_zero()) s.push_back(i);
    return s;
}

inline Vector restrict(const Vector& x, const IndexSet& J) {
    Vector r(x.rank());
    for (int i : J) {
        if (i < 0 || i >= x.rank()) throw PreconditionError("index " + std::to_string(i + 1) + " out of range");
        r[i] = x[i];
    }
    return r;
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline std::string to_string(const Vector& x) {
    std::string s = "[";
    for (int i = 0; i < x.rank(); ++i) {
        if (i) s += ", ";
        s += to_string(x[i]);
    }
    return s + "]";
}

inline std::ostream& operator<<(std::ostream& os, const Vector& x) { return os << to_string(x); }

inline Vector parse_vector(std::string_view raw) {
    std::string_view s = detail::trim(raw);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("bad vector '" + std::string(raw) + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<Element> xs;
    while (true) {
        auto comma = s.find(',');
        xs.push_back(parse_element(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return Vector(xs.begin(), xs.end());
}

}  // namespace stqf
