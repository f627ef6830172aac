#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stqf {

// Value group written additively; the integer group is the discrete one.
using Value = boost::rational<std::int64_t>;

// Int is discrete; Rat is dense and 2-divisible; Tri (denominators powers of 3) is dense but not 2-divisible.
enum class Group { Int, Rat, Tri };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline bool is_integral(const Value& v) { return v.denominator() == 1; }

inline bool in_group(const Value& v, Group g) {
    switch (g) {
        case Group::Int: return is_integral(v);
        case Group::Rat: return true;
        default: {
            std::int64_t d = v.denominator();
            while (d % 3 == 0) d /= 3;
            return d == 1;
        }
    }
}

inline bool is_discrete(Group g) { return g == Group::Int; }

// v is twice a group value.
inline bool is_nu_square(const Value& v, Group g) { return in_group(v / 2, g); }

inline Value floor_value(const Value& v) {
    std::int64_t n = v.numerator(), d = v.denominator();
    std::int64_t q = n / d;
    if (n % d != 0 && n < 0) --q;
    return Value(q);
}

inline Value ceil_value(const Value& v) {
    Value f = floor_value(v);
    return f == v ? f : f + 1;
}

enum class Kind : std::uint8_t { Zero, Tangible, Ghost };

enum class Ordering { Less, Equal, Greater, Incomparable };

class Element {
public:
    Element() = default;

    static Element zero() { return {}; }
    static Element tangible(Value v) { return Element(Kind::Tangible, v); }
    static Element ghost(Value v) { return Element(Kind::Ghost, v); }
    static Element make(Kind k, Value v) { return k == Kind::Zero ? zero() : Element(k, v); }

    Kind kind() const { return kind_; }
    // Meaningless for zero.
    const Value& value() const { return v_; }

    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_tangible() const { return kind_ == Kind::Tangible; }
    bool is_ghost() const { return kind_ == Kind::Ghost; }
    // Zero lies in both the tangible and the ghost layer.
    bool in_ghost_ideal() const { return kind_ != Kind::Tangible; }

    Element nu() const { return is_zero() ? zero() : ghost(v_); }
    Element tangible_partner() const { return is_zero() ? zero() : tangible(v_); }

    friend bool operator==(const Element& a, const Element& b) {
        return a.kind_ == b.kind_ && (a.kind_ == Kind::Zero || a.v_ == b.v_);
    }

private:
    Element(Kind k, Value v) : kind_(k), v_(v) {}

    Kind kind_ = Kind::Zero;
    Value v_{0};
};

inline Element T(Value v) { return Element::tangible(v); }
inline Element G(Value v) { return Element::ghost(v); }
inline Element T(std::int64_t v) { return Element::tangible(Value(v)); }
inline Element G(std::int64_t v) { return Element::ghost(Value(v)); }
inline const Element kZero{};
// e = 1 + 1, the ghost of the unit.
inline const Element kE = Element::ghost(Value(0));
inline const Element kOne = Element::tangible(Value(0));

inline Ordering nu_compare(const Element& a, const Element& b) {
    if (a.is_zero() || b.is_zero()) {
        if (a.is_zero() && b.is_zero()) return Ordering::Equal;
        return a.is_zero() ? Ordering::Less : Ordering::Greater;
    }
    if (a.value() < b.value()) return Ordering::Less;
    if (b.value() < a.value()) return Ordering::Greater;
    return Ordering::Equal;
}

inline bool nu_less(const Element& a, const Element& b) { return nu_compare(a, b) == Ordering::Less; }
inline bool nu_leq(const Element& a, const Element& b) { return nu_compare(a, b) != Ordering::Greater; }
inline bool nu_eq(const Element& a, const Element& b) { return nu_compare(a, b) == Ordering::Equal; }
inline bool nu_greater(const Element& a, const Element& b) { return nu_less(b, a); }
inline bool nu_geq(const Element& a, const Element& b) { return nu_leq(b, a); }

inline Element add(const Element& a, const Element& b) {
    switch (nu_compare(a, b)) {
        case Ordering::Less: return b;
        case Ordering::Greater: return a;
        default: return a.nu();
    }
}

inline Element mul(const Element& a, const Element& b) {
    if (a.is_zero() || b.is_zero()) return kZero;
    Value v = a.value() + b.value();
    return (a.is_ghost() || b.is_ghost()) ? G(v) : T(v);
}

inline Element operator+(const Element& a, const Element& b) { return add(a, b); }
inline Element operator*(const Element& a, const Element& b) { return mul(a, b); }
inline Element& operator+=(Element& a, const Element& b) { return a = add(a, b); }
inline Element& operator*=(Element& a, const Element& b) { return a = mul(a, b); }

inline Element square(const Element& a) { return mul(a, a); }

// Multiplicative inverse of a tangible element; the inverse of a ghost is taken on its value.
inline Element inverse(const Element& a) {
    if (a.is_zero()) throw PreconditionError("inverse of zero");
    return Element::make(a.kind(), -a.value());
}

// Scales by a group value: the value shifts, the layer is kept.
inline Element shift(const Element& a, const Value& d) {
    return a.is_zero() ? a : Element::make(a.kind(), a.value() + d);
}

// Minimal ordering on scalars: a <= b iff a + z = b for some z.
inline Ordering min_order_compare(const Element& a, const Element& b) {
    if (a == b) return Ordering::Equal;
    Ordering c = nu_compare(a, b);
    if (c != Ordering::Equal) return c;
    // Same nonzero value, different layers: the tangible one is smaller.
    return a.is_tangible() ? Ordering::Less : Ordering::Greater;
}

inline bool min_leq(const Element& a, const Element& b) {
    Ordering o = min_order_compare(a, b);
    return o == Ordering::Less || o == Ordering::Equal;
}

inline Element sup(const Element& a, const Element& b) {
    if (a == b) return a;
    switch (nu_compare(a, b)) {
        case Ordering::Less: return b;
        case Ordering::Greater: return a;
        default: return a.nu();
    }
}

inline std::string value_to_string(const Value& v) {
    std::string s = std::to_string(v.numerator());
    if (v.denominator() != 1) s += "/" + std::to_string(v.denominator());
    return s;
}

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view whole) {
    if (s.empty()) throw ParseError("bad value '" + std::string(whole) + "'");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw ParseError("bad value '" + std::string(whole) + "'");
    std::int64_t r = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9') throw ParseError("bad value '" + std::string(whole) + "'");
        if (__builtin_mul_overflow(r, 10, &r) || __builtin_add_overflow(r, c - '0', &r))
            throw ParseError("value out of range '" + std::string(whole) + "'");
    }
    return neg ? -r : r;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
    return s;
}

}  // namespace detail

// Accepts "3", "-1/2" and finite decimals such as "0.25".
inline Value parse_value(std::string_view raw) {
    std::string_view s = detail::trim(raw);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::int64_t n = detail::parse_int(s.substr(0, slash), raw);
        std::int64_t d = detail::parse_int(s.substr(slash + 1), raw);
        if (d == 0) throw ParseError("zero denominator in '" + std::string(raw) + "'");
        return Value(n, d);
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        bool neg = !s.empty() && s[0] == '-';
        std::string_view body = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? s.substr(1) : s;
        dot = body.find('.');
        std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
        auto digits = [](std::string_view t) {
            for (char c : t)
                if (c < '0' || c > '9') return false;
            return true;
        };
        if (fp.empty() || fp.size() > 15 || !digits(ip) || !digits(fp))
            throw ParseError("bad value '" + std::string(raw) + "'");
        std::int64_t whole = ip.empty() ? 0 : detail::parse_int(ip, raw);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        Value v = Value(whole) + Value(detail::parse_int(fp, raw), den);
        return neg ? -v : v;
    }
    return Value(detail::parse_int(s, raw));
}

inline std::string to_string(const Element& a) {
    switch (a.kind()) {
        case Kind::Zero: return "0";
        case Kind::Tangible: return "t:" + value_to_string(a.value());
        default: return "g:" + value_to_string(a.value());
    }
}

inline Element parse_element(std::string_view raw) {
    std::string_view s = detail::trim(raw);
    if (s == "0") return kZero;
    if (s.size() > 2 && s[1] == ':' && std::string_view("tTgG").find(s[0]) != std::string_view::npos) {
        Value v;
        try {
            v = parse_value(s.substr(2));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " in element '" + std::string(s) + "'");
        }
        return (s[0] == 't' || s[0] == 'T') ? T(v) : G(v);
    }
    throw ParseError("bad element '" + std::string(raw) + "'");
}

inline std::ostream& operator<<(std::ostream& os, const Element& a) { return os << to_string(a); }

inline const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "Less";
        case Ordering::Equal: return "Equal";
        case Ordering::Greater: return "Greater";
        default: return "Incomparable";
    }
}

inline std::ostream& operator<<(std::ostream& os, Ordering o) { return os << to_string(o); }

inline bool in_group(const Element& a, Group g) { return a.is_zero() || in_group(a.value(), g); }

inline const char* to_string(Group g) {
    switch (g) {
        case Group::Int: return "int";
        case Group::Rat: return "rat";
        default: return "tri";
    }
}

inline Group parse_group(std::string_view s) {
    if (s == "int") return Group::Int;
    if (s == "rat") return Group::Rat;
    if (s == "tri") return Group::Tri;
    throw ParseError("unknown group '" + std::string(s) + "'");
}

// True iff u - w is twice a group value.
inline bool square_class_equal(const Value& u, const Value& w, Group g) { return is_nu_square(u - w, g); }

}  // namespace stqf

template <>
struct std::hash<stqf::Element> {
    std::size_t operator()(const stqf::Element& a) const noexcept {
        if (a.is_zero()) return 0x9e3779b9u;
        std::size_t h = std::hash<std::int64_t>{}(a.value().numerator());
        h ^= std::hash<std::int64_t>{}(a.value().denominator()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h * 3 + static_cast<std::size_t>(a.kind());
    }
};
