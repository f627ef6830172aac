#pragma once

// Acceptance suite shared by the CLI `selftest` command and the ctest acceptance binary.

#include "io.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace stqf::selftest {

enum class Sizes { Full, Small };

struct Options {
    std::uint64_t seed = 42;
    Sizes sizes = Sizes::Full;
};

struct Report {
    int id = 0;
    std::string name;
    long checked = 0;
    long failures = 0;
    bool shortfall = false;  // a required sample count was not reached
    std::vector<std::string> counts{};
    std::vector<std::string> examples{};  // first few failures

    bool passed() const { return failures == 0 && !shortfall && checked > 0; }

    void fail(const std::string& what) {
        ++failures;
        if (examples.size() < 5) examples.push_back(what);
    }
    void expect(bool ok, const std::function<std::string()>& what) {
        ++checked;
        if (!ok) fail(what());
    }
    void require_count(const std::string& label, long have, long need) {
        counts.push_back(label + "=" + std::to_string(have));
        if (have < need) {
            shortfall = true;
            if (examples.size() < 5) examples.push_back(label + ": " + std::to_string(have) + " < " + std::to_string(need));
        }
    }
};

inline std::string summary(const Report& r) {
    std::ostringstream os;
    os << "criterion " << r.id << " " << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << " (checked=" << r.checked
       << ", failures=" << r.failures;
    for (const std::string& c : r.counts) os << ", " << c;
    os << ")";
    return os.str();
}

// Summary line followed by the recorded failures, one per indented line.
inline std::string format(const Report& r) {
    std::string out = summary(r);
    for (const std::string& e : r.examples) out += "\n    " + e;
    return out;
}

// ---------------------------------------------------------------------------------------------------------------
// Sampling

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
    }

    // A group value in [lo, hi]; dense groups get small denominators.
    Value value(Group g, std::int64_t lo, std::int64_t hi) {
        std::int64_t d = 1;
        if (g == Group::Rat) d = pick(std::vector<std::int64_t>{1, 1, 2, 3, 4, 6});
        if (g == Group::Tri) d = pick(std::vector<std::int64_t>{1, 1, 3, 9});
        return Value(uniform(lo * d, hi * d), d);
    }
    Element nonzero(Group g, std::int64_t lo, std::int64_t hi) {
        Value v = value(g, lo, hi);
        return chance(0.5) ? T(v) : G(v);
    }
    Element element(Group g, std::int64_t lo, std::int64_t hi, double pzero) {
        return chance(pzero) ? kZero : nonzero(g, lo, hi);
    }
    Vector vector(int n, Group g, std::int64_t lo, std::int64_t hi, double pzero) {
        Vector x(n);
        do {
            for (int i = 0; i < n; ++i) x[i] = element(g, lo, hi, pzero);
        } while (x.is_zero());
        return x;
    }
    QuadraticForm form(int n, Group g, std::int64_t lo, std::int64_t hi, double pzero) {
        QuadraticForm q(n);
        for (int i = 0; i < n; ++i) {
            q.set_diag(i, element(g, lo, hi, pzero));
            for (int j = i + 1; j < n; ++j) q.set_upper(i, j, element(g, lo, hi, pzero));
        }
        return q;
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline std::vector<Element> alphabet(const std::vector<Value>& vals, bool with_zero = true) {
    return witness_elements(vals, with_zero);
}

inline std::vector<Value> int_range(std::int64_t lo, std::int64_t hi) {
    std::vector<Value> r;
    for (std::int64_t v = lo; v <= hi; ++v) r.push_back(Value(v));
    return r;
}

inline std::string show(const QuadraticForm& q) { return to_json(q).dump(); }

inline long scaled(const Options& o, long full, long small) { return o.sizes == Sizes::Full ? full : small; }

// ---------------------------------------------------------------------------------------------------------------
// 1. Semiring axioms

inline void semiring_pair_checks(Report& r, const Element& a, const Element& b) {
    auto ctx = [&](const char* what) { return [=] { return std::string(what) + " a=" + to_string(a) + " b=" + to_string(b); }; };
    Element s = a + b;
    if (!nu_eq(a, b))
        r.expect(s == (nu_greater(a, b) ? a : b), ctx("bipotence off the tie"));
    else
        r.expect(s == b.nu(), ctx("tie gives the ghost"));
    r.expect(a + b == b + a, ctx("add commutes"));
    r.expect(a * b == b * a, ctx("mul commutes"));
    r.expect(square(a + b) == square(a) + square(b), ctx("freshman's dream"));
    Ordering o = min_order_compare(a, b);
    r.expect(o != Ordering::Incomparable, ctx("scalars comparable"));
    bool below = min_leq(a, b);
    r.expect(below == (a == b || a + b == b), ctx("minimal ordering via a + z = b with z = 0 or z = b"));
    Element j = sup(a, b);
    r.expect(min_leq(a, j) && min_leq(b, j), ctx("sup is an upper bound"));
    if (a == b) r.expect(j == a, ctx("sup of equal elements"));
}

inline void semiring_triple_checks(Report& r, const Element& a, const Element& b, const Element& c) {
    auto ctx = [&](const char* what) {
        return [=] { return std::string(what) + " " + to_string(a) + " " + to_string(b) + " " + to_string(c); };
    };
    r.expect((a + b) + c == a + (b + c), ctx("add associates"));
    r.expect((a * b) * c == a * (b * c), ctx("mul associates"));
    r.expect(a * (b + c) == a * b + a * c, ctx("distributivity"));
    if (min_leq(a, c) && min_leq(b, c)) r.expect(min_leq(sup(a, b), c), ctx("sup is least"));
}

inline Report criterion_semiring(const Options& o) {
    Report r{1, "semiring-axioms"};
    r.expect(kE * kE == kE, [] { return std::string("e * e = e"); });
    for (Group g : {Group::Int, Group::Rat}) {
        std::vector<Value> vals;
        if (g == Group::Int)
            vals = int_range(-3, 3);
        else
            for (std::int64_t k = -6; k <= 6; ++k) vals.push_back(Value(k, 2));
        std::vector<Element> al = alphabet(vals);
        for (const Element& a : al)
            for (const Element& b : al) semiring_pair_checks(r, a, b);
        for (const Element& a : al)
            for (const Element& b : al)
                for (const Element& c : al) semiring_triple_checks(r, a, b, c);
    }
    Sampler s(o.seed * 1000 + 1);
    long n = scaled(o, 100000, 5000);
    for (long i = 0; i < n; ++i) {
        Group g = i % 2 ? Group::Rat : Group::Int;
        Element a = s.element(g, -50, 50, 0.05), b = s.element(g, -50, 50, 0.05), c = s.element(g, -50, 50, 0.05);
        if (s.chance(0.3)) b = s.chance(0.5) ? a.tangible_partner() : a.nu();
        semiring_pair_checks(r, a, b);
        semiring_triple_checks(r, a, b, c);
    }
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 2. Pair classifier against the quasilinearity oracle

inline Report criterion_classifier(const Options& o) {
    Report r{2, "classifier-vs-oracle"};
    Sampler s(o.seed * 1000 + 2);
    long n = scaled(o, 10000, 600);
    auto check = [&](const QuadraticPair& p, const Vector& x, const Vector& y, Group g) {
        bool fast = classify_pair(p, x, y, g).quasilinear, slow = oracle_quasilinear(p, x, y, g);
        r.expect(fast == slow, [&] {
            return "group " + std::string(to_string(g)) + " q=" + show(p.form) + " x=" + to_string(x) + " y=" + to_string(y) +
                   " classifier=" + (fast ? "ql" : "exc");
        });
    };
    for (Group g : {Group::Int, Group::Rat, Group::Tri}) {
        long per = g == Group::Tri ? n / 2 : n;
        for (long i = 0; i < per; ++i) {
            QuadraticPair p = make_pair(s.form(2, g, -8, 8, 0.15));
            Vector x = Vector::unit(2, 0), y = Vector::unit(2, 1);
            if (s.chance(0.5)) {
                x = s.vector(2, g, -4, 4, 0.25);
                y = s.vector(2, g, -4, 4, 0.25);
            }
            check(p, x, y, g);
        }
    }
    // Discrete boundary b^2 ~ pi^{-1} q(x) q(y), each layer combination of q(x), q(y).
    long forced = scaled(o, 500, 40);
    std::map<std::string, long> strata;
    for (int combo = 0; combo < 4; ++combo) {
        long hits = 0;
        while (hits < forced) {
            Value v1 = s.value(Group::Int, -8, 8), v2 = s.value(Group::Int, -8, 8);
            if ((v1 + v2 + 1).numerator() % 2 != 0) continue;
            Element a1 = combo & 1 ? G(v1) : T(v1), a2 = combo & 2 ? G(v2) : T(v2);
            Value va = (v1 + v2 + 1) / 2;
            Element a = s.chance(0.5) ? T(va) : G(va);
            if (!nu_eq(square(a), shift(a1 * a2, Value(1)))) continue;
            check(make_pair(QuadraticForm::binary(a1, a, a2)), Vector::unit(2, 0), Vector::unit(2, 1), Group::Int);
            ++hits;
        }
        r.require_count(std::string("boundary_") + (combo & 1 ? "g" : "t") + (combo & 2 ? "g" : "t"), hits, forced);
    }
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 3. Case tables against direct evaluation

inline Group group_for(CaseLabel c) { return c == CaseLabel::IIA || c == CaseLabel::IIB ? Group::Tri : Group::Int; }

inline std::array<Element, 3> sample_for_label(Sampler& s, CaseLabel c) {
    Group g = group_for(c);
    while (true) {
        Element a1 = s.nonzero(g, -8, 8), a2 = s.nonzero(g, -8, 8), a = s.nonzero(g, -8, 8);
        switch (c) {
            case CaseLabel::IV:
                (s.chance(0.5) ? a1 : a2) = kZero;
                break;
            case CaseLabel::V: a1 = a2 = kZero; break;
            case CaseLabel::VI: {
                a = kZero;
                int pat = static_cast<int>(s.uniform(0, 2));
                if (pat == 1) a1 = kZero;
                if (pat == 2) a2 = kZero;
                break;
            }
            case CaseLabel::VII: a1 = a2 = a = kZero; break;
            default: break;
        }
        if (case_parameters(a1, a2, a, g).label == c) return {a1, a2, a};
    }
}

inline Report criterion_table(const Options& o) {
    Report r{3, "table-fidelity"};
    Sampler s(o.seed * 1000 + 3);
    long n = scaled(o, 1000, 60);
    for (CaseLabel c : kAllCases) {
        Group g = group_for(c);
        for (long i = 0; i < n; ++i) {
            auto [a1, a2, a] = sample_for_label(s, c);
            CaseParameters p = case_parameters(a1, a2, a, g);
            QuadraticForm q = QuadraticForm::binary(a1, a, a2);
            std::vector<Element> mus{kZero, T(0), G(0), T(2), G(-1), T(-3)};
            for (const Element& mu : mus) {
                std::vector<Element> lambdas;
                if (mu.is_zero())
                    lambdas = {T(0), G(0), T(3), G(-2), T(-5)};
                else
                    lambdas = span_lambda_grid(q, Vector::unit(2, 0), mu * Vector::unit(2, 1), g);
                for (const Element& l : lambdas) {
                    if (l.is_zero() && mu.is_zero()) continue;
                    Element table = q_value_table(p, a1, a2, a, l, mu), direct = eval_q(q, Vector{l, mu});
                    r.expect(table == direct, [&] {
                        return std::string(to_string(c)) + " a1=" + to_string(a1) + " a2=" + to_string(a2) + " a=" + to_string(a) +
                               " l=" + to_string(l) + " m=" + to_string(mu) + " table=" + to_string(table) +
                               " direct=" + to_string(direct);
                    });
                }
            }
        }
        r.counts.push_back(std::string(to_string(c)) + "=" + std::to_string(n));
    }
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 4. Subadditivity of CS(., w)

inline Report criterion_subadditivity(const Options& o) {
    Report r{4, "subadditivity"};
    Sampler s(o.seed * 1000 + 4);
    long n = scaled(o, 10000, 600), need = scaled(o, 1000, 50);
    long a_count = 0, b_count = 0, c1 = 0, c2 = 0, c3 = 0;
    long attempts = 0, max_attempts = scaled(o, 3000000, 300000);
    while ((a_count < n || b_count < need || c1 < need || c2 < need || c3 < need) && attempts < max_attempts) {
        ++attempts;
        Group g = attempts % 2 ? Group::Int : Group::Rat;
        int rank = static_cast<int>(s.uniform(2, 3));
        bool narrow = attempts % 3 != 0;
        std::int64_t lo = narrow ? -1 : -4, hi = narrow ? 1 : 4;
        QuadraticPair p = make_pair(s.form(rank, g, lo, hi, 0.2));
        Vector x = s.vector(rank, g, lo, hi, 0.3), y = s.vector(rank, g, lo, hi, 0.3), w = s.vector(rank, g, lo, hi, 0.3);
        Element qx = eval_q(p.form, x), qy = eval_q(p.form, y), qw = eval_q(p.form, w);
        if (qx.is_zero() || qy.is_zero() || qw.is_zero()) continue;
        Vector xy = x + y;
        Element c = cs_ratio(p, x, w), d = cs_ratio(p, y, w), lhs = cs_ratio(p, xy, w), rhs = c + d;
        auto where = [&] {
            return "q=" + show(p.form) + " x=" + to_string(x) + " y=" + to_string(y) + " w=" + to_string(w) +
                   " CS(x+y,w)=" + to_string(lhs) + " sum=" + to_string(rhs);
        };
        if (a_count < n) {
            ++a_count;
            r.expect(nu_leq(lhs, rhs), where);
        }
        Element qxy = eval_q(p.form, xy), qsum = qx + qy;
        if (!nu_eq(qxy, qsum)) {
            if (!rhs.is_zero() && b_count < need) {
                ++b_count;
                r.expect(nu_less(lhs, rhs), where);
            }
            continue;
        }
        bool h1 = qx * d == qy * c, h2 = c == d, h3 = nu_eq(qx, qy);
        if ((h1 && c1 < need) || (h2 && c2 < need) || (h3 && c3 < need)) {
            c1 += h1;
            c2 += h2;
            c3 += h3;
            r.expect(lhs == rhs, where);
        }
    }
    r.require_count("part_a", a_count, n);
    r.require_count("strict", b_count, need);
    r.require_count("equal_c1", c1, need);
    r.require_count("equal_c2", c2, need);
    r.require_count("equal_c3", c3, need);
    // Product identities with forced nu-relations.
    long products = scaled(o, 10000, 600);
    for (long i = 0; i < products; ++i) {
        Group g = i % 2 ? Group::Int : Group::Rat;
        Element a = s.element(g, -6, 6, 0.1), b = s.element(g, -6, 6, 0.1), c = s.element(g, -6, 6, 0.1), d;
        auto where = [&] { return to_string(a) + " " + to_string(b) + " " + to_string(c) + " " + to_string(d); };
        if (i % 4 < 2) {
            if (a.is_zero()) {
                // bc ~ 0 forces b = 0 or c = 0
                (s.chance(0.5) ? b : c) = kZero;
                d = s.element(g, -6, 6, 0.1);
            } else if (b.is_zero() || c.is_zero()) {
                d = kZero;
            } else {
                Value v = b.value() + c.value() - a.value();
                d = s.chance(0.5) ? T(v) : G(v);
            }
            if (!nu_eq(b * c, a * d)) continue;
            r.expect(a * c + b * d == (a + b) * (c + d), where);
        } else {
            if (i % 4 == 2) {
                if (a.is_zero()) a = T(0);
                b = s.chance(0.5) ? a.tangible_partner() : a.nu();
                d = s.element(g, -6, 6, 0.1);
            } else {
                if (c.is_zero()) c = T(0);
                d = s.chance(0.5) ? c.tangible_partner() : c.nu();
            }
            r.expect(nu_eq(a * c + b * d, (a + b) * (c + d)), where);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 5. Derived pairs (x', y') in the span of an excessive pair

inline Report criterion_derived(const Options& o) {
    Report r{5, "derived-pairs"};
    Sampler s(o.seed * 1000 + 5);
    long bases = scaled(o, 1000, 80), per = 20;
    long derived = 0, routed = 0, cs_checked = 0, stratum_iiib = 0;
    for (long i = 0; i < bases; ++i) {
        Group g = std::vector<Group>{Group::Int, Group::Int, Group::Rat, Group::Tri}[static_cast<std::size_t>(i % 4)];
        bool force_iiib = i % 4 == 1;
        Element a1, a2, a;
        while (true) {
            a1 = s.element(g, -8, 8, 0.15);
            a2 = s.element(g, -8, 8, 0.15);
            a = s.nonzero(g, -8, 8);
            if (classify_values(a1, a2, a, g).quasilinear) continue;
            if (force_iiib && case_parameters(a1, a2, a, g).label != CaseLabel::IIIB) continue;
            break;
        }
        CaseParameters p = case_parameters(a1, a2, a, g);
        stratum_iiib += p.label == CaseLabel::IIIB;
        QuadraticPair pair = make_pair(QuadraticForm::binary(a1, a, a2));
        for (long k = 0; k < per; ++k) {
            Element l1 = s.element(g, -6, 6, 0.2), m1 = s.element(g, -6, 6, 0.2);
            Element l2 = s.element(g, -6, 6, 0.2), m2 = s.element(g, -6, 6, 0.2);
            if ((l1.is_zero() && m1.is_zero()) || (l2.is_zero() && m2.is_zero())) {
                --k;
                continue;
            }
            if (s.chance(0.2) && p.zeta && !m2.is_zero()) l2 = (s.chance(0.5) ? kE : kOne) * *p.zeta * m2;
            if (s.chance(0.2) && p.eta && !m1.is_zero()) l1 = (s.chance(0.5) ? kE : kOne) * *p.eta * m1;
            Vector x{l1, m1}, y{l2, m2};
            bool truth = classify_pair(pair, x, y, g).quasilinear;
            bool got = derived_pair_classify(a1, a2, a, l1, m1, l2, m2, g);
            auto where = [&] {
                return std::string(to_string(p.label)) + " a1=" + to_string(a1) + " a2=" + to_string(a2) + " a=" + to_string(a) +
                       " x'=" + to_string(x) + " y'=" + to_string(y);
            };
            r.expect(got == truth, [&] { return "classify " + where(); });
            auto o1 = derived_orientation(l1, m1, l2, m2);
            if (!o1) {
                ++routed;
                continue;
            }
            ++derived;
            if (eval_q(pair.form, x).is_zero() || eval_q(pair.form, y).is_zero()) continue;
            ++cs_checked;
            DerivedCs dc = derived_cs_oriented(a1, a2, a, l1, m1, l2, m2, g);
            Element direct = cs_ratio(pair, x, y);
            r.expect(dc.value == direct, [&] {
                return "cs region " + std::string(to_string(dc.region)) + " " + where() + " closed=" + to_string(dc.value) +
                       " direct=" + to_string(direct);
            });
            if (p.zeta && p.eta) {
                Element bound = G(p.zeta->value() - p.eta->value());
                r.expect(nu_leq(direct, bound), [&] { return "bound " + where(); });
            }
        }
    }
    r.counts.push_back("derived=" + std::to_string(derived));
    r.counts.push_back("tie_routed=" + std::to_string(routed));
    r.counts.push_back("cs=" + std::to_string(cs_checked));
    r.require_count("iiib_bases", stratum_iiib, bases / 4);
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 6. Small-support minimality rules against the lowering oracle

inline void minimality_binary_checks(Report& r, const QuadraticForm& q, const Vector& x, Group g) {
    MinimalityVerdict truth = oracle_minimal(q, x, g);
    MinimalityVerdict fast = is_q_minimal(q, x, g);
    auto where = [&] { return "q=" + show(q) + " x=" + to_string(x) + " rule=" + fast.rule; };
    r.expect(fast.minimal == truth.minimal, where);
    if (fast.witness)
        r.expect(vec_less(*fast.witness, x) && eval_q(q, *fast.witness) == eval_q(q, x), [&] { return "witness " + where(); });
    if (q.rank() == 2 && !x[0].is_zero() && !x[1].is_zero()) {
        const Element &a1 = q.diag(0), &a2 = q.diag(1), &b = q.upper(0, 1);
        bool ganiso = binary_minimal_g_anisotropic(a1, b, a2, x[0], x[1]);
        r.expect(ganiso == (truth.minimal && eval_q(q, x).is_tangible()), [&] { return "g-anisotropic " + where(); });
        if (auto ex = excessive_binary_minimal(a1, a2, b, x[0], x[1], g))
            r.expect(*ex == truth.minimal, [&] { return "excessive clauses " + where(); });
    }
}

inline Report criterion_minimality(const Options& o) {
    Report r{6, "small-support-minimality"};
    std::vector<Element> al = alphabet(int_range(-2, 2));
    long exhaustive = 0;
    for (Group g : {Group::Int, Group::Rat}) {
        for (const Element& a1 : al)
            for (const Element& l : al) {
                if (l.is_zero()) continue;
                QuadraticForm q(1);
                q.set_diag(0, a1);
                MinimalityVerdict fast = is_q_minimal_rank1(a1, l), truth = oracle_minimal(q, Vector{l}, g);
                r.expect(fast.minimal == truth.minimal, [&] { return "rank1 a1=" + to_string(a1) + " l=" + to_string(l); });
                ++exhaustive;
            }
        if (o.sizes == Sizes::Small && g == Group::Rat) break;
        for (const Element& a1 : al)
            for (const Element& b : al)
                for (const Element& a2 : al) {
                    QuadraticForm q = QuadraticForm::binary(a1, b, a2);
                    for (const Element& x1 : al)
                        for (const Element& x2 : al) {
                            if (x1.is_zero() && x2.is_zero()) continue;
                            minimality_binary_checks(r, q, Vector{x1, x2}, g);
                            ++exhaustive;
                        }
                }
    }
    r.counts.push_back("exhaustive=" + std::to_string(exhaustive));
    Sampler s(o.seed * 1000 + 6);
    long n = scaled(o, 10000, 600);
    for (long i = 0; i < n; ++i) {
        Group g = std::vector<Group>{Group::Int, Group::Rat, Group::Tri}[static_cast<std::size_t>(i % 3)];
        int rank = static_cast<int>(s.uniform(1, 2));
        QuadraticForm q = s.form(rank, g, -12, 12, 0.15);
        Vector x = s.vector(rank, g, -8, 8, 0.15);
        // Pull coordinates onto the relevant ties often enough to matter.
        if (rank == 2 && !x[0].is_zero() && !x[1].is_zero() && s.chance(0.5)) {
            CaseParameters p = case_parameters(q.diag(0), q.diag(1), q.upper(0, 1), g);
            const std::optional<Element>& t = s.chance(0.5) ? p.zeta : p.eta;
            if (t && !p.swapped) x[0] = (s.chance(0.5) ? kE : kOne) * *t * x[1];
        }
        if (rank == 1)
            r.expect(is_q_minimal(q, x, g).minimal == oracle_minimal(q, x, g).minimal, [&] { return "rank1 random"; });
        else
            minimality_binary_checks(r, q, x, g);
    }
    r.counts.push_back("random=" + std::to_string(n));
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 7 and 9. Exhaustive rank-3 and rank-4 searches

namespace detail {

inline void for_each_form(int n, const std::vector<Element>& al, const std::function<void(const QuadraticForm&)>& f) {
    int slots = n * (n + 1) / 2;
    std::size_t k = al.size(), total = 1;
    for (int i = 0; i < slots; ++i) total *= k;
    QuadraticForm q(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j, r /= k) {
                if (i == j)
                    q.set_diag(i, al[r % k]);
                else
                    q.set_upper(i, j, al[r % k]);
            }
        f(q);
    }
}

// Coordinates of nu-value 0 on the given support; the rest zero. Tangible diagonal rescaling
// moves any vector to this shape while preserving minimality.
inline std::vector<Vector> normalized_vectors(int n, bool full_support_only) {
    std::vector<Vector> r;
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int idx = 1; idx < total; ++idx) {
        Vector x(n);
        int t = idx;
        bool full = true;
        for (int i = 0; i < n; ++i, t /= 3) {
            x[i] = t % 3 == 0 ? kZero : t % 3 == 1 ? T(0) : G(0);
            full &= !x[i].is_zero();
        }
        if (full || !full_support_only) r.push_back(x);
    }
    return r;
}

}  // namespace detail

inline void big_support_check(Report& r, std::map<std::string, long>& by_case, const QuadraticForm& q, const Vector& x, Group g) {
    QuadraticPair p = make_pair(q);
    BigSupportStructure bs = big_support_structure(p, x, g);
    bool ok = bs.holds();
    if (ok) {
        // Re-verify the pieces independently.
        for (const IndexSet* s : {&bs.J, &bs.K}) {
            Vector piece = restrict(x, *s);
            ok &= oracle_minimal(q, piece, g).minimal && eval_q(q, piece).is_tangible();
        }
        std::size_t n = support(x).size();
        if (bs.kind == BigCase::A) ok &= n == 3 && bs.J.size() == 1 && bs.K.size() == 2;
        if (bs.kind == BigCase::B || bs.kind == BigCase::C) ok &= n == 3 && bs.J.size() == 2 && bs.K.size() == 2;
        if (bs.kind == BigCase::D) ok &= n == 4 && bs.J.size() == 2 && bs.K.size() == 2 && set_intersection(bs.J, bs.K).empty();
    }
    r.expect(ok, [&] {
        return "q=" + show(q) + " x=" + to_string(x) + " cases_matched=" + std::to_string(bs.cases_matched) +
               " structure=" + structure_json(bs).dump();
    });
    if (ok) ++by_case[to_string(bs.kind)];
}

inline Report criterion_big_support(const Options& o) {
    Report r{7, "big-support-structure"};
    Group g = Group::Int;
    std::map<std::string, long> by_case;
    long minimal3 = 0, minimal4 = 0;
    std::vector<Element> window = alphabet(int_range(-1, 1));
    auto vec3 = detail::normalized_vectors(3, true);
    long stride = o.sizes == Sizes::Full ? 1 : 37;
    long idx = 0;
    detail::for_each_form(3, window, [&](const QuadraticForm& q) {
        if (idx++ % stride) return;
        for (const Vector& x : vec3) {
            if (!oracle_minimal(q, x, g).minimal) continue;
            ++minimal3;
            big_support_check(r, by_case, q, x, g);
        }
    });
    // Rank 4: with every coordinate at nu-value 0, only coefficients at the top value matter, so each
    // coefficient is absent, tangible-dominant or ghost-dominant.
    std::vector<Element> dominance{kZero, T(0), G(0)};
    auto vec4 = detail::normalized_vectors(4, true);
    idx = 0;
    long stride4 = o.sizes == Sizes::Full ? 1 : 5;
    detail::for_each_form(4, dominance, [&](const QuadraticForm& q) {
        if (idx++ % stride4) return;
        for (const Vector& x : vec4) {
            if (!oracle_minimal(q, x, g).minimal) continue;
            ++minimal4;
            big_support_check(r, by_case, q, x, g);
        }
    });
    // Literal spot check: unnormalized vectors over the window at rank 4.
    Sampler s(o.seed * 1000 + 7);
    long literal = scaled(o, 40000, 2000), literal_minimal = 0;
    std::vector<Element> nz = alphabet(int_range(-1, 1), false);
    for (long i = 0; i < literal; ++i) {
        QuadraticForm q(4);
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                const Element& e = s.pick(window);
                if (a == b)
                    q.set_diag(a, e);
                else
                    q.set_upper(a, b, e);
            }
        Vector x(4);
        for (int a = 0; a < 4; ++a) x[a] = s.pick(nz);
        if (s.chance(0.5)) x[static_cast<int>(s.uniform(0, 3))] = kZero;
        if (!oracle_minimal(q, x, g).minimal) continue;
        ++literal_minimal;
        big_support_check(r, by_case, q, x, g);
    }
    r.counts.push_back("minimal_rank3=" + std::to_string(minimal3));
    r.counts.push_back("minimal_rank4=" + std::to_string(minimal4));
    r.counts.push_back("literal_minimal=" + std::to_string(literal_minimal));
    for (const auto& [k, v] : by_case) r.counts.push_back("case_" + k + "=" + std::to_string(v));
    r.require_count("rank4_found", minimal4, 1);
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 8. Join constructions

inline Report criterion_joins(const Options& o) {
    Report r{8, "join-constructions"};
    Group g = Group::Int;
    Sampler s(o.seed * 1000 + 8);
    long need = scaled(o, 1000, 60);
    long disjoint = 0, overlap = 0, attempts = 0, max_attempts = scaled(o, 2000000, 200000);
    while ((disjoint < need || overlap < need) && attempts < max_attempts) {
        ++attempts;
        bool want_overlap = overlap < need && (disjoint >= need || attempts % 2 == 0);
        int n = want_overlap ? 3 : static_cast<int>(s.uniform(3, 4));
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        std::shuffle(perm.begin(), perm.end(), s.engine());
        QuadraticForm f = s.form(n, g, -2, 2, 0.3);
        Vector y(n), z(n);
        auto coord = [&] { return s.nonzero(g, -1, 1); };
        if (want_overlap) {
            y[perm[0]] = z[perm[0]] = coord();
            y[perm[1]] = coord();
            z[perm[2]] = coord();
        } else if (n == 3) {
            y[perm[0]] = coord();
            z[perm[1]] = coord();
            z[perm[2]] = coord();
        } else {
            y[perm[0]] = coord();
            y[perm[1]] = coord();
            z[perm[2]] = coord();
            z[perm[3]] = coord();
        }
        Element qy = eval_q(f, y), qz = eval_q(f, z);
        if (!qy.is_tangible() || !qz.is_tangible()) continue;
        // Steer towards q(y) ~ q(z): rescale the block of z, or retune the private diagonal of z.
        if (want_overlap) {
            int c = perm[0], k = perm[2];
            f.set_upper(std::min(c, k), std::max(c, k), T(qy.value() - z[c].value() - z[k].value()));
        } else {
            Element d = T(qy.value() - qz.value());
            IndexSet K = support(z);
            for (int i : K) {
                if (!f.diag(i).is_zero()) f.set_diag(i, d * f.diag(i));
                for (int j : K)
                    if (i < j && !f.upper(i, j).is_zero()) f.set_upper(i, j, d * f.upper(i, j));
            }
        }
        qz = eval_q(f, z);
        if (!qz.is_tangible() || !nu_eq(qy, qz)) continue;
        QuadraticPair p = make_pair(f);
        if (!oracle_minimal(p.form, y, g).minimal || !oracle_minimal(p.form, z, g).minimal) continue;
        JoinPrediction jp = join_minimality_predict(p, y, z, g);
        if (jp == JoinPrediction::NoPrediction) continue;
        bool is_overlap = jp == JoinPrediction::MinimalByOverlapJoin;
        if (is_overlap ? overlap >= need : disjoint >= need) continue;
        (is_overlap ? overlap : disjoint)++;
        Vector x = vec_sup(y, z);
        r.expect(oracle_minimal(p.form, x, g).minimal, [&] {
            return std::string(to_string(jp)) + " q=" + show(p.form) + " y=" + to_string(y) + " z=" + to_string(z);
        });
    }
    r.require_count("disjoint_join", disjoint, need);
    r.require_count("overlap_join", overlap, need);

    // Overlapping supports whose outer cross term is a ghost tie: no prediction, and the join with a
    // ghosted shared coordinate collapses onto the tangible vector below it.
    QuadraticForm q(3);
    for (int i = 0; i < 3; ++i) q.set_diag(i, T(-1));
    q.set_upper(0, 1, T(0));
    q.set_upper(0, 2, T(0));
    q.set_upper(1, 2, G(0));
    QuadraticPair p = make_pair(q);
    Vector y{T(0), T(0), kZero}, z{T(0), kZero, T(0)};
    Vector x{G(0), T(0), T(0)}, xp{T(0), T(0), T(0)};
    r.expect(join_minimality_predict(p, y, z, g) == JoinPrediction::NoPrediction, [] { return std::string("ghost-tie join predicted"); });
    r.expect(!oracle_minimal(q, x, g).minimal, [] { return std::string("ghosted join reported minimal"); });
    r.expect(vec_less(xp, x) && eval_q(q, xp) == eval_q(q, x), [] { return std::string("tangible witness fails"); });
    r.expect(eval_b(p.companion, y, z) == kE * eval_q(q, y), [] { return std::string("b(y,z) != e q(y)"); });
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 9. Pairs y < x of minimal vectors with nu-equivalent q-values

inline Report criterion_pair_relations(const Options& o) {
    Report r{9, "minimal-pair-relations"};
    Group g = Group::Int;
    std::map<std::string, long> by_case;
    long qualifying = 0;
    std::vector<Element> window = alphabet(int_range(-1, 1));
    // Coordinates y_i <= x_i for x_i in {T(0), G(0)}, within the window.
    auto below = [](const Element& xi) {
        std::vector<Element> r{kZero, T(-1), G(-1)};
        if (xi.is_zero()) return std::vector<Element>{kZero};
        r.push_back(T(0));
        if (xi.is_ghost()) r.push_back(G(0));
        return r;
    };
    long stride = o.sizes == Sizes::Full ? 1 : 37;
    for (int n = 1; n <= 3; ++n) {
        auto vecs = detail::normalized_vectors(n, false);
        long idx = 0;
        detail::for_each_form(n, window, [&](const QuadraticForm& q) {
            if (idx++ % stride) return;
            for (const Vector& x : vecs) {
                Element qx = eval_q(q, x);
                if (qx.is_zero() || !oracle_minimal(q, x, g).minimal) continue;
                std::vector<std::vector<Element>> opts;
                for (int i = 0; i < n; ++i) opts.push_back(below(x[i]));
                std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
                while (true) {
                    Vector y(n);
                    for (int i = 0; i < n; ++i) y[i] = opts[static_cast<std::size_t>(i)][pos[static_cast<std::size_t>(i)]];
                    if (!y.is_zero() && !(y == x) && nu_eq(eval_q(q, y), qx) && oracle_minimal(q, y, g).minimal) {
                        ++qualifying;
                        bool ok = false;
                        std::string label = "none";
                        try {
                            PairRelationReport pr = minimal_pair_relation(q, x, y, g);
                            ok = pr.holds();
                            label = to_string(pr.relation);
                        } catch (const std::logic_error&) {
                            ok = false;
                        }
                        r.expect(ok, [&] { return "q=" + show(q) + " x=" + to_string(x) + " y=" + to_string(y) + " case=" + label; });
                        if (ok) ++by_case[label];
                    }
                    int i = 0;
                    while (i < n && ++pos[static_cast<std::size_t>(i)] == opts[static_cast<std::size_t>(i)].size()) pos[static_cast<std::size_t>(i++)] = 0;
                    if (i == n) break;
                }
            }
        });
    }
    r.counts.push_back("qualifying=" + std::to_string(qualifying));
    for (const auto& [k, v] : by_case) r.counts.push_back(k + "=" + std::to_string(v));
    r.require_count("qualifying_pairs", qualifying, 1);
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 10. Stropicalization

inline Rational random_rational(Sampler& s, std::int64_t span, bool nonzero) {
    while (true) {
        std::int64_t num = s.uniform(-span, span), den = s.pick(std::vector<std::int64_t>{1, 1, 2, 3, 4, 5, 6, 8, 9, 25});
        if (nonzero && num == 0) continue;
        return Rational(num) / den;
    }
}

inline BaseChange random_base(Sampler& s) {
    while (true) {
        BaseChange m;
        for (auto& row : m)
            for (auto& e : row) e = s.chance(0.15) ? Rational(0) : random_rational(s, 40, false);
        if (determinant(m) != 0) return m;
    }
}

inline Report criterion_stropicalization(const Options& o) {
    Report r{10, "stropicalization"};
    Supervaluation two(2);
    {
        RationalForm hyp{0, 1, 0};
        auto check = [&](const RationalForm& f, const BaseChange& m, const std::string& label, const QuadraticForm& expect, bool ql) {
            Stropicalization st = stropicalize_form(f, m, two);
            const QuadraticForm& q = st.pair.form;
            ExampleCase c = example_case_label(f, m, two);
            r.expect(c.label == label && q == expect &&
                         classify_values(q.diag(0), q.diag(1), q.upper(0, 1), Group::Int).quasilinear == ql &&
                         example_consistent(f, m, two),
                     [&] { return "worked instance case " + c.label + " form " + show(q); });
        };
        check(hyp, BaseChange{{{1, 0}, {1, 1}}}, "I", QuadraticForm::binary(kZero, T(0), T(0)), false);
        check(hyp, BaseChange{{{1, 1}, {1, -1}}}, "III", QuadraticForm::binary(T(0), kZero, T(0)), true);
        // The cross coefficient of the diagonal form in the new base is 2(a11 a21 a + a12 a22 b).
        check(RationalForm{1, 0, 2}, BaseChange{{{1, 1}, {1, -1}}}, "I", QuadraticForm::binary(T(0), T(-1), T(0)), true);
    }
    Sampler s(o.seed * 1000 + 10);
    long n = scaled(o, 1000, 60), diag_forms = scaled(o, 1000, 30), bases = scaled(o, 100, 20);
    std::map<std::string, long> labels;
    for (std::int64_t prime : {2, 3, 5}) {
        Supervaluation sv(prime);
        for (long i = 0; i < n; ++i) {
            RationalForm hyp{0, random_rational(s, 30, true), 0};
            BaseChange m = random_base(s);
            r.expect(example_consistent(hyp, m, sv), [&] { return "hyperbolic p=" + std::to_string(prime); });
            ++labels["A_" + example_case_label(hyp, m, sv).label];
            RationalForm diag{random_rational(s, 30, true), 0, random_rational(s, 30, true)};
            BaseChange m2 = random_base(s);
            r.expect(example_consistent(diag, m2, sv), [&] { return "diagonal p=" + std::to_string(prime); });
            ++labels["B_" + example_case_label(diag, m2, sv).label];
        }
        long qualifying = 0;
        while (qualifying < diag_forms) {
            RationalForm diag{random_rational(s, 30, true), 0, random_rational(s, 30, true)};
            if (square_equivalent(Value(-sv.padic(diag.a1)), Value(-sv.padic(diag.a2)), Group::Int)) continue;
            ++qualifying;
            for (long b = 0; b < bases; ++b) {
                BaseChange m = random_base(s);
                r.expect(diagonal_stropicalization_quasilinear(diag, m, sv), [&] { return "square-inequivalent diagonal p=" + std::to_string(prime); });
            }
        }
        // Isometric forms [0,1;0] and [a, -l^2 a] have square-equivalent values.
        for (long i = 0; i < n; ++i) {
            Rational a = random_rational(s, 30, true), l = random_rational(s, 30, true);
            r.expect(square_equivalent(Value(-sv.padic(a)), Value(-sv.padic(-l * l * a)), Group::Int), [] { return std::string("isometric pair"); });
        }
        // Supervaluation laws.
        for (long i = 0; i < n; ++i) {
            Rational a = random_rational(s, 60, false), b = random_rational(s, 60, false);
            r.expect(sv(a * b) == sv(a) * sv(b), [] { return std::string("multiplicative"); });
            if (a + b != 0 && a != 0 && b != 0) {
                r.expect(nu_leq(sv(a + b), sv(a) + sv(b)), [] { return std::string("ultrametric"); });
                if (sv.padic(a) > sv.padic(b)) r.expect(sv(a + b) == sv(b), [] { return std::string("very strong"); });
            }
        }
    }
    for (const auto& [k, v] : labels) r.counts.push_back(k + "=" + std::to_string(v));
    return r;
}

// ---------------------------------------------------------------------------------------------------------------
// 11. Instance files round-trip

inline Instance random_instance(Sampler& s) {
    Instance in;
    in.group = std::vector<Group>{Group::Int, Group::Rat, Group::Tri}[static_cast<std::size_t>(s.uniform(0, 2))];
    int n = static_cast<int>(s.uniform(1, 4));
    if (s.chance(0.9)) in.form = s.form(n, in.group, -9, 9, 0.2);
    if (in.form && s.chance(0.4)) {
        Companion b(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) b.set(i, j, s.element(in.group, -9, 9, 0.3));
        in.companion = b;
    }
    if (s.chance(0.7)) in.x = s.vector(n, in.group, -5, 5, 0.3);
    if (s.chance(0.7)) in.y = s.vector(n, in.group, -5, 5, 0.3);
    long k = s.uniform(0, 3);
    for (long i = 0; i < k; ++i) in.vectors.push_back(s.vector(n, in.group, -5, 5, 0.3));
    return in;
}

inline Report criterion_roundtrip(const Options& o) {
    Report r{11, "instance-roundtrip"};
    Sampler s(o.seed * 1000 + 11);
    long n = scaled(o, 1000, 100);
    for (long i = 0; i < n; ++i) {
        Instance in = random_instance(s);
        std::string text = print_instance(in);
        Instance back = parse_instance(text);
        r.expect(back == in && print_instance(back) == text, [&] { return "instance " + text; });
    }
    return r;
}

// ---------------------------------------------------------------------------------------------------------------

struct Criterion {
    int id;
    const char* name;
    Report (*run)(const Options&);
};

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "semiring", criterion_semiring},         {2, "classifier", criterion_classifier},
        {3, "table", criterion_table},               {4, "subadditivity", criterion_subadditivity},
        {5, "derived", criterion_derived},           {6, "minimality", criterion_minimality},
        {7, "big-support", criterion_big_support},   {8, "joins", criterion_joins},
        {9, "pair-relations", criterion_pair_relations}, {10, "stropicalization", criterion_stropicalization},
        {11, "roundtrip", criterion_roundtrip},
    };
    return all;
}

// Accepts ids ("4", "1-3") and names ("subadditivity"), comma separated; empty selects everything.
inline std::set<int> parse_selection(const std::string& text) {
    std::set<int> out;
    if (text.empty()) {
        for (const Criterion& c : criteria()) out.insert(c.id);
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        bool found = false;
        for (const Criterion& c : criteria())
            if (tok == c.name || tok == std::to_string(c.id)) {
                out.insert(c.id);
                found = true;
            }
        if (auto dash = tok.find('-'); !found && dash != std::string::npos && dash > 0) {
            try {
                int a = std::stoi(tok.substr(0, dash)), b = std::stoi(tok.substr(dash + 1));
                for (int i = a; i <= b; ++i) out.insert(i);
                found = a <= b;
            } catch (const std::exception&) {
            }
        }
        if (!found) throw ParseError("unknown criterion '" + tok + "'");
    }
    return out;
}

inline std::vector<Report> run(const Options& o, const std::set<int>& only, const std::function<void(const Report&)>& on_done = {}) {
    std::vector<Report> out;
    for (const Criterion& c : criteria()) {
        if (!only.count(c.id)) continue;
        Report rep = c.run(o);
        rep.id = c.id;
        if (on_done) on_done(rep);
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace stqf::selftest
