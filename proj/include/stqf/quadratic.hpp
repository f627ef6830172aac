#pragma once

#include "tmodule.hpp"

#include <vector>

namespace stqf {

// q(x) = sum_i alpha_i x_i^2 + sum_{i<j} beta_ij x_i x_j
class QuadraticForm {
public:
    QuadraticForm() = default;
    explicit QuadraticForm(int rank) : n_(rank), diag_(static_cast<std::size_t>(rank)), upper_(static_cast<std::size_t>(rank * rank)) {
        if (rank <= 0) throw PreconditionError("form rank must be positive");
    }

    // Binary form [alpha1, alpha; alpha2].
    static QuadraticForm binary(Element a1, Element a, Element a2) {
        QuadraticForm q(2);
        q.set_diag(0, a1);
        q.set_diag(1, a2);
        q.set_upper(0, 1, a);
        return q;
    }

    int rank() const { return n_; }
    const Element& diag(int i) const { return diag_[static_cast<std::size_t>(i)]; }
    // Symmetric access; i != j.
    const Element& upper(int i, int j) const {
        return i < j ? upper_[static_cast<std::size_t>(i * n_ + j)] : upper_[static_cast<std::size_t>(j * n_ + i)];
    }
    void set_diag(int i, Element e) { diag_[static_cast<std::size_t>(i)] = e; }
    void set_upper(int i, int j, Element e) {
        if (i == j) throw PreconditionError("upper entry needs i != j");
        if (i > j) std::swap(i, j);
        upper_[static_cast<std::size_t>(i * n_ + j)] = e;
    }

    bool is_diagonal() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (!upper(i, j).is_zero()) return false;
        return true;
    }

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
        return a.n_ == b.n_ && a.diag_ == b.diag_ && a.upper_ == b.upper_;
    }

private:
    int n_ = 0;
    std::vector<Element> diag_;
    std::vector<Element> upper_;
};

class Companion {
public:
    Companion() = default;
    explicit Companion(int rank) : n_(rank), b_(static_cast<std::size_t>(rank * rank)) {
        if (rank <= 0) throw PreconditionError("companion rank must be positive");
    }

    int rank() const { return n_; }
    const Element& at(int i, int j) const { return b_[static_cast<std::size_t>(i * n_ + j)]; }
    void set(int i, int j, Element e) {
        b_[static_cast<std::size_t>(i * n_ + j)] = e;
        b_[static_cast<std::size_t>(j * n_ + i)] = e;
    }

    friend bool operator==(const Companion& a, const Companion& b) { return a.n_ == b.n_ && a.b_ == b.b_; }

private:
    int n_ = 0;
    std::vector<Element> b_;
};

struct QuadraticPair {
    QuadraticForm form;
    Companion companion;
};

inline Element eval_q(const QuadraticForm& q, const Vector& x) {
    if (x.rank() != q.rank()) throw PreconditionError("rank mismatch between form and vector");
    Element r;
    for (int i = 0; i < q.rank(); ++i) {
        if (x[i].is_zero()) continue;
        r += q.diag(i) * square(x[i]);
        for (int j = i + 1; j < q.rank(); ++j) r += q.upper(i, j) * x[i] * x[j];
    }
    return r;
}

inline Element eval_b(const Companion& b, const Vector& x, const Vector& y) {
    if (x.rank() != b.rank() || y.rank() != b.rank()) throw PreconditionError("rank mismatch between companion and vector");
    Element r;
    for (int i = 0; i < b.rank(); ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < b.rank(); ++j) r += b.at(i, j) * x[i] * y[j];
    }
    return r;
}

inline Companion default_companion(const QuadraticForm& q) {
    Companion b(q.rank());
    for (int i = 0; i < q.rank(); ++i)
        for (int j = i + 1; j < q.rank(); ++j) b.set(i, j, q.upper(i, j));
    return b;
}

inline QuadraticPair make_pair(const QuadraticForm& q) { return {q, default_companion(q)}; }

// Restriction of (q, b) to the span of x and y, presented on the basis x, y.
inline QuadraticPair pullback(const QuadraticPair& p, const Vector& x, const Vector& y) {
    QuadraticPair r{QuadraticForm::binary(eval_q(p.form, x), eval_b(p.companion, x, y), eval_q(p.form, y)), Companion(2)};
    r.companion.set(0, 0, eval_b(p.companion, x, x));
    r.companion.set(1, 1, eval_b(p.companion, y, y));
    r.companion.set(0, 1, eval_b(p.companion, x, y));
    return r;
}

struct QlParts {
    QuadraticForm quasilinear;
    QuadraticForm rest;
};

inline QlParts ql_decompose(const QuadraticForm& q) {
    QlParts r{QuadraticForm(q.rank()), QuadraticForm(q.rank())};
    for (int i = 0; i < q.rank(); ++i) {
        r.quasilinear.set_diag(i, q.diag(i));
        for (int j = i + 1; j < q.rank(); ++j) r.rest.set_upper(i, j, q.upper(i, j));
    }
    return r;
}

inline QuadraticForm form_sum(const QuadraticForm& a, const QuadraticForm& b) {
    if (a.rank() != b.rank()) throw PreconditionError("rank mismatch between forms");
    QuadraticForm r(a.rank());
    for (int i = 0; i < a.rank(); ++i) {
        r.set_diag(i, a.diag(i) + b.diag(i));
        for (int j = i + 1; j < a.rank(); ++j) r.set_upper(i, j, a.upper(i, j) + b.upper(i, j));
    }
    return r;
}

enum class Isotropy { Isotropic, GIsotropic, GAnisotropic, ZeroVector };

inline const char* to_string(Isotropy i) {
    switch (i) {
        case Isotropy::Isotropic: return "Isotropic";
        case Isotropy::GIsotropic: return "GIsotropic";
        case Isotropy::GAnisotropic: return "GAnisotropic";
        default: return "ZeroVector";
    }
}

inline Isotropy isotropy(const QuadraticForm& q, const Vector& x) {
    if (x.is_zero()) return Isotropy::ZeroVector;
    Element v = eval_q(q, x);
    if (v.is_zero()) return Isotropy::Isotropic;
    return v.is_ghost() ? Isotropy::GIsotropic : Isotropy::GAnisotropic;
}

inline bool g_anisotropic(const QuadraticForm& q, const Vector& x) { return eval_q(q, x).is_tangible(); }

}  // namespace stqf
