#pragma once

// Topological conjugacy of linear operators x -> Ax on R^m and C^m for
// m <= 2, decided from the partition of the spectrum by eigenvalue modulus
//
//     S^-1 A S = A_0 + A_01 + A_1 + A_1inf      (direct sum)
//
// with |lambda| = 0, in (0, 1), = 1 and > 1 on the four blocks, and the
// bridge from Moebius maps to the operators x -> M_f x on C^2.

#include <string>
#include <string_view>
#include <vector>

#include "moebius/moebius_map.hpp"

namespace moebius {

enum class Field { Real, Complex };

inline std::string_view to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

/// Square matrix of size 0..4, row-major.
///
/// Sizes 3 and 4 only arise as direct sums inside the similarity test; the
/// public decision procedures accept m <= 2.
class OperatorMatrix {
public:
    static constexpr std::size_t kMaxSize = 4;

    OperatorMatrix() = default;
    OperatorMatrix(std::size_t n, std::vector<cplx> entries, Field field = Field::Complex)
        : n_(n), entries_(std::move(entries)), field_(field) {
        if (n_ > kMaxSize) throw UnsupportedSizeError("matrix size " + std::to_string(n_) + " exceeds 4");
        if (entries_.size() != n_ * n_) throw InvalidArgumentError("entry count does not match matrix size");
        for (const cplx& e : entries_) {
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
                throw InvalidArgumentError("matrix entries must be finite");
            if (field_ == Field::Real && e.imag() != 0.0)
                throw InvalidArgumentError("real operator with a non-real entry");
        }
    }

    static OperatorMatrix from_mat2(const Mat2& m, Field field = Field::Complex) {
        return {2, {m.m11, m.m12, m.m21, m.m22}, field};
    }
    static OperatorMatrix diagonal(std::vector<cplx> d, Field field = Field::Complex) {
        const std::size_t n = d.size();
        std::vector<cplx> e(n * n);
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
        return {n, std::move(e), field};
    }

    std::size_t size() const noexcept { return n_; }
    Field field() const noexcept { return field_; }
    cplx operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<cplx>& entries() const noexcept { return entries_; }

    /// Entrywise complex conjugate.
    OperatorMatrix conj() const {
        std::vector<cplx> e(entries_);
        for (cplx& x : e) x = std::conj(x);
        return {n_, std::move(e), field_};
    }
    OperatorMatrix operator-() const {
        std::vector<cplx> e(entries_);
        for (cplx& x : e) x = -x;
        return {n_, std::move(e), field_};
    }
    OperatorMatrix as_complex() const { return {n_, entries_, Field::Complex}; }

    cplx det() const {
        switch (n_) {
            case 0: return 1.0;
            case 1: return entries_[0];
            case 2: return entries_[0] * entries_[3] - entries_[1] * entries_[2];
            default: throw UnsupportedSizeError("determinant implemented for size <= 2");
        }
    }

private:
    std::size_t n_ = 0;
    std::vector<cplx> entries_;
    Field field_ = Field::Complex;
};

/// Block-diagonal A + B.
inline OperatorMatrix direct_sum(const OperatorMatrix& a, const OperatorMatrix& b) {
    const std::size_t n = a.size() + b.size();
    if (n > OperatorMatrix::kMaxSize) throw UnsupportedSizeError("direct sum larger than 4");
    std::vector<cplx> e(n * n);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) e[i * n + j] = a(i, j);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) e[(a.size() + i) * n + a.size() + j] = b(i, j);
    const Field f = (a.field() == Field::Real && b.field() == Field::Real) ? Field::Real : Field::Complex;
    return {n, std::move(e), f};
}

/// Parses row-major rows separated by ';', entries by ',' ("2,0;0,0.5").
inline OperatorMatrix parse_operator(std::string_view text, Field field) {
    const auto rows = detail::split(text, ';');
    const std::size_t n = rows.size();
    if (n > OperatorMatrix::kMaxSize)
        throw UnsupportedSizeError("matrix with " + std::to_string(n) + " rows is not supported");
    std::vector<cplx> entries;
    for (const auto& [row, row_off] : rows) {
        const auto cells = detail::split(row, ',');
        if (cells.size() != n)
            throw InputError("row has " + std::to_string(cells.size()) + " entries, expected " + std::to_string(n),
                             row_off);
        for (const auto& [cell, cell_off] : cells) {
            const cplx v = detail::parse_coefficient(cell, row_off + cell_off);
            if (field == Field::Real && v.imag() != 0.0)
                throw InputError("non-real entry in a real matrix", row_off + cell_off);
            entries.push_back(v);
        }
    }
    return {n, std::move(entries), field};
}

inline std::string format_operator(const OperatorMatrix& a) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ';';
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j) out += ',';
            out += format_complex(a(i, j));
        }
    }
    return out;
}

/// One eigenvalue with its algebraic and geometric multiplicity.
struct EigenEntry {
    cplx value;
    int algebraic = 1;
    int geometric = 1;
};

/// Eigenvalue data determining a matrix up to similarity when every Jordan
/// block has size <= 2 (then the block sizes follow from the multiplicities).
using JordanData = std::vector<EigenEntry>;

namespace detail {

// Eigenvalues of a matrix of size <= 2. Real 2x2 inputs with a negative
// discriminant return an exactly conjugate pair.
inline std::vector<cplx> small_eigenvalues(const OperatorMatrix& a) {
    if (a.size() == 0) return {};
    if (a.size() == 1) return {a(0, 0)};
    const cplx t = a(0, 0) + a(1, 1);
    const cplx det = a.det();
    const cplx disc = t * t - 4.0 * det;
    if (a.field() == Field::Real) {
        const double tr = t.real(), dr = disc.real();
        if (dr < 0.0) {
            const double im = std::sqrt(-dr) / 2.0;
            return {cplx{tr / 2.0, im}, cplx{tr / 2.0, -im}};
        }
        const double s = std::sqrt(dr);
        const double big = (tr >= 0.0 ? tr + s : tr - s) / 2.0;
        if (big == 0.0) return {0.0, 0.0};
        return {big, det.real() / big};
    }
    const cplx s = std::sqrt(disc);
    const cplx plus = t + s, minus = t - s;
    const cplx big = (std::abs(plus) >= std::abs(minus) ? plus : minus) / 2.0;
    if (big == cplx{}) return {0.0, 0.0};
    return {big, det / big};
}

inline void merge_entry(JordanData& data, const EigenEntry& e, double tol) {
    for (EigenEntry& d : data) {
        if (approx_equal(d.value, e.value, tol)) {
            d.algebraic += e.algebraic;
            d.geometric += e.geometric;
            return;
        }
    }
    data.push_back(e);
}

// A double root is perturbed by about sqrt(rounding), so it is detected on
// the discriminant rather than by comparing the two computed roots.
inline bool double_root(const OperatorMatrix& a, double tol) {
    if (a.size() != 2) return false;
    const cplx t = a(0, 0) + a(1, 1);
    const cplx disc = t * t - 4.0 * a.det();
    return std::abs(disc) <= tol * std::max(1.0, std::norm(t));
}

inline JordanData small_jordan_data(const OperatorMatrix& a, double tol) {
    const auto ev = small_eigenvalues(a);
    JordanData data;
    if (ev.size() == 2 && (approx_equal(ev[0], ev[1], tol) || double_root(a, tol))) {
        const cplx lam = (ev[0] + ev[1]) / 2.0;
        double off = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                off = std::max(off, std::abs(a(i, j) - (i == j ? lam : cplx{})));
        const bool scalar = off <= tol * std::max(1.0, std::abs(lam));
        data.push_back({lam, 2, scalar ? 2 : 1});
        return data;
    }
    for (const cplx& lam : ev) merge_entry(data, {lam, 1, 1}, tol);
    return data;
}

// Splits a block-diagonal matrix into diagonal blocks of size <= 2.
inline std::vector<OperatorMatrix> diagonal_blocks(const OperatorMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (std::size_t i = 0; i < n;) {
        const bool coupled = i + 1 < n && (a(i, i + 1) != cplx{} || a(i + 1, i) != cplx{});
        const std::size_t len = coupled ? 2 : 1;
        spans.emplace_back(i, len);
        i += len;
    }
    std::vector<bool> inside(n * n, false);
    std::vector<OperatorMatrix> blocks;
    for (const auto& [start, len] : spans) {
        std::vector<cplx> e;
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; j < len; ++j) {
                inside[(start + i) * n + start + j] = true;
                e.push_back(a(start + i, start + j));
            }
        blocks.emplace_back(len, std::move(e), a.field());
    }
    for (std::size_t k = 0; k < n * n; ++k)
        if (!inside[k] && a.entries()[k] != cplx{})
            throw UnsupportedSizeError("similarity for size > 2 requires block-diagonal input with blocks <= 2");
    return blocks;
}

}  // namespace detail

/// Eigenvalues with multiplicities, merged within `tol`.
inline JordanData jordan_data(const OperatorMatrix& a, double tol = 1e-9) {
    if (a.size() <= 2) return detail::small_jordan_data(a, tol);
    JordanData data;
    for (const OperatorMatrix& block : detail::diagonal_blocks(a))
        for (const EigenEntry& e : detail::small_jordan_data(block, tol)) detail::merge_entry(data, e, tol);
    return data;
}

inline bool same_jordan_data(const JordanData& x, const JordanData& y, double tol) {
    if (x.size() != y.size()) return false;
    std::vector<bool> used(y.size(), false);
    for (const EigenEntry& e : x) {
        bool matched = false;
        for (std::size_t k = 0; k < y.size() && !matched; ++k) {
            if (used[k]) continue;
            if (approx_equal(e.value, y[k].value, tol) && e.algebraic == y[k].algebraic &&
                e.geometric == y[k].geometric) {
                used[k] = true;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

/// Similarity over C, decided from eigenvalue multisets and geometric
/// multiplicities. Sizes 3 and 4 must be block diagonal with blocks <= 2.
inline bool similar(const OperatorMatrix& a, const OperatorMatrix& b, double tol = 1e-9) {
    if (a.size() != b.size())
        throw InvalidArgumentError("similarity of matrices of different sizes (" + std::to_string(a.size()) +
                                   " vs " + std::to_string(b.size()) + ")");
    return same_jordan_data(jordan_data(a, tol), jordan_data(b, tol), tol);
}

/// Blocks A_0, A_01, A_1, A_1inf (possibly empty) of an operator with m <= 2.
struct SpectralPartition {
    OperatorMatrix zero;
    OperatorMatrix contracting;
    OperatorMatrix unit;
    OperatorMatrix expanding;

    std::size_t total_size() const {
        return zero.size() + contracting.size() + unit.size() + expanding.size();
    }
};

enum class ModulusBand { Zero, Contracting, Unit, Expanding };

inline ModulusBand modulus_band(cplx lam, const Tolerances& tol = {}, Margin* margin = nullptr) {
    const double r = std::abs(lam);
    if (margin) margin->note(r, tol.eps_unit);
    if (r <= tol.eps_unit) return ModulusBand::Zero;
    if (is_unit_modulus(lam, tol, margin)) return ModulusBand::Unit;
    return r < 1.0 ? ModulusBand::Contracting : ModulusBand::Expanding;
}

inline SpectralPartition spectral_partition(const OperatorMatrix& a, const Tolerances& tol = {},
                                            Margin* margin = nullptr) {
    if (a.size() > 2)
        throw UnsupportedSizeError("spectral partition is implemented for m <= 2, got m = " +
                                   std::to_string(a.size()));
    SpectralPartition p;
    auto slot = [&p](ModulusBand b) -> OperatorMatrix& {
        switch (b) {
            case ModulusBand::Zero: return p.zero;
            case ModulusBand::Contracting: return p.contracting;
            case ModulusBand::Unit: return p.unit;
            case ModulusBand::Expanding: return p.expanding;
        }
        return p.zero;
    };
    auto ev = detail::small_eigenvalues(a);
    if (ev.empty()) return p;
    if (detail::double_root(a, tol.equality)) ev = {(ev[0] + ev[1]) / 2.0, (ev[0] + ev[1]) / 2.0};
    if (ev.size() == 1) {
        slot(modulus_band(ev[0], tol, margin)) = a;
        return p;
    }
    const ModulusBand b0 = modulus_band(ev[0], tol, margin);
    const ModulusBand b1 = modulus_band(ev[1], tol, margin);
    if (b0 == b1) {
        // Both eigenvalues in one band: the block is A itself up to similarity.
        slot(b0) = a;
        return p;
    }
    // Distinct bands mean distinct eigenvalues, so A is diagonalizable and
    // each block is 1x1. Real inputs reach here only with real eigenvalues.
    auto one = [&a](cplx lam) {
        return a.field() == Field::Real ? OperatorMatrix(1, {cplx{lam.real(), 0.0}}, Field::Real)
                                        : OperatorMatrix(1, {lam}, Field::Complex);
    };
    slot(b0) = one(ev[0]);
    slot(b1) = one(ev[1]);
    return p;
}

/// Per-condition outcome of the topological conjugacy test for operators.
struct OperatorConditions {
    Field field = Field::Complex;
    bool zero_similar = false;
    bool contracting_size = false;
    /// det(A_01 B_01) > 0; only evaluated over R (always true over C).
    bool contracting_orientation = true;
    /// Over C: A_1 + conj(A_1) similar to B_1 + conj(B_1). Over R: A_1 similar to B_1.
    bool unit_similar = false;
    bool expanding_size = false;
    /// det(A_1inf B_1inf) > 0; only evaluated over R.
    bool expanding_orientation = true;
    SpectralPartition partition_a;
    SpectralPartition partition_b;
    Margin margin;

    bool verdict() const {
        return zero_similar && contracting_size && contracting_orientation && unit_similar && expanding_size &&
               expanding_orientation;
    }
};

namespace detail {

inline bool similar_blocks(const OperatorMatrix& a, const OperatorMatrix& b, double tol) {
    return a.size() == b.size() && similar(a, b, tol);
}

inline void require_pair(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.size() > 2 || b.size() > 2)
        throw UnsupportedSizeError("topological conjugacy of operators is implemented for m <= 2");
    if (a.size() != b.size()) throw InvalidArgumentError("operators act on spaces of different dimension");
}

}  // namespace detail

/// Conditions over C: A_0 ~ B_0, |A_01| = |B_01|, A_1 + conj A_1 ~ B_1 + conj B_1,
/// |A_1inf| = |B_1inf|.
inline OperatorConditions operator_conditions_complex(const OperatorMatrix& a, const OperatorMatrix& b,
                                                      const Tolerances& tol = {}) {
    detail::require_pair(a, b);
    OperatorConditions c;
    c.field = Field::Complex;
    c.partition_a = spectral_partition(a.as_complex(), tol, &c.margin);
    c.partition_b = spectral_partition(b.as_complex(), tol, &c.margin);
    const auto& pa = c.partition_a;
    const auto& pb = c.partition_b;
    c.zero_similar = detail::similar_blocks(pa.zero, pb.zero, tol.equality);
    c.contracting_size = pa.contracting.size() == pb.contracting.size();
    c.unit_similar = detail::similar_blocks(direct_sum(pa.unit, pa.unit.conj()),
                                            direct_sum(pb.unit, pb.unit.conj()), tol.equality);
    c.expanding_size = pa.expanding.size() == pb.expanding.size();
    return c;
}

/// Conditions over R: A_0 ~ B_0, |A_01| = |B_01|, det(A_01 B_01) > 0,
/// A_1 ~ B_1, |A_1inf| = |B_1inf|, det(A_1inf B_1inf) > 0. Determinant
/// conditions on empty blocks hold vacuously.
inline OperatorConditions operator_conditions_real(const OperatorMatrix& a, const OperatorMatrix& b,
                                                   const Tolerances& tol = {}) {
    if (a.field() != Field::Real || b.field() != Field::Real)
        throw InvalidArgumentError("real conjugacy test needs real operators");
    detail::require_pair(a, b);
    OperatorConditions c;
    c.field = Field::Real;
    c.partition_a = spectral_partition(a, tol, &c.margin);
    c.partition_b = spectral_partition(b, tol, &c.margin);
    const auto& pa = c.partition_a;
    const auto& pb = c.partition_b;
    c.zero_similar = detail::similar_blocks(pa.zero, pb.zero, tol.equality);
    c.contracting_size = pa.contracting.size() == pb.contracting.size();
    c.contracting_orientation = (pa.contracting.det() * pb.contracting.det()).real() > 0.0;
    c.unit_similar = detail::similar_blocks(pa.unit, pb.unit, tol.equality);
    c.expanding_size = pa.expanding.size() == pb.expanding.size();
    c.expanding_orientation = (pa.expanding.det() * pb.expanding.det()).real() > 0.0;
    return c;
}

inline bool topo_conjugate_complex(const OperatorMatrix& a, const OperatorMatrix& b, const Tolerances& tol = {}) {
    return operator_conditions_complex(a, b, tol).verdict();
}

inline bool topo_conjugate_real(const OperatorMatrix& a, const OperatorMatrix& b, const Tolerances& tol = {}) {
    return operator_conditions_real(a, b, tol).verdict();
}

/// Determinant-one diagonalizable nonidentity operators on C^2: conjugate iff
/// |lambda|, |lambda'| != 1, or lambda = lambda', or lambda = conj(lambda').
inline bool diag_unimodular_decision(const OperatorMatrix& a, const OperatorMatrix& b, const Tolerances& tol = {}) {
    auto check = [&tol](const OperatorMatrix& m, const char* name) {
        if (m.size() != 2) throw InvalidArgumentError(std::string(name) + " must be 2x2");
        if (!approx_equal(m.det(), 1.0, tol.equality)) throw InvalidArgumentError(std::string(name) + " must have determinant 1");
        for (const EigenEntry& e : jordan_data(m, tol.equality))
            if (e.geometric != e.algebraic) throw InvalidArgumentError(std::string(name) + " must be diagonalizable");
        const bool ident = std::abs(m(0, 0) - 1.0) <= tol.equality && std::abs(m(1, 1) - 1.0) <= tol.equality &&
                           std::abs(m(0, 1)) <= tol.equality && std::abs(m(1, 0)) <= tol.equality;
        if (ident) throw InvalidArgumentError(std::string(name) + " must not be the identity");
    };
    check(a, "A");
    check(b, "B");
    for (const cplx& lam : detail::small_eigenvalues(a.as_complex()))
        for (const cplx& mu : detail::small_eigenvalues(b.as_complex())) {
            const bool ok = (!is_unit_modulus(lam, tol) && !is_unit_modulus(mu, tol)) ||
                            approx_equal(lam, mu, tol.equality) || approx_equal(lam, std::conj(mu), tol.equality);
            if (!ok) return false;
        }
    return true;
}

/// Verdicts of the two branches x -> M_f x vs x -> +-M_g x.
struct BridgeDecision {
    bool direct = false;
    bool negated = false;
    bool verdict() const { return direct || negated; }
};

inline BridgeDecision moebius_operator_bridge(const MoebiusMap& f, const MoebiusMap& g, const Tolerances& tol = {}) {
    const auto mf = OperatorMatrix::from_mat2(normalize(f).matrix());
    const auto mg = OperatorMatrix::from_mat2(normalize(g).matrix());
    return {topo_conjugate_complex(mf, mg, tol), topo_conjugate_complex(mf, -mg, tol)};
}

inline bool moebius_operator_equiv(const MoebiusMap& f, const MoebiusMap& g, const Tolerances& tol = {}) {
    return moebius_operator_bridge(f, g, tol).verdict();
}

/// |lambda^k - 1| <= equality for some 1 <= k <= kmax.
inline bool root_of_unity(cplx lam, int kmax = 64, double tol = 1e-9) {
    if (kmax < 1) throw InvalidArgumentError("kmax must be at least 1");
    cplx p = lam;
    for (int k = 1; k <= kmax; ++k) {
        if (std::abs(p - 1.0) <= tol) return true;
        p *= lam;
    }
    return false;
}

/// True iff no eigenvalue of A is a root of unity up to `kmax`.
inline bool free_of_roots_of_unity(const OperatorMatrix& a, const Tolerances& tol = {}) {
    if (a.size() > 2) throw UnsupportedSizeError("eigenvalues implemented for m <= 2");
    for (const cplx& lam : detail::small_eigenvalues(a))
        if (root_of_unity(lam, tol.kmax, tol.equality)) return false;
    return true;
}

}  // namespace moebius
