#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ghzw/correspondence.hpp"
#include "ghzw/error.hpp"
#include "ghzw/exact_linalg.hpp"
#include "ghzw/state.hpp"

namespace ghzw {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 14;
inline constexpr double kDefaultTolerance = 1e-9;

// Amplitudes over the 2^N computational basis; qubit q is index bit (N-1-q).
struct DenseState {
    int qubits = 0;
    std::vector<Complex> amplitudes;
    // Exact amplitudes when the state came straight from a symbolic expansion.
    std::optional<std::map<std::uint64_t, GaussianRational>> exact;

    std::uint64_t bit(int qubit) const { return std::uint64_t{1} << (qubits - 1 - qubit); }

    double norm() const {
        double s = 0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }
};

inline DenseState expand(const SymbolicState& state, int max_qubits = kDefaultMaxQubits) {
    const int n = state.total_qubits();
    if (n > max_qubits) {
        throw ResourceError("expansion needs " + std::to_string(n) + " qubits, cap is " + std::to_string(max_qubits));
    }
    if (n > 30) throw ResourceError("expansion beyond 30 qubits");
    std::map<std::uint64_t, GaussianRational> amps;
    for (const auto& t : state.terms()) {
        std::vector<std::uint64_t> partial{0};
        int offset = 0;
        for (std::size_t g = 0; g < state.group_count(); ++g) {
            const int size = state.groups()[g].size;
            auto bit_of = [&](int local) { return std::uint64_t{1} << (n - 1 - (offset + local)); };
            std::vector<std::uint64_t> pieces;
            switch (t.symbols[g]) {
                case Symbol::zero: pieces.push_back(0); break;
                case Symbol::one: {
                    std::uint64_t m = 0;
                    for (int k = 0; k < size; ++k) m |= bit_of(k);
                    pieces.push_back(m);
                    break;
                }
                case Symbol::w:
                    for (int k = 0; k < size; ++k) pieces.push_back(bit_of(k));
                    break;
            }
            std::vector<std::uint64_t> next;
            next.reserve(partial.size() * pieces.size());
            for (auto a : partial)
                for (auto b : pieces) next.push_back(a | b);
            partial = std::move(next);
            offset += size;
        }
        for (auto idx : partial) amps[idx] += t.coeff;
    }
    DenseState d;
    d.qubits = n;
    d.amplitudes.assign(std::size_t{1} << n, Complex(0, 0));
    for (auto it = amps.begin(); it != amps.end();) {
        if (it->second.is_zero()) {
            it = amps.erase(it);
            continue;
        }
        d.amplitudes[it->first] = it->second.to_complex();
        ++it;
    }
    if (amps.empty()) throw DomainError("expansion is the null vector");
    d.exact = std::move(amps);
    return d;
}

// Subset of qubits (bit q = qubit q) and the numeric local rank across it.
using RankFingerprint = std::vector<std::pair<std::uint64_t, int>>;

namespace detail {

inline std::vector<std::pair<std::uint64_t, Complex>> nonzero_entries(const DenseState& d) {
    std::vector<std::pair<std::uint64_t, Complex>> out;
    for (std::size_t i = 0; i < d.amplitudes.size(); ++i)
        if (d.amplitudes[i] != Complex(0, 0)) out.emplace_back(i, d.amplitudes[i]);
    return out;
}

inline std::uint64_t index_mask(const DenseState& d, std::uint64_t qubit_subset) {
    std::uint64_t m = 0;
    for (int q = 0; q < d.qubits; ++q)
        if (qubit_subset >> q & 1U) m |= d.bit(q);
    return m;
}

// Coefficient matrix across (subset | rest) with zero rows and columns dropped.
inline Eigen::MatrixXcd cut_matrix(const std::vector<std::pair<std::uint64_t, Complex>>& entries, std::uint64_t mask) {
    std::unordered_map<std::uint64_t, Eigen::Index> rows;
    std::unordered_map<std::uint64_t, Eigen::Index> cols;
    for (const auto& [idx, a] : entries) {
        rows.try_emplace(idx & mask, static_cast<Eigen::Index>(rows.size()));
        cols.try_emplace(idx & ~mask, static_cast<Eigen::Index>(cols.size()));
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                static_cast<Eigen::Index>(cols.size()));
    for (const auto& [idx, a] : entries) m(rows[idx & mask], cols[idx & ~mask]) += a;
    return m;
}

inline int numeric_rank(const Eigen::MatrixXcd& m, double tol) {
    if (m.size() == 0) return 0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

}  // namespace detail

// Local rank across every cut, cuts listed in subset-size-then-lex order with
// half-size subsets containing qubit 0.
inline RankFingerprint rank_fingerprint(const DenseState& d, double tol = kDefaultTolerance) {
    const auto entries = detail::nonzero_entries(d);
    RankFingerprint fp;
    detail::for_each_cut(static_cast<std::size_t>(d.qubits), [&](std::uint64_t subset) {
        fp.emplace_back(subset, detail::numeric_rank(detail::cut_matrix(entries, detail::index_mask(d, subset)), tol));
        return true;
    });
    return fp;
}

// Dense full-entanglement verdict, stopping at the first product cut.
inline bool dense_fully_entangled(const DenseState& d, double tol = kDefaultTolerance) {
    if (d.qubits < 2) return false;
    const auto entries = detail::nonzero_entries(d);
    bool entangled = true;
    detail::for_each_cut(static_cast<std::size_t>(d.qubits), [&](std::uint64_t subset) {
        if (detail::numeric_rank(detail::cut_matrix(entries, detail::index_mask(d, subset)), tol) <= 1) {
            entangled = false;
        }
        return entangled;
    });
    return entangled;
}

enum class RangeType { w_like, ghz_like, other };

inline const char* to_string(RangeType t) {
    switch (t) {
        case RangeType::w_like: return "W-like";
        case RangeType::ghz_like: return "GHZ-like";
        case RangeType::other: return "other";
    }
    return "?";
}

struct RangeReport {
    RangeType type = RangeType::other;
    int rank = 0;
    bool exact = false;
};

namespace detail {

// Product vectors s*v1 + t*v2 (as 2x2 matrices) solve A s^2 + B st + C t^2 = 0.
// One projective root means one product vector, two mean two; an identically
// zero form means a continuum.
template <class T>
std::array<T, 3> product_quadratic(const std::array<T, 4>& v1, const std::array<T, 4>& v2) {
    auto det = [](const std::array<T, 4>& v) { return v[0] * v[3] - v[1] * v[2]; };
    std::array<T, 4> sum;
    for (int i = 0; i < 4; ++i) sum[i] = v1[i] + v2[i];
    const T a = det(v1);
    const T c = det(v2);
    const T b = det(sum) - a - c;
    return {a, b, c};
}

inline std::uint64_t pair_key(const DenseState& d, int qa, int qb, std::uint64_t idx) {
    return ((idx & d.bit(qa)) ? 2U : 0U) | ((idx & d.bit(qb)) ? 1U : 0U);
}

inline std::optional<RangeReport> exact_range_type(const DenseState& d, int qa, int qb) {
    if (!d.exact) return std::nullopt;
    const std::uint64_t pair_mask = d.bit(qa) | d.bit(qb);
    // Columns of the 4 x rest coefficient matrix.
    std::map<std::uint64_t, std::array<GaussianRational, 4>> cols;
    for (const auto& [idx, a] : *d.exact) cols[idx & ~pair_mask][pair_key(d, qa, qb, idx)] += a;
    ExactMatrix m;
    for (const auto& [rest, col] : cols) m.push_back({col[0], col[1], col[2], col[3]});
    const std::size_t rank = exact_rank(m);
    RangeReport rep{RangeType::other, static_cast<int>(rank), true};
    if (rank != 2) return rep;
    // Two independent columns span the range.
    std::array<GaussianRational, 4> v1 = cols.begin()->second;
    std::optional<std::array<GaussianRational, 4>> v2;
    for (const auto& [rest, col] : cols) {
        ExactMatrix pair{{v1[0], v1[1], v1[2], v1[3]}, {col[0], col[1], col[2], col[3]}};
        if (exact_rank(pair) == 2) {
            v2 = col;
            break;
        }
    }
    const auto [a, b, c] = product_quadratic(v1, *v2);
    if (a.is_zero() && b.is_zero() && c.is_zero()) return rep;
    const GaussianRational disc = b * b - GaussianRational(4) * a * c;
    rep.type = disc.is_zero() ? RangeType::w_like : RangeType::ghz_like;
    return rep;
}

}  // namespace detail

// Range of the two-qubit reduced operator, typed by how many product vectors it
// holds. Exact when amplitudes are known exactly; otherwise a float
// discriminant with a guard band, where ambiguous values report "other".
inline RangeReport two_qubit_range_type(const DenseState& d, int qa, int qb, double tol = kDefaultTolerance) {
    if (qa == qb || qa < 0 || qb < 0 || qa >= d.qubits || qb >= d.qubits) throw ContractError("invalid qubit pair");
    if (auto rep = detail::exact_range_type(d, qa, qb)) return *rep;
    const std::uint64_t pair_mask = d.bit(qa) | d.bit(qb);
    std::unordered_map<std::uint64_t, Eigen::Index> cols;
    const auto entries = detail::nonzero_entries(d);
    for (const auto& [idx, a] : entries) cols.try_emplace(idx & ~pair_mask, static_cast<Eigen::Index>(cols.size()));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, static_cast<Eigen::Index>(cols.size()));
    for (const auto& [idx, a] : entries) {
        m(static_cast<Eigen::Index>(detail::pair_key(d, qa, qb, idx)), cols[idx & ~pair_mask]) += a;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    RangeReport rep{RangeType::other, 0, false};
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++rep.rank;
    if (rep.rank != 2) return rep;
    std::array<Complex, 4> v1;
    std::array<Complex, 4> v2;
    for (int i = 0; i < 4; ++i) {
        v1[i] = svd.matrixU()(i, 0);
        v2[i] = svd.matrixU()(i, 1);
    }
    const auto [a, b, c] = detail::product_quadratic(v1, v2);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale < 1e-12) return rep;
    const double rel = std::abs(b * b - 4.0 * a * c) / (scale * scale);
    if (rel < 1e-8) {
        rep.type = RangeType::w_like;
    } else if (rel > 1e-4) {
        rep.type = RangeType::ghz_like;
    }
    return rep;
}

enum class Theorem1Class { ghz, w, neither };

inline const char* to_string(Theorem1Class c) {
    switch (c) {
        case Theorem1Class::ghz: return "GHZ";
        case Theorem1Class::w: return "W";
        case Theorem1Class::neither: return "neither";
    }
    return "?";
}

// GHZ class iff every pair is GHZ-like, W class iff every pair is W-like.
// States that are not fully entangled are "neither".
inline Theorem1Class theorem1_classify(const DenseState& d, double tol = kDefaultTolerance) {
    if (d.qubits < 3 || !dense_fully_entangled(d, tol)) return Theorem1Class::neither;
    bool all_ghz = true;
    bool all_w = true;
    for (int a = 0; a < d.qubits && (all_ghz || all_w); ++a) {
        for (int b = a + 1; b < d.qubits && (all_ghz || all_w); ++b) {
            const auto t = two_qubit_range_type(d, a, b, tol).type;
            all_ghz = all_ghz && t == RangeType::ghz_like;
            all_w = all_w && t == RangeType::w_like;
        }
    }
    if (all_ghz) return Theorem1Class::ghz;
    if (all_w) return Theorem1Class::w;
    return Theorem1Class::neither;
}

enum class IloKind { identity, general, relative_ghz, relative_w };

using QubitMatrix = Eigen::Matrix2cd;

inline DenseState apply_local(const DenseState& d, const std::vector<QubitMatrix>& ops) {
    if (static_cast<int>(ops.size()) != d.qubits) throw ContractError("one operator per qubit required");
    DenseState out{d.qubits, d.amplitudes, std::nullopt};
    for (int q = 0; q < d.qubits; ++q) {
        const std::uint64_t b = d.bit(q);
        const auto& op = ops[static_cast<std::size_t>(q)];
        for (std::uint64_t i = 0; i < out.amplitudes.size(); ++i) {
            if (i & b) continue;
            const Complex a0 = out.amplitudes[i];
            const Complex a1 = out.amplitudes[i | b];
            out.amplitudes[i] = op(0, 0) * a0 + op(0, 1) * a1;
            out.amplitudes[i | b] = op(1, 0) * a0 + op(1, 1) * a1;
        }
    }
    return out;
}

// Per-qubit invertible operators drawn from the seed. `spans` optionally lists
// group sizes in qubit order; relative kinds then use one shape per group, so
// each group's basis is mapped onto itself. Output has unit norm.
inline DenseState apply_random_ilo(const DenseState& d, std::uint64_t seed, IloKind kind,
                                   const std::vector<int>& spans = {}) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    auto nonzero = [&]() { return std::polar(radius(rng), angle(rng)); };

    std::vector<int> group_of(static_cast<std::size_t>(d.qubits));
    if (spans.empty()) {
        for (int q = 0; q < d.qubits; ++q) group_of[static_cast<std::size_t>(q)] = q;
    } else {
        int q = 0;
        for (std::size_t g = 0; g < spans.size(); ++g)
            for (int k = 0; k < spans[g]; ++k) {
                if (q >= d.qubits) throw ContractError("group spans exceed qubit count");
                group_of[static_cast<std::size_t>(q++)] = static_cast<int>(g);
            }
        if (q != d.qubits) throw ContractError("group spans do not cover every qubit");
    }
    std::map<int, bool> swap_shape;
    std::vector<QubitMatrix> ops;
    for (int q = 0; q < d.qubits; ++q) {
        QubitMatrix m = QubitMatrix::Identity();
        switch (kind) {
            case IloKind::identity: break;
            case IloKind::general:
                for (;;) {
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) m(i, j) = Complex(box(rng), box(rng));
                    Eigen::JacobiSVD<QubitMatrix> svd(m);
                    const auto& s = svd.singularValues();
                    if (s(1) > 0 && s(0) / s(1) <= 1e4) break;
                }
                break;
            case IloKind::relative_ghz: {
                const int g = group_of[static_cast<std::size_t>(q)];
                if (!swap_shape.count(g)) swap_shape[g] = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
                if (swap_shape[g]) {
                    m << Complex(0, 0), nonzero(), Complex(1, 0), Complex(0, 0);
                } else {
                    m << Complex(1, 0), Complex(0, 0), Complex(0, 0), nonzero();
                }
                break;
            }
            case IloKind::relative_w: {
                m << Complex(1, 0), Complex(box(rng), box(rng)), Complex(0, 0), nonzero();
                break;
            }
        }
        ops.push_back(m);
    }
    // Relative W needs one scale per group: reuse the first qubit's.
    if (kind == IloKind::relative_w && !spans.empty()) {
        std::map<int, Complex> scale;
        for (int q = 0; q < d.qubits; ++q) {
            const int g = group_of[static_cast<std::size_t>(q)];
            if (!scale.count(g)) scale[g] = ops[static_cast<std::size_t>(q)](1, 1);
            ops[static_cast<std::size_t>(q)](1, 1) = scale[g];
        }
    }
    DenseState out = apply_local(d, ops);
    const double nrm = out.norm();
    if (nrm == 0.0) throw Error("internal: ILO produced the null vector");
    for (auto& a : out.amplitudes) a /= nrm;
    return out;
}

// Reorders qubits: qubit k of the result is qubit order[k] of the input.
inline DenseState permute_qubits(const DenseState& d, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != d.qubits) throw ContractError("permutation size mismatch");
    DenseState out{d.qubits, std::vector<Complex>(d.amplitudes.size()), std::nullopt};
    for (std::uint64_t i = 0; i < d.amplitudes.size(); ++i) {
        if (d.amplitudes[i] == Complex(0, 0)) continue;
        std::uint64_t j = 0;
        for (int k = 0; k < d.qubits; ++k)
            if (i & d.bit(order[static_cast<std::size_t>(k)])) j |= out.bit(k);
        out.amplitudes[j] = d.amplitudes[i];
    }
    return out;
}

}  // namespace ghzw
