#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "tormori/numeric.hpp"

namespace tormori {

// A point of the lattice N = Z^n. The owning structure (fan, matrix)
// declares the ambient rank; vectors themselves are plain coordinate lists.
using LatticeVector = std::vector<Int>;

inline LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline LatticeVector operator*(const Int& c, const LatticeVector& v) {
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

inline bool is_zero(const LatticeVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline Int gcd_of(const LatticeVector& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

inline bool is_primitive(const LatticeVector& v) {
    return !is_zero(v) && gcd_of(v) == 1;
}

// Dense integer matrix, row-major.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> entries;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), entries(std::size_t(r) * c) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<LatticeVector>& rs, int ncols) {
        IntMatrix m(int(rs.size()), ncols);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < ncols; ++j) m.at(i, j) = rs[i][j];
        return m;
    }

    static IntMatrix from_columns(const std::vector<LatticeVector>& cs, int nrows) {
        IntMatrix m(nrows, int(cs.size()));
        for (int j = 0; j < m.cols; ++j)
            for (int i = 0; i < nrows; ++i) m.at(i, j) = cs[j][i];
        return m;
    }

    Int& at(int i, int j) { return entries[std::size_t(i) * cols + j]; }
    const Int& at(int i, int j) const { return entries[std::size_t(i) * cols + j]; }

    LatticeVector row(int i) const {
        LatticeVector r(cols);
        for (int j = 0; j < cols; ++j) r[j] = at(i, j);
        return r;
    }

    LatticeVector column(int j) const {
        LatticeVector c(rows);
        for (int i = 0; i < rows; ++i) c[i] = at(i, j);
        return c;
    }

    LatticeVector apply(const LatticeVector& v) const {
        LatticeVector r(rows, Int(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.entries == b.entries;
    }
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k)
            if (a.at(i, k) != 0)
                for (int j = 0; j < b.cols; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    return r;
}

namespace detail {

inline void swap_rows(IntMatrix& m, int i, int j) {
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

inline void swap_cols(IntMatrix& m, int i, int j) {
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row_i -= q * row_j
inline void add_row(IntMatrix& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(j, c);
}

// col_i -= q * col_j
inline void add_col(IntMatrix& m, int i, int j, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < m.rows; ++r) m.at(r, i) -= q * m.at(r, j);
}

inline void negate_row(IntMatrix& m, int i) {
    for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

}  // namespace detail

struct SmithForm {
    IntMatrix U;  // unimodular, rows x rows
    IntMatrix S;  // diagonal, d1 | d2 | ..., all di >= 0
    IntMatrix V;  // unimodular, cols x cols
    int rank = 0;
};

// Smith normal form with transforms: U * M * V = S, exactly.
inline SmithForm smith_normal_form(const IntMatrix& M) {
    SmithForm f;
    f.U = IntMatrix::identity(M.rows);
    f.V = IntMatrix::identity(M.cols);
    f.S = M;
    IntMatrix& S = f.S;

    int t = 0;
    while (t < std::min(S.rows, S.cols)) {
        // pivot: minimal nonzero absolute value in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < S.rows; ++i)
            for (int j = t; j < S.cols; ++j)
                if (S.at(i, j) != 0 &&
                    (pi < 0 || abs(S.at(i, j)) < abs(S.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        if (pi != t) { detail::swap_rows(S, t, pi); detail::swap_rows(f.U, t, pi); }
        if (pj != t) { detail::swap_cols(S, t, pj); detail::swap_cols(f.V, t, pj); }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < S.rows; ++i) {
                while (S.at(i, t) != 0) {
                    Int q = S.at(i, t) / S.at(t, t);
                    detail::add_row(S, i, t, q);
                    detail::add_row(f.U, i, t, q);
                    if (S.at(i, t) != 0) {
                        detail::swap_rows(S, t, i);
                        detail::swap_rows(f.U, t, i);
                    }
                }
            }
            for (int j = t + 1; j < S.cols; ++j) {
                while (S.at(t, j) != 0) {
                    Int q = S.at(t, j) / S.at(t, t);
                    detail::add_col(S, j, t, q);
                    detail::add_col(f.V, j, t, q);
                    if (S.at(t, j) != 0) {
                        detail::swap_cols(S, t, j);
                        detail::swap_cols(f.V, t, j);
                        clean = false;  // column swap may disturb the cleared column
                    }
                }
            }
            if (!clean) continue;
            // enforce divisibility of the trailing block by the pivot
            for (int i = t + 1; i < S.rows && clean; ++i)
                for (int j = t + 1; j < S.cols && clean; ++j)
                    if (S.at(i, j) % S.at(t, t) != 0) {
                        detail::add_row(S, t, i, Int(-1));
                        detail::add_row(f.U, t, i, Int(-1));
                        clean = false;
                    }
        }
        if (S.at(t, t) < 0) { detail::negate_row(S, t); detail::negate_row(f.U, t); }
        ++t;
    }
    f.rank = 0;
    for (int i = 0; i < std::min(S.rows, S.cols); ++i)
        if (S.at(i, i) != 0) ++f.rank;
    return f;
}

// Row-style Hermite normal form: unimodular row operations only. Pivots are
// positive, entries above a pivot are reduced into [0, pivot). Zero rows are
// dropped, so the result is the canonical basis of the row lattice.
inline IntMatrix hermite_normal_form(const IntMatrix& M) {
    IntMatrix H = M;
    int r = 0;
    for (int c = 0; c < H.cols && r < H.rows; ++c) {
        int p = -1;
        for (int i = r; i < H.rows; ++i)
            if (H.at(i, c) != 0 && (p < 0 || abs(H.at(i, c)) < abs(H.at(p, c)))) p = i;
        if (p < 0) continue;
        if (p != r) detail::swap_rows(H, r, p);
        bool done = false;
        while (!done) {
            done = true;
            for (int i = r + 1; i < H.rows; ++i) {
                if (H.at(i, c) == 0) continue;
                Int q = H.at(i, c) / H.at(r, c);
                detail::add_row(H, i, r, q);
                if (H.at(i, c) != 0) { detail::swap_rows(H, r, i); done = false; }
            }
        }
        if (H.at(r, c) < 0) detail::negate_row(H, r);
        for (int i = 0; i < r; ++i)
            detail::add_row(H, i, r, floor_div(H.at(i, c), H.at(r, c)));
        ++r;
    }
    IntMatrix out(r, H.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < H.cols; ++j) out.at(i, j) = H.at(i, j);
    return out;
}

// Lattice basis of {z : M z = 0}, saturated (= Q-kernel intersected with Z^cols).
// Basis vectors come out in Hermite-reduced canonical form, so results are
// reproducible across runs and platforms.
inline std::vector<LatticeVector> integer_kernel(const IntMatrix& M) {
    SmithForm f = smith_normal_form(M);
    int k = M.cols - f.rank;
    if (k == 0) return {};
    IntMatrix basis(k, M.cols);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < M.cols; ++j) basis.at(i, j) = f.V.at(j, f.rank + i);
    IntMatrix H = hermite_normal_form(basis);
    std::vector<LatticeVector> out;
    out.reserve(H.rows);
    for (int i = 0; i < H.rows; ++i) out.push_back(H.row(i));
    return out;
}

inline LatticeVector primitive_part(const LatticeVector& v) {
    if (is_zero(v)) throw Error("zero vector has no primitive part");
    Int g = gcd_of(v);
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

// --- exact rational elimination ------------------------------------------

using RatRow = std::vector<Rat>;
using RatMatrix = std::vector<RatRow>;

inline int rat_rank(RatMatrix m) {
    int rows = int(m.size());
    if (rows == 0) return 0;
    int cols = int(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat fct = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= fct * m[r][j];
        }
        ++r;
    }
    return r;
}

// Solves A x = b exactly. Returns nullopt when inconsistent. When the system
// is underdetermined, free variables are set to zero.
inline std::optional<RatRow> rat_solve(RatMatrix a, RatRow b) {
    int rows = int(a.size());
    int cols = rows ? int(a[0].size()) : 0;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        std::swap(b[r], b[p]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat fct = a[i][c] / a[r][c];
            for (int j = c; j < cols; ++j) a[i][j] -= fct * a[r][j];
            b[i] -= fct * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    RatRow x(cols, Rat(0));
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return x;
}

// Basis of the right null space of A over Q.
inline std::vector<RatRow> rat_nullspace(RatMatrix a) {
    int rows = int(a.size());
    int cols = rows ? int(a[0].size()) : 0;
    std::vector<int> pivot_of_col(cols, -1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat fct = a[i][c] / a[r][c];
            for (int j = c; j < cols; ++j) a[i][j] -= fct * a[r][j];
        }
        pivot_of_col[c] = r;
        ++r;
    }
    std::vector<RatRow> basis;
    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        RatRow v(cols, Rat(0));
        v[c] = 1;
        for (int c2 = 0; c2 < cols; ++c2)
            if (pivot_of_col[c2] >= 0)
                v[c2] = -a[pivot_of_col[c2]][c] / a[pivot_of_col[c2]][c2];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline RatMatrix to_rat_columns(const std::vector<LatticeVector>& cols, int nrows) {
    RatMatrix m(nrows, RatRow(cols.size(), Rat(0)));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < nrows; ++i) m[i][j] = Rat(cols[j][i]);
    return m;
}

inline int rank_of_vectors(const std::vector<LatticeVector>& vs) {
    if (vs.empty()) return 0;
    RatMatrix m(vs.size(), RatRow(vs[0].size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < vs[i].size(); ++j) m[i][j] = Rat(vs[i][j]);
    return rat_rank(std::move(m));
}

// --- simplicial cone primitives -------------------------------------------

// Coordinates of v in a linearly independent generator set, if they are all
// nonnegative and v lies in the span; nullopt otherwise.
inline std::optional<std::vector<Rat>> cone_solve(
    const std::vector<LatticeVector>& generators, const LatticeVector& v) {
    if (generators.empty()) return is_zero(v) ? std::make_optional(std::vector<Rat>{}) : std::nullopt;
    int n = int(generators[0].size());
    if (rank_of_vectors(generators) != int(generators.size()))
        throw Error("not simplicial");
    RatRow b(n);
    for (int i = 0; i < n; ++i) b[i] = Rat(v[i]);
    auto x = rat_solve(to_rat_columns(generators, n), std::move(b));
    if (!x) return std::nullopt;
    for (const Rat& c : *x)
        if (c < 0) return std::nullopt;
    return x;
}

// Index of the subgroup generated by independent primitive vectors inside
// the intersection of their Q-span with the lattice; 1 iff the cone they
// span is smooth.
inline Int multiplicity(const std::vector<LatticeVector>& generators) {
    if (generators.empty()) return 1;
    IntMatrix m = IntMatrix::from_rows(generators, int(generators[0].size()));
    SmithForm f = smith_normal_form(m);
    if (f.rank != int(generators.size()))
        throw Error("multiplicity requires linearly independent generators");
    Int prod = 1;
    for (int i = 0; i < f.rank; ++i) prod *= f.S.at(i, i);
    return prod;
}

struct QuotientMap {
    IntMatrix map;  // surjection Z^n -> Z^rank_out
    int rank_out = 0;
};

// Surjection Q : Z^n -> Z^(n-r) whose kernel is the saturation of the
// subgroup generated by the given vectors. Torsion of the literal quotient
// is discarded; the output lattice is free.
inline QuotientMap quotient_map(const std::vector<LatticeVector>& vectors, int n) {
    QuotientMap q;
    if (vectors.empty()) {
        q.map = IntMatrix::identity(n);
        q.rank_out = n;
        return q;
    }
    IntMatrix a = IntMatrix::from_columns(vectors, n);
    SmithForm f = smith_normal_form(a);
    int out = n - f.rank;
    IntMatrix raw(out, n);
    for (int i = 0; i < out; ++i)
        for (int j = 0; j < n; ++j) raw.at(i, j) = f.U.at(f.rank + i, j);
    q.map = out == 0 ? raw : hermite_normal_form(raw);
    q.rank_out = out;
    return q;
}

}  // namespace tormori
